#include "sensorsel/montecarlo.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <thread>

namespace sensorsel {

namespace {

constexpr double kZ95 = 1.959963984540054;

// Inverse-CDF tables: cumulative policy weights in roster order and, per
// sensor, cumulative conditional probabilities under the true hypothesis.
struct TrialContext {
    const SensorNetwork& network;
    const TestPlan& plan;
    std::size_t true_hypothesis;
    std::vector<double> cum_policy;
    std::vector<std::vector<double>> cum_obs; // per sensor

    TrialContext(const SensorNetwork& net, const SelectionPolicy& policy, const TestPlan& pl,
                 std::size_t true_h)
        : network(net), plan(pl), true_hypothesis(true_h) {
        if (policy.size() != net.size()) {
            throw LengthMismatchError("run_trials: policy length != sensor count");
        }
        if (true_h >= net.hypothesis_count()) {
            throw ValidationError("run_trials: true hypothesis index out of range");
        }
        cum_policy.reserve(net.size());
        double acc = 0.0;
        for (std::size_t s = 0; s < net.size(); ++s) {
            acc += policy[s];
            cum_policy.push_back(acc);
        }
        cum_policy.back() = 1.0;
        cum_obs.reserve(net.size());
        for (const SensorModel& m : net.sensors) {
            const auto& probs = m.conditionals[true_h].probabilities();
            std::vector<double> cum;
            cum.reserve(probs.size());
            double a = 0.0;
            for (double p : probs) {
                a += p;
                cum.push_back(a);
            }
            cum.back() = 1.0;
            cum_obs.push_back(std::move(cum));
        }
    }

    std::size_t draw(const std::vector<double>& cum, double u) const {
        std::size_t i = 0;
        while (u >= cum[i]) ++i;
        return i;
    }
};

TrialRecord trial_core(const TrialContext& ctx, std::uint64_t trial_index, std::uint64_t seed,
                       std::vector<StepRecord>* step_log) {
    SplitMix64 stream = trial_stream(seed, trial_index);
    TrialRecord rec;
    rec.trial_index = trial_index;
    rec.true_hypothesis = ctx.true_hypothesis;
    rec.seed = seed;

    auto guard = [&](std::uint64_t samples) {
        if (samples > kMaxTrialSamples) {
            throw NonTerminationError("trial " + std::to_string(trial_index) + " under H" +
                                      std::to_string(ctx.true_hypothesis) + " exceeded " +
                                      std::to_string(kMaxTrialSamples) +
                                      " samples; the policy may be nearly uninformative");
        }
    };

    if (std::holds_alternative<SprtThresholds>(ctx.plan)) {
        const SprtThresholds& thr = std::get<SprtThresholds>(ctx.plan);
        SprtState state = sprt_start(thr);
        while (state.verdict == SprtVerdict::undecided) {
            guard(state.samples_taken + 1);
            const std::size_t s = ctx.draw(ctx.cum_policy, stream.next_double());
            const std::size_t y = ctx.draw(ctx.cum_obs[s], stream.next_double());
            if (step_log != nullptr) step_log->push_back({s, y});
            state = sprt_step(state, ctx.network.sensors[s], y, thr);
        }
        rec.accepted = state.verdict == SprtVerdict::accept_h1 ? 1 : 0;
        rec.samples = state.samples_taken;
        rec.decision_time = state.elapsed_time;
    } else {
        const MsprtThresholds& thr = std::get<MsprtThresholds>(ctx.plan);
        MsprtState state = msprt_start(ctx.network.hypotheses, thr);
        while (!state.decided) {
            guard(state.samples_taken + 1);
            const std::size_t s = ctx.draw(ctx.cum_policy, stream.next_double());
            const std::size_t y = ctx.draw(ctx.cum_obs[s], stream.next_double());
            if (step_log != nullptr) step_log->push_back({s, y});
            state = msprt_step(state, ctx.network.sensors[s], y, thr);
        }
        rec.accepted = state.accepted;
        rec.samples = state.samples_taken;
        rec.decision_time = state.elapsed_time;
    }
    return rec;
}

// Kahan-compensated sum over records in index order (thread-count invariant).
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

RunStatistics summarize(const std::vector<TrialRecord>& records, std::size_t true_h) {
    RunStatistics st;
    st.true_hypothesis = true_h;
    st.trials = records.size();
    CompensatedSum samples, times;
    std::uint64_t errors = 0;
    for (const TrialRecord& r : records) {
        samples.add(static_cast<double>(r.samples));
        times.add(r.decision_time);
        if (r.accepted != true_h) ++errors;
    }
    const double n = static_cast<double>(records.size());
    st.mean_samples = samples.sum / n;
    st.mean_decision_time = times.sum / n;
    if (records.size() > 1) {
        CompensatedSum vs, vt;
        for (const TrialRecord& r : records) {
            const double ds = static_cast<double>(r.samples) - st.mean_samples;
            const double dt = r.decision_time - st.mean_decision_time;
            vs.add(ds * ds);
            vt.add(dt * dt);
        }
        st.se_samples = std::sqrt(vs.sum / (n - 1.0)) / std::sqrt(n);
        st.se_decision_time = std::sqrt(vt.sum / (n - 1.0)) / std::sqrt(n);
    } else {
        st.se_samples = std::numeric_limits<double>::infinity();
        st.se_decision_time = std::numeric_limits<double>::infinity();
    }
    st.time_ci_halfwidth = kZ95 * st.se_decision_time;
    st.error_rate = static_cast<double>(errors) / n;
    std::tie(st.error_wilson_low, st.error_wilson_high) = wilson_interval(errors, records.size());
    return st;
}

} // namespace

TrialRecord run_single_trial(const SensorNetwork& network, const SelectionPolicy& policy,
                             const TestPlan& plan, std::size_t true_hypothesis,
                             std::uint64_t trial_index, std::uint64_t seed,
                             std::vector<StepRecord>* step_log) {
    TrialContext ctx(network, policy, plan, true_hypothesis);
    return trial_core(ctx, trial_index, seed, step_log);
}

SimulationResult run_trials(const SensorNetwork& network, const SelectionPolicy& policy,
                            const TestPlan& plan, std::size_t true_hypothesis,
                            std::uint64_t trials, std::uint64_t seed, unsigned threads) {
    if (trials == 0) {
        throw ValidationError("run_trials: need at least one trial");
    }
    TrialContext ctx(network, policy, plan, true_hypothesis);
    std::vector<TrialRecord> records(trials);
    if (threads <= 1) {
        for (std::uint64_t t = 0; t < trials; ++t) records[t] = trial_core(ctx, t, seed, nullptr);
    } else {
        std::exception_ptr failure;
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (trials + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            const std::uint64_t lo = w * chunk;
            const std::uint64_t hi = std::min<std::uint64_t>(trials, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                try {
                    for (std::uint64_t t = lo; t < hi; ++t) {
                        records[t] = trial_core(ctx, t, seed, nullptr);
                    }
                } catch (...) {
                    if (failure == nullptr) failure = std::current_exception();
                }
            });
        }
        for (std::thread& th : pool) th.join();
        if (failure != nullptr) std::rethrow_exception(failure);
    }
    return SimulationResult{summarize(records, true_hypothesis), std::move(records)};
}

std::vector<ComparisonRow> compare_analytic(const std::vector<RunStatistics>& stats,
                                            const InformationProfile& profile,
                                            const SelectionPolicy& policy) {
    if (stats.empty()) {
        throw ConfigMismatchError("compare_analytic: no simulation statistics given");
    }
    if (policy.size() != profile.size()) {
        throw ConfigMismatchError("compare_analytic: policy length != profile size");
    }
    std::vector<ComparisonRow> rows;
    rows.reserve(stats.size());
    for (const RunStatistics& st : stats) {
        if (st.trials == 0) {
            throw ConfigMismatchError("compare_analytic: statistics with zero trials");
        }
        if (st.true_hypothesis >= profile.hypothesis_count()) {
            throw ConfigMismatchError("compare_analytic: hypothesis index outside the profile");
        }
        ComparisonRow row;
        row.hypothesis = st.true_hypothesis;
        row.analytic = decision_time(profile, policy, st.true_hypothesis);
        row.empirical = st.mean_decision_time;
        row.gap = row.empirical - row.analytic;
        row.gap_in_se = row.gap / st.se_decision_time;
        row.below_analytic = row.empirical < row.analytic - 3.0 * st.se_decision_time;
        rows.push_back(row);
    }
    return rows;
}

std::vector<ErrorRateEstimate> estimate_error_rates(const SensorNetwork& network,
                                                    const SelectionPolicy& policy,
                                                    const TestPlan& plan, std::uint64_t trials,
                                                    std::uint64_t seed) {
    std::vector<ErrorRateEstimate> out;
    for (std::size_t k = 0; k < network.hypothesis_count(); ++k) {
        const SimulationResult sim =
            run_trials(network, policy, plan, k, trials, mix64(seed) + k);
        ErrorRateEstimate est;
        est.true_hypothesis = k;
        est.trials = trials;
        est.rate = sim.stats.error_rate;
        est.wilson_low = sim.stats.error_wilson_low;
        est.wilson_high = sim.stats.error_wilson_high;
        out.push_back(est);
    }
    return out;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials) {
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << "trial_index,true_hypothesis,accepted,samples,decision_time\n";
    char buf[64];
    for (const TrialRecord& r : records) {
        std::snprintf(buf, sizeof(buf), "%.17g", r.decision_time);
        out << r.trial_index << ',' << r.true_hypothesis << ',' << r.accepted << ',' << r.samples
            << ',' << buf << '\n';
    }
}

} // namespace sensorsel
