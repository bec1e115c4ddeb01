#pragma once
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sensorsel/analysis.hpp"
#include "sensorsel/engines.hpp"
#include "sensorsel/rng.hpp"

namespace sensorsel {

// A single trial aborts once it exceeds this many samples.
inline constexpr std::uint64_t kMaxTrialSamples = 10'000'000;

struct TrialRecord {
    std::uint64_t trial_index = 0;
    std::size_t true_hypothesis = 0;
    std::size_t accepted = 0;
    std::uint64_t samples = 0;
    double decision_time = 0.0;
    std::uint64_t seed = 0; // run seed the substream was derived from
};

struct RunStatistics {
    std::size_t true_hypothesis = 0;
    std::uint64_t trials = 0;
    double mean_samples = 0.0;
    double se_samples = 0.0; // sample stdev / sqrt(trials)
    double mean_decision_time = 0.0;
    double se_decision_time = 0.0;
    double time_ci_halfwidth = 0.0; // 95% normal halfwidth
    double error_rate = 0.0;        // fraction accepting a wrong hypothesis
    double error_wilson_low = 0.0;  // 95% Wilson score interval
    double error_wilson_high = 0.0;
};

struct SimulationResult {
    RunStatistics stats;
    std::vector<TrialRecord> records; // in trial-index order
};

struct StepRecord {
    std::size_t sensor = 0;
    std::size_t outcome = 0;
};

/// One seeded trial; optionally logs the (sensor, outcome) sequence for
/// replay checks.
TrialRecord run_single_trial(const SensorNetwork& network, const SelectionPolicy& policy,
                             const TestPlan& plan, std::size_t true_hypothesis,
                             std::uint64_t trial_index, std::uint64_t seed,
                             std::vector<StepRecord>* step_log = nullptr);

/// Run `trials` independent trials under `true_hypothesis`. Per-trial
/// substreams come from (seed, trial index) and aggregation runs in trial
/// order, so the statistics are bitwise identical for any thread count.
SimulationResult run_trials(const SensorNetwork& network, const SelectionPolicy& policy,
                            const TestPlan& plan, std::size_t true_hypothesis,
                            std::uint64_t trials, std::uint64_t seed, unsigned threads = 1);

struct ComparisonRow {
    std::size_t hypothesis = 0;
    double analytic = 0.0;
    double empirical = 0.0;
    double gap = 0.0;        // empirical - analytic
    double gap_in_se = 0.0;
    bool below_analytic = false; // empirical < analytic - 3 se (unexpected direction)
};

/// Per-hypothesis analytic vs empirical decision times.
std::vector<ComparisonRow> compare_analytic(const std::vector<RunStatistics>& stats,
                                            const InformationProfile& profile,
                                            const SelectionPolicy& policy);

struct ErrorRateEstimate {
    std::size_t true_hypothesis = 0;
    std::uint64_t trials = 0;
    double rate = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
};

/// Empirical error rates under each true hypothesis with 95% Wilson
/// intervals. Hypothesis k uses run seed mix64(seed) + k.
std::vector<ErrorRateEstimate> estimate_error_rates(const SensorNetwork& network,
                                                    const SelectionPolicy& policy,
                                                    const TestPlan& plan, std::uint64_t trials,
                                                    std::uint64_t seed);

/// 95% Wilson score interval for `successes` out of `trials`.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials);

/// CSV trial log: trial_index,true_hypothesis,accepted,samples,decision_time.
void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records);

} // namespace sensorsel
