#include "sensorsel/engines.hpp"

#include <algorithm>
#include <cmath>

namespace sensorsel {

SprtThresholds wald_thresholds(double alpha0, double alpha1, const HypothesisSet& priors) {
    if (!(alpha0 > 0.0 && alpha0 < 1.0) || !(alpha1 > 0.0 && alpha1 < 1.0)) {
        throw InvalidErrorProbabilitiesError("wald_thresholds: alpha_k must lie in (0,1)");
    }
    if (alpha0 + alpha1 > 1.0) {
        throw InvalidErrorProbabilitiesError("wald_thresholds: alpha_0 + alpha_1 must not exceed 1");
    }
    if (priors.count() != 2) {
        throw LengthMismatchError("wald_thresholds: SPRT needs exactly two hypotheses");
    }
    SprtThresholds t;
    t.eta0 = std::log(alpha1 / (1.0 - alpha0));
    t.eta1 = std::log((1.0 - alpha1) / alpha0);
    t.lambda0 = std::log(priors.priors[1] / priors.priors[0]);
    return t;
}

std::pair<double, double> implied_error_probabilities(const SprtThresholds& t) {
    if (!(t.eta0 < 0.0 && t.eta1 > 0.0)) {
        throw InvalidThresholdsError("implied_error_probabilities: need eta0 < 0 < eta1");
    }
    const double a = std::exp(t.eta0);
    const double b = std::exp(t.eta1);
    const double alpha0 = (1.0 - a) / (b - a);
    const double alpha1 = a * (b - 1.0) / (b - a);
    return {alpha0, alpha1};
}

MsprtThresholds::MsprtThresholds(std::vector<double> etas_) : etas(std::move(etas_)) {
    if (etas.size() < 2) {
        throw ValidationError("MsprtThresholds: need at least two hypotheses");
    }
    for (double e : etas) {
        if (!(e > 0.0) || !std::isfinite(e)) {
            throw ValidationError("MsprtThresholds: eta_k must be positive and finite");
        }
    }
}

MsprtThresholds msprt_thresholds_from_errors(const std::vector<double>& alphas,
                                             const HypothesisSet& priors,
                                             const std::vector<double>& gammas) {
    const std::size_t M = priors.count();
    if (alphas.size() != M || gammas.size() != M) {
        throw LengthMismatchError("msprt_thresholds_from_errors: alphas/gammas length != M");
    }
    std::vector<double> etas(M);
    for (std::size_t k = 0; k < M; ++k) {
        if (!(alphas[k] > 0.0 && alphas[k] < 1.0)) {
            throw InvalidErrorProbabilitiesError("msprt_thresholds_from_errors: alpha_k must be in (0,1)");
        }
        if (!(gammas[k] > 0.0 && gammas[k] <= 1.0)) {
            throw ValidationError("msprt_thresholds_from_errors: gamma_k must be in (0,1]");
        }
        etas[k] = alphas[k] / (priors.priors[k] * gammas[k]);
    }
    return MsprtThresholds(std::move(etas));
}

namespace {

SprtVerdict sprt_rule(double lambda, const SprtThresholds& t) {
    if (lambda > t.eta1) return SprtVerdict::accept_h1;
    if (lambda < t.eta0) return SprtVerdict::accept_h0;
    return SprtVerdict::undecided;
}

} // namespace

SprtState sprt_start(const SprtThresholds& thresholds) {
    SprtState s;
    s.cumulative_log_likelihood = thresholds.lambda0;
    s.verdict = sprt_rule(s.cumulative_log_likelihood, thresholds);
    return s;
}

SprtState sprt_step(SprtState state, const SensorModel& sensor, std::size_t outcome,
                    const SprtThresholds& thresholds) {
    if (state.verdict != SprtVerdict::undecided) {
        throw SteppedAfterDecisionError("sprt_step: test already decided");
    }
    if (sensor.hypothesis_count() != 2) {
        throw LengthMismatchError("sprt_step: SPRT sensor needs exactly two conditionals");
    }
    const double f0 = sensor.conditionals[0].prob(outcome);
    const double f1 = sensor.conditionals[1].prob(outcome);
    if (f0 == 0.0 || f1 == 0.0) {
        throw ZeroLikelihoodError("sprt_step: observation has zero likelihood under a hypothesis at sensor '" +
                                  sensor.id + "'");
    }
    state.cumulative_log_likelihood += std::log(f1) - std::log(f0);
    state.samples_taken += 1;
    state.elapsed_time += sensor.processing_time;
    state.verdict = sprt_rule(state.cumulative_log_likelihood, thresholds);
    return state;
}

std::vector<double> MsprtState::posteriors() const {
    const double lmax = *std::max_element(log_joint.begin(), log_joint.end());
    std::vector<double> p(log_joint.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < log_joint.size(); ++k) {
        p[k] = std::exp(log_joint[k] - lmax);
        sum += p[k];
    }
    for (double& x : p) x /= sum;
    return p;
}

namespace {

void msprt_check_accept(MsprtState& state, const MsprtThresholds& thresholds) {
    const std::size_t M = state.log_joint.size();
    bool crossed = false;
    for (std::size_t k = 0; k < M && !crossed; ++k) {
        double rest = 0.0;
        for (std::size_t j = 0; j < M; ++j) {
            if (j == k) continue;
            rest += std::exp(state.log_joint[j] - state.log_joint[k]);
        }
        crossed = rest < thresholds.etas[k];
    }
    if (!crossed) return;
    // Accept the argmax joint; ties break to the lowest index.
    std::size_t best = 0;
    for (std::size_t k = 1; k < M; ++k) {
        if (state.log_joint[k] > state.log_joint[best]) best = k;
    }
    state.decided = true;
    state.accepted = best;
}

} // namespace

MsprtState msprt_start(const HypothesisSet& priors, const MsprtThresholds& thresholds) {
    if (thresholds.count() != priors.count()) {
        throw LengthMismatchError("msprt_start: threshold count != hypothesis count");
    }
    MsprtState s;
    s.log_joint.reserve(priors.count());
    for (double p : priors.priors) s.log_joint.push_back(std::log(p));
    msprt_check_accept(s, thresholds);
    return s;
}

MsprtState msprt_step(MsprtState state, const SensorModel& sensor, std::size_t outcome,
                      const MsprtThresholds& thresholds) {
    if (state.decided) {
        throw SteppedAfterDecisionError("msprt_step: test already decided");
    }
    const std::size_t M = state.log_joint.size();
    if (sensor.hypothesis_count() != M || thresholds.count() != M) {
        throw LengthMismatchError("msprt_step: hypothesis counts disagree");
    }
    for (std::size_t k = 0; k < M; ++k) {
        const double f = sensor.conditionals[k].prob(outcome);
        if (f == 0.0) {
            throw ZeroLikelihoodError("msprt_step: observation has zero likelihood under H" +
                                      std::to_string(k) + " at sensor '" + sensor.id + "'");
        }
        state.log_joint[k] += std::log(f);
    }
    state.samples_taken += 1;
    state.elapsed_time += sensor.processing_time;
    msprt_check_accept(state, thresholds);
    return state;
}

} // namespace sensorsel
