#pragma once
#include <cstdint>
#include <variant>
#include <vector>

#include "sensorsel/network.hpp"

namespace sensorsel {

enum class TestKind { sprt, msprt };

/// Wald thresholds plus the prior log-odds offset lambda_0 = ln(pi_1/pi_0).
struct SprtThresholds {
    double eta0 = 0.0; // accept H0 below this
    double eta1 = 0.0; // accept H1 above this
    double lambda0 = 0.0;
};

/// eta_0 = ln(alpha_1/(1-alpha_0)), eta_1 = ln((1-alpha_1)/alpha_0).
/// Requires alpha_k in (0,1) and alpha_0 + alpha_1 <= 1 (equality gives the
/// degenerate zero thresholds).
SprtThresholds wald_thresholds(double alpha0, double alpha1, const HypothesisSet& priors);

/// Invert the Wald formulas: the (alpha_0, alpha_1) that produce these
/// thresholds. Requires eta0 < 0 < eta1.
std::pair<double, double> implied_error_probabilities(const SprtThresholds& t);

/// Per-hypothesis MSPRT thresholds; hypothesis k is accepted once its
/// posterior exceeds 1/(1+eta_k).
struct MsprtThresholds {
    std::vector<double> etas;

    explicit MsprtThresholds(std::vector<double> etas_);
    std::size_t count() const { return etas.size(); }
};

/// eta_k = alpha_k / (pi_k * gamma_k).
MsprtThresholds msprt_thresholds_from_errors(const std::vector<double>& alphas,
                                             const HypothesisSet& priors,
                                             const std::vector<double>& gammas);

using TestPlan = std::variant<SprtThresholds, MsprtThresholds>;

enum class SprtVerdict { undecided, accept_h0, accept_h1 };

struct SprtState {
    double cumulative_log_likelihood = 0.0; // Lambda_N, seeded with lambda_0
    std::uint64_t samples_taken = 0;
    double elapsed_time = 0.0;
    SprtVerdict verdict = SprtVerdict::undecided;
};

/// Fresh state with Lambda = lambda_0; decides immediately if the prior
/// offset already clears a threshold.
SprtState sprt_start(const SprtThresholds& thresholds);

/// Add one observation: Lambda += ln(f^1(y)/f^0(y)), then apply the strict
/// three-way rule (equality with a threshold continues sampling).
SprtState sprt_step(SprtState state, const SensorModel& sensor, std::size_t outcome,
                    const SprtThresholds& thresholds);

struct MsprtState {
    std::vector<double> log_joint; // ln(pi_k) + sum of ln f^k(y_l)
    std::uint64_t samples_taken = 0;
    double elapsed_time = 0.0;
    bool decided = false;
    std::size_t accepted = 0; // valid when decided

    /// Posterior probabilities, normalized in the log domain.
    std::vector<double> posteriors() const;
};

MsprtState msprt_start(const HypothesisSet& priors, const MsprtThresholds& thresholds);

/// Add one observation to every hypothesis' log joint and accept the
/// argmax-joint hypothesis as soon as some posterior clears its level.
/// For candidate k the comparison p_k > 1/(1+eta_k) is evaluated exactly as
/// sum_{j != k} exp(L_j - L_k) < eta_k.
MsprtState msprt_step(MsprtState state, const SensorModel& sensor, std::size_t outcome,
                      const MsprtThresholds& thresholds);

} // namespace sensorsel
