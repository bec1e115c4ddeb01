#include "sensorsel/analysis.hpp"

#include <cmath>
#include <string>

namespace sensorsel {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Numerators C_0, C_1 of the asymptotic sample-size formulas.
std::pair<double, double> sprt_numerators(const SprtThresholds& t) {
    const auto [alpha0, alpha1] = implied_error_probabilities(t);
    const double c0 = -((1.0 - alpha0) * t.eta0 + alpha0 * t.eta1 - t.lambda0);
    const double c1 = alpha1 * t.eta0 + (1.0 - alpha1) * t.eta1 - t.lambda0;
    if (!(c0 > 0.0) || !(c1 > 0.0)) {
        throw InvalidThresholdsError("sprt thresholds give a non-positive sample-size numerator");
    }
    return {c0, c1};
}

void require_binary(const SensorNetwork& network, const char* where) {
    if (network.hypothesis_count() != 2) {
        throw LengthMismatchError(std::string(where) + ": SPRT analysis needs exactly two hypotheses");
    }
}

} // namespace

InformationProfile::InformationProfile(std::vector<double> processing_times_,
                                       std::vector<std::vector<double>> info_, TestKind kind_,
                                       TestPlan thresholds_)
    : processing_times(std::move(processing_times_)), info(std::move(info_)), kind(kind_),
      thresholds(std::move(thresholds_)) {
    if (processing_times.empty() || info.size() < 2) {
        throw ValidationError("InformationProfile: need n >= 1 sensors and M >= 2 hypotheses");
    }
    for (double t : processing_times) {
        if (!(t > 0.0)) throw ValidationError("InformationProfile: processing times must be > 0");
    }
    for (const auto& row : info) {
        if (row.size() != processing_times.size()) {
            throw LengthMismatchError("InformationProfile: info vector length != n");
        }
        for (double v : row) {
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw ValidationError("InformationProfile: information entries must be strictly positive");
            }
        }
    }
}

std::pair<double, double> sprt_expected_samples(const SensorNetwork& network,
                                                const SelectionPolicy& policy,
                                                const SprtThresholds& thresholds) {
    require_binary(network, "sprt_expected_samples");
    if (policy.size() != network.size()) {
        throw LengthMismatchError("sprt_expected_samples: policy length != sensor count");
    }
    const auto [c0, c1] = sprt_numerators(thresholds);
    double rate0 = 0.0;
    double rate1 = 0.0;
    for (std::size_t s = 0; s < network.size(); ++s) {
        if (policy[s] == 0.0) continue;
        const SensorModel& m = network.sensors[s];
        rate0 += policy[s] * kl_divergence(m.conditionals[0], m.conditionals[1]);
        rate1 += policy[s] * kl_divergence(m.conditionals[1], m.conditionals[0]);
    }
    if (!(rate0 > 0.0) || !(rate1 > 0.0)) {
        throw DegeneratePolicyError("sprt_expected_samples: policy is supported only on uninformative sensors");
    }
    return {c0 / rate0, c1 / rate1};
}

InformationProfile sprt_information_profile(const SensorNetwork& network,
                                            const SprtThresholds& thresholds) {
    require_binary(network, "sprt_information_profile");
    const auto [c0, c1] = sprt_numerators(thresholds);
    const std::size_t n = network.size();
    std::vector<std::vector<double>> info(2, std::vector<double>(n));
    for (std::size_t s = 0; s < n; ++s) {
        const SensorModel& m = network.sensors[s];
        const double d01 = kl_divergence(m.conditionals[0], m.conditionals[1]);
        const double d10 = kl_divergence(m.conditionals[1], m.conditionals[0]);
        if (!(d01 > 0.0) || !(d10 > 0.0)) {
            throw DegeneratePolicyError("sprt_information_profile: sensor '" + m.id +
                                        "' carries no information");
        }
        info[0][s] = d01 / c0;
        info[1][s] = d10 / c1;
    }
    return InformationProfile(network.processing_times(), std::move(info), TestKind::sprt,
                              thresholds);
}

std::vector<double> msprt_expected_samples(const SensorNetwork& network,
                                           const SelectionPolicy& policy,
                                           const MsprtThresholds& thresholds) {
    const std::size_t M = network.hypothesis_count();
    if (thresholds.count() != M) {
        throw LengthMismatchError("msprt_expected_samples: threshold count != M");
    }
    if (policy.size() != network.size()) {
        throw LengthMismatchError("msprt_expected_samples: policy length != sensor count");
    }
    std::vector<double> out(M);
    for (std::size_t k = 0; k < M; ++k) {
        if (!(thresholds.etas[k] < 1.0)) {
            throw InvalidThresholdsError("msprt_expected_samples: eta_k must be < 1 for asymptotics");
        }
        double rate = 0.0;
        for (std::size_t s = 0; s < network.size(); ++s) {
            if (policy[s] == 0.0) continue;
            rate += policy[s] * min_kl_neighbor(network, s, k).second;
        }
        if (!(rate > 0.0)) {
            throw DegeneratePolicyError("msprt_expected_samples: zero information rate for H" +
                                        std::to_string(k));
        }
        out[k] = -std::log(thresholds.etas[k]) / rate;
    }
    return out;
}

InformationProfile msprt_information_profile(const SensorNetwork& network,
                                             const MsprtThresholds& thresholds) {
    const std::size_t M = network.hypothesis_count();
    if (thresholds.count() != M) {
        throw LengthMismatchError("msprt_information_profile: threshold count != M");
    }
    const std::size_t n = network.size();
    std::vector<std::vector<double>> info(M, std::vector<double>(n));
    for (std::size_t k = 0; k < M; ++k) {
        if (!(thresholds.etas[k] < 1.0)) {
            throw InvalidThresholdsError("msprt_information_profile: eta_k must be < 1 for asymptotics");
        }
        const double numer = -std::log(thresholds.etas[k]);
        for (std::size_t s = 0; s < n; ++s) {
            const double d = min_kl_neighbor(network, s, k).second;
            if (!(d > 0.0)) {
                throw DegeneratePolicyError("msprt_information_profile: sensor '" +
                                            network.sensors[s].id + "' carries no information for H" +
                                            std::to_string(k));
            }
            info[k][s] = d / numer;
        }
    }
    return InformationProfile(network.processing_times(), std::move(info), TestKind::msprt,
                              thresholds);
}

double decision_time(const InformationProfile& profile, const SelectionPolicy& policy,
                     std::size_t k) {
    if (policy.size() != profile.size()) {
        throw LengthMismatchError("decision_time: policy length != profile size");
    }
    return dot(policy.weights, profile.processing_times) / dot(policy.weights, profile.info.at(k));
}

std::vector<double> decision_time_gradient(const InformationProfile& profile,
                                           const SelectionPolicy& policy, std::size_t k) {
    if (policy.size() != profile.size()) {
        throw LengthMismatchError("decision_time_gradient: policy length != profile size");
    }
    const std::vector<double>& I = profile.info.at(k);
    const double qT = dot(policy.weights, profile.processing_times);
    const double qI = dot(policy.weights, I);
    std::vector<double> grad(profile.size());
    for (std::size_t s = 0; s < profile.size(); ++s) {
        grad[s] = (profile.processing_times[s] * qI - I[s] * qT) / (qI * qI);
    }
    return grad;
}

double average_decision_time(const InformationProfile& profile, const SelectionPolicy& policy) {
    double sum = 0.0;
    for (std::size_t k = 0; k < profile.hypothesis_count(); ++k) {
        sum += decision_time(profile, policy, k);
    }
    return sum / static_cast<double>(profile.hypothesis_count());
}

std::vector<double> average_decision_time_gradient(const InformationProfile& profile,
                                                   const SelectionPolicy& policy) {
    std::vector<double> grad(profile.size(), 0.0);
    for (std::size_t k = 0; k < profile.hypothesis_count(); ++k) {
        const std::vector<double> gk = decision_time_gradient(profile, policy, k);
        for (std::size_t s = 0; s < profile.size(); ++s) grad[s] += gk[s];
    }
    for (double& g : grad) g /= static_cast<double>(profile.hypothesis_count());
    return grad;
}

} // namespace sensorsel
