#pragma once
#include <utility>
#include <vector>

#include "sensorsel/engines.hpp"
#include "sensorsel/network.hpp"

namespace sensorsel {

/// The data behind the conditioned decision times g^k(q) = (q.T)/(q.I^k):
/// processing times T and one information vector per hypothesis, scaled so
/// that the ratio is the expected decision time in time units.
struct InformationProfile {
    std::vector<double> processing_times;        // T, length n
    std::vector<std::vector<double>> info;       // info[k][s] = I^k_s (> 0)
    TestKind kind = TestKind::sprt;
    TestPlan thresholds;

    InformationProfile(std::vector<double> processing_times_,
                       std::vector<std::vector<double>> info_, TestKind kind_, TestPlan thresholds_);

    std::size_t size() const { return processing_times.size(); }
    std::size_t hypothesis_count() const { return info.size(); }
};

/// Asymptotic expected sample counts (E[N|H0], E[N|H1]) for the SPRT with
/// switching sensors: C_k over the policy-averaged Kullback-Leibler rate.
std::pair<double, double> sprt_expected_samples(const SensorNetwork& network,
                                                const SelectionPolicy& policy,
                                                const SprtThresholds& thresholds);

/// I^k_s = D(f_s^k, f_s^{1-k}) / C_k with C_0 = -((1-a0)eta0 + a0*eta1 - lambda0)
/// and C_1 = a1*eta0 + (1-a1)*eta1 - lambda0, so that g^k(q) = E[N|H_k] E[T].
InformationProfile sprt_information_profile(const SensorNetwork& network,
                                            const SprtThresholds& thresholds);

/// E[N|H_k] = -ln(eta_k) / sum_s q_s D(f_s^k, f_s^{j*_(s,k)}).
std::vector<double> msprt_expected_samples(const SensorNetwork& network,
                                           const SelectionPolicy& policy,
                                           const MsprtThresholds& thresholds);

/// Ibar^k_s = D(f_s^k, f_s^{j*_(s,k)}) / (-ln eta_k).
InformationProfile msprt_information_profile(const SensorNetwork& network,
                                             const MsprtThresholds& thresholds);

/// g^k(q) = (q.T)/(q.I^k), the asymptotic expected decision time.
double decision_time(const InformationProfile& profile, const SelectionPolicy& policy,
                     std::size_t k);

/// Unconstrained gradient of g^k at q: (T (q.I) - I (q.T)) / (q.I)^2.
std::vector<double> decision_time_gradient(const InformationProfile& profile,
                                           const SelectionPolicy& policy, std::size_t k);

/// Average of the conditioned decision times, (1/M) sum_k g^k(q).
double average_decision_time(const InformationProfile& profile, const SelectionPolicy& policy);

std::vector<double> average_decision_time_gradient(const InformationProfile& profile,
                                                   const SelectionPolicy& policy);

} // namespace sensorsel
