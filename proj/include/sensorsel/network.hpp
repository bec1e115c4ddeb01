#pragma once
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sensorsel/pmf.hpp"

namespace sensorsel {

/// One sensor: per-hypothesis conditional distributions over a shared
/// alphabet plus the time it takes to deliver a measurement.
struct SensorModel {
    std::string id;
    double processing_time = 0.0;
    std::vector<DiscretePMF> conditionals; // one per hypothesis

    SensorModel(std::string id_, double processing_time_, std::vector<DiscretePMF> conditionals_);

    std::size_t hypothesis_count() const { return conditionals.size(); }
    const std::vector<std::string>& alphabet() const { return conditionals.front().alphabet(); }

    /// Same conditionals (within tol) and same processing time.
    bool equivalent_to(const SensorModel& other, double tol = 1e-12) const;
};

/// Hypothesis count and prior probabilities.
struct HypothesisSet {
    std::vector<double> priors;

    explicit HypothesisSet(std::vector<double> priors_);
    static HypothesisSet uniform(std::size_t count);

    std::size_t count() const { return priors.size(); }
};

struct SensorNetwork {
    std::vector<SensorModel> sensors;
    HypothesisSet hypotheses;

    SensorNetwork(std::vector<SensorModel> sensors_, HypothesisSet hypotheses_);

    std::size_t size() const { return sensors.size(); }
    std::size_t hypothesis_count() const { return hypotheses.count(); }

    std::vector<double> processing_times() const;
};

/// Stationary sensor-selection probabilities on the simplex.
struct SelectionPolicy {
    std::vector<double> weights;

    explicit SelectionPolicy(std::vector<double> weights_);
    static SelectionPolicy uniform(std::size_t n);
    static SelectionPolicy vertex(std::size_t n, std::size_t s);

    std::size_t size() const { return weights.size(); }
    double operator[](std::size_t s) const { return weights[s]; }

    /// Indices with strictly positive weight.
    std::vector<std::size_t> support() const;
};

/// Result of merging duplicate sensors: the reduced network/policy plus the
/// original indices behind each reduced node, so a reduced policy can be
/// expanded back to the original roster.
struct ClubbingResult {
    SensorNetwork network;
    SelectionPolicy policy;
    std::vector<std::vector<std::size_t>> groups; // groups[i] = original indices of node i
};

/// Merge sensors with identical conditionals and processing time into one
/// node carrying the sum of their weights. First-occurrence order is kept.
ClubbingResult club_duplicate_sensors(const SensorNetwork& raw, const SelectionPolicy& policy);

/// Inverse of clubbing for policies: each merged node's weight is split
/// equally among the original sensors in its group.
SelectionPolicy expand_policy(const ClubbingResult& clubbed, const SelectionPolicy& reduced,
                              std::size_t original_size);

/// j*_(s,k): the hypothesis j != k closest to k in Kullback-Leibler distance
/// at sensor s, with the distance itself. Ties break to the lowest index.
std::pair<std::size_t, double> min_kl_neighbor(const SensorNetwork& network, std::size_t s,
                                               std::size_t k);

} // namespace sensorsel
