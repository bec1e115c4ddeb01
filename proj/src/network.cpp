#include "sensorsel/network.hpp"

#include <cmath>
#include <limits>

namespace sensorsel {

SensorModel::SensorModel(std::string id_, double processing_time_,
                         std::vector<DiscretePMF> conditionals_)
    : id(std::move(id_)), processing_time(processing_time_), conditionals(std::move(conditionals_)) {
    if (!(processing_time > 0.0) || !std::isfinite(processing_time)) {
        throw ValidationError("SensorModel '" + id + "': processing_time must be > 0");
    }
    if (conditionals.size() < 2) {
        throw ValidationError("SensorModel '" + id + "': needs one conditional per hypothesis (M >= 2)");
    }
    for (std::size_t k = 1; k < conditionals.size(); ++k) {
        if (!conditionals[k].same_alphabet(conditionals[0])) {
            throw ValidationError("SensorModel '" + id + "': conditionals use different alphabets");
        }
    }
}

bool SensorModel::equivalent_to(const SensorModel& other, double tol) const {
    if (conditionals.size() != other.conditionals.size()) return false;
    if (std::abs(processing_time - other.processing_time) > tol) return false;
    for (std::size_t k = 0; k < conditionals.size(); ++k) {
        if (!conditionals[k].approx_equal(other.conditionals[k], tol)) return false;
    }
    return true;
}

namespace {

void check_simplex(std::vector<double>& w, const char* what, bool strictly_positive) {
    double sum = 0.0;
    for (double x : w) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw ValidationError(std::string(what) + ": entries must be finite and >= 0");
        }
        if (strictly_positive && x == 0.0) {
            throw ValidationError(std::string(what) + ": entries must be > 0");
        }
        sum += x;
    }
    const double dev = std::abs(sum - 1.0);
    if (dev > kRenormalizeTol) {
        throw ValidationError(std::string(what) + ": entries sum to " + std::to_string(sum));
    }
    if (dev > kProbSumTol) {
        for (double& x : w) x /= sum;
    }
}

} // namespace

HypothesisSet::HypothesisSet(std::vector<double> priors_) : priors(std::move(priors_)) {
    if (priors.size() < 2) {
        throw ValidationError("HypothesisSet: at least two hypotheses required");
    }
    check_simplex(priors, "HypothesisSet priors", /*strictly_positive=*/true);
}

HypothesisSet HypothesisSet::uniform(std::size_t count) {
    return HypothesisSet(std::vector<double>(count, 1.0 / static_cast<double>(count)));
}

SensorNetwork::SensorNetwork(std::vector<SensorModel> sensors_, HypothesisSet hypotheses_)
    : sensors(std::move(sensors_)), hypotheses(std::move(hypotheses_)) {
    if (sensors.empty()) {
        throw ValidationError("SensorNetwork: needs at least one sensor");
    }
    const std::size_t alphabet_size = sensors.front().alphabet().size();
    for (const SensorModel& s : sensors) {
        if (s.hypothesis_count() != hypotheses.count()) {
            throw ValidationError("SensorNetwork: sensor '" + s.id + "' has " +
                                  std::to_string(s.hypothesis_count()) + " conditionals for " +
                                  std::to_string(hypotheses.count()) + " hypotheses");
        }
        if (s.alphabet().size() != alphabet_size) {
            throw ValidationError("SensorNetwork: sensor '" + s.id + "' alphabet size differs");
        }
    }
}

std::vector<double> SensorNetwork::processing_times() const {
    std::vector<double> t;
    t.reserve(sensors.size());
    for (const SensorModel& s : sensors) t.push_back(s.processing_time);
    return t;
}

SelectionPolicy::SelectionPolicy(std::vector<double> weights_) : weights(std::move(weights_)) {
    if (weights.empty()) {
        throw ValidationError("SelectionPolicy: empty weight vector");
    }
    check_simplex(weights, "SelectionPolicy", /*strictly_positive=*/false);
}

SelectionPolicy SelectionPolicy::uniform(std::size_t n) {
    return SelectionPolicy(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

SelectionPolicy SelectionPolicy::vertex(std::size_t n, std::size_t s) {
    std::vector<double> w(n, 0.0);
    w.at(s) = 1.0;
    return SelectionPolicy(std::move(w));
}

std::vector<std::size_t> SelectionPolicy::support() const {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < weights.size(); ++s) {
        if (weights[s] > 0.0) out.push_back(s);
    }
    return out;
}

ClubbingResult club_duplicate_sensors(const SensorNetwork& raw, const SelectionPolicy& policy) {
    if (policy.size() != raw.size()) {
        throw LengthMismatchError("club_duplicate_sensors: policy length != sensor count");
    }
    std::vector<SensorModel> reduced;
    std::vector<double> weights;
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        bool merged = false;
        for (std::size_t j = 0; j < reduced.size(); ++j) {
            if (reduced[j].equivalent_to(raw.sensors[i])) {
                weights[j] += policy[i];
                groups[j].push_back(i);
                merged = true;
                break;
            }
        }
        if (!merged) {
            reduced.push_back(raw.sensors[i]);
            weights.push_back(policy[i]);
            groups.push_back({i});
        }
    }
    return ClubbingResult{SensorNetwork(std::move(reduced), raw.hypotheses),
                          SelectionPolicy(std::move(weights)), std::move(groups)};
}

SelectionPolicy expand_policy(const ClubbingResult& clubbed, const SelectionPolicy& reduced,
                              std::size_t original_size) {
    if (reduced.size() != clubbed.groups.size()) {
        throw LengthMismatchError("expand_policy: reduced policy length != group count");
    }
    std::vector<double> w(original_size, 0.0);
    for (std::size_t j = 0; j < clubbed.groups.size(); ++j) {
        const double share = reduced[j] / static_cast<double>(clubbed.groups[j].size());
        for (std::size_t i : clubbed.groups[j]) w.at(i) = share;
    }
    return SelectionPolicy(std::move(w));
}

std::pair<std::size_t, double> min_kl_neighbor(const SensorNetwork& network, std::size_t s,
                                               std::size_t k) {
    const SensorModel& sensor = network.sensors.at(s);
    const std::size_t M = sensor.hypothesis_count();
    if (k >= M) {
        throw ValidationError("min_kl_neighbor: hypothesis index out of range");
    }
    std::size_t best_j = std::numeric_limits<std::size_t>::max();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < M; ++j) {
        if (j == k) continue;
        const double d = kl_divergence(sensor.conditionals[k], sensor.conditionals[j]);
        if (d < best) { // strict: ties keep the lowest index
            best = d;
            best_j = j;
        }
    }
    return {best_j, best};
}

} // namespace sensorsel
