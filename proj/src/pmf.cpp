#include "sensorsel/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace sensorsel {

namespace {

void normalize_or_reject(std::vector<double>& probs, const char* what) {
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0) || p > 1.0 + kRenormalizeTol) {
            throw ValidationError(std::string(what) + ": probability out of [0,1]");
        }
        sum += p;
    }
    const double dev = std::abs(sum - 1.0);
    if (dev > kRenormalizeTol) {
        throw ValidationError(std::string(what) + ": probabilities sum to " + std::to_string(sum));
    }
    if (dev > kProbSumTol) {
        for (double& p : probs) p /= sum;
    }
}

} // namespace

DiscretePMF::DiscretePMF(std::vector<std::string> alphabet, std::vector<double> probabilities)
    : alphabet_(std::move(alphabet)), probs_(std::move(probabilities)) {
    if (alphabet_.empty()) {
        throw ValidationError("DiscretePMF: empty alphabet");
    }
    if (alphabet_.size() != probs_.size()) {
        throw ValidationError("DiscretePMF: alphabet and probability lengths differ");
    }
    std::unordered_set<std::string> seen(alphabet_.begin(), alphabet_.end());
    if (seen.size() != alphabet_.size()) {
        throw ValidationError("DiscretePMF: alphabet labels are not distinct");
    }
    normalize_or_reject(probs_, "DiscretePMF");
}

std::size_t DiscretePMF::index_of(const std::string& label) const {
    auto it = std::find(alphabet_.begin(), alphabet_.end(), label);
    if (it == alphabet_.end()) {
        throw ValidationError("DiscretePMF: label '" + label + "' not in alphabet");
    }
    return static_cast<std::size_t>(it - alphabet_.begin());
}

bool DiscretePMF::approx_equal(const DiscretePMF& other, double tol) const {
    if (alphabet_ != other.alphabet_) return false;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (std::abs(probs_[i] - other.probs_[i]) > tol) return false;
    }
    return true;
}

double kl_divergence(const DiscretePMF& p, const DiscretePMF& q) {
    if (!p.same_alphabet(q)) {
        throw AlphabetMismatchError("kl_divergence: distributions use different alphabets");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p.prob(i);
        if (pi == 0.0) continue;
        const double qi = q.prob(i);
        if (qi == 0.0) {
            throw AbsoluteContinuityError("kl_divergence: p('" + p.alphabet()[i] +
                                          "') > 0 but q is zero there; divergence is infinite");
        }
        sum += pi * std::log(pi / qi);
    }
    // Rounding can leave a tiny negative residue when p ~ q.
    return sum < 0.0 && sum > -1e-15 ? 0.0 : sum;
}

} // namespace sensorsel
