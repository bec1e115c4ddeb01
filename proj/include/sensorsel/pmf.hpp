#pragma once
#include <cstddef>
#include <string>
#include <vector>

#include "sensorsel/errors.hpp"

namespace sensorsel {

// Normalization tolerances shared by every probability-vector type:
// a sum within kProbSumTol of 1 is accepted as-is, a deviation below
// kRenormalizeTol is silently renormalized (rounding noise), anything
// larger is rejected as a user error.
inline constexpr double kProbSumTol = 1e-12;
inline constexpr double kRenormalizeTol = 1e-9;

/// Finite-alphabet probability mass function with labelled outcomes.
class DiscretePMF {
public:
    DiscretePMF(std::vector<std::string> alphabet, std::vector<double> probabilities);

    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::vector<double>& probabilities() const { return probs_; }
    std::size_t size() const { return probs_.size(); }

    double prob(std::size_t outcome) const { return probs_.at(outcome); }

    /// Index of a label in the alphabet; throws ValidationError if absent.
    std::size_t index_of(const std::string& label) const;

    bool same_alphabet(const DiscretePMF& other) const { return alphabet_ == other.alphabet_; }

    /// Elementwise equality within tol (alphabets must match exactly).
    bool approx_equal(const DiscretePMF& other, double tol = 1e-12) const;

private:
    std::vector<std::string> alphabet_;
    std::vector<double> probs_;
};

/// Kullback-Leibler distance D(p,q) = sum_x p(x) ln(p(x)/q(x)), in nats.
/// Terms with p(x) = 0 contribute zero. Throws AbsoluteContinuityError when
/// p(x) > 0 and q(x) = 0 (the divergence would be infinite).
double kl_divergence(const DiscretePMF& p, const DiscretePMF& q);

} // namespace sensorsel
