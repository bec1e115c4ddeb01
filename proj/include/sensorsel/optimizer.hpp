#pragma once
#include <optional>
#include <string>
#include <vector>

#include "sensorsel/analysis.hpp"

namespace sensorsel {

/// One evaluated candidate of a scenario solver. Skipped candidates (e.g.
/// numerically degenerate two-sensor denominators) stay in the record with
/// value = NaN so the enumeration remains auditable and countable.
struct CandidateRecord {
    enum class Kind { vertex, polytope_vertex, edge, face };
    Kind kind = Kind::vertex;
    std::vector<std::size_t> support;
    std::vector<double> weights; // full-length policy weights
    double value = 0.0;
    bool skipped = false;
    std::string note;
};

struct ScenarioResult {
    SelectionPolicy policy;
    double objective = 0.0;
    std::vector<std::size_t> support;
    std::vector<CandidateRecord> certificate;
    std::string branch;        // which theorem branch / solver notes apply
    bool genericity_ok = true; // full-rank condition for the support bound
};

/// Vertices of Q = {q : q.(I^0 - I^1) = 0} on the simplex, each at most
/// 2-sparse, plus the ascending ordering of I^0 - I^1 and the count m of
/// its non-positive entries.
struct IntersectionPolytope {
    std::vector<SelectionPolicy> vertices;
    std::vector<std::size_t> ordering;
    std::size_t split_index = 0; // m
};

// Objective-tie tolerance and degenerate-denominator guard used throughout.
inline constexpr double kObjectiveTieTol = 1e-9;
inline constexpr double kDegenerateDenominator = 1e-12;

/// Scenario I: minimize g^k. The optimum is the vertex argmin_s T_s/I^k_s;
/// the certificate lists all n vertex values. O(n).
ScenarioResult scenario_one(const InformationProfile& profile, std::size_t k);

/// Empty (nullopt) iff I^0 - I^1 has all entries of one strict sign.
std::optional<IntersectionPolytope> intersection_polytope(const InformationProfile& profile);

/// Scenario II: minimize max{g^0, g^1} over vertices and the intersection
/// polytope's vertices (closed form per pair). O(n^2).
ScenarioResult scenario_two(const InformationProfile& profile);

struct EdgeOptimum {
    double t = 0.0;     // optimum at (1-t) e_s + t e_r
    double value = 0.0; // (g^0 + g^1)/2 there
    bool clamped = false; // interior branch degenerated; endpoint reported
};

/// Minimum of (g^0 + g^1)/2 along the edge e_s -- e_r: the favored endpoint
/// when both g's agree, otherwise the closed-form interior point.
EdgeOptimum edge_optimum(const InformationProfile& profile, std::size_t s, std::size_t r);

/// Scenario III for two hypotheses: minimize (g^0 + g^1)/2 over all n
/// vertices and all n(n-1)/2 edge optima. O(n^2).
ScenarioResult scenario_three_binary(const InformationProfile& profile);

/// Scenario III for M >= 2: enumerate all sensor subsets of size <= M, run a
/// dense lattice search on each face at grid_step, then refine locally with
/// the step shrinking by 10x per round.
ScenarioResult scenario_three_multi(const InformationProfile& profile, double grid_step = 0.01,
                                    int refinement_rounds = 3);

} // namespace sensorsel
