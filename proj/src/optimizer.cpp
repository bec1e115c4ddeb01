#include "sensorsel/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sensorsel {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_binary(const InformationProfile& profile, const char* where) {
    if (profile.hypothesis_count() != 2) {
        throw LengthMismatchError(std::string(where) + ": requires exactly two hypotheses");
    }
}

std::vector<double> vertex_weights(std::size_t n, std::size_t s) {
    std::vector<double> w(n, 0.0);
    w[s] = 1.0;
    return w;
}

// Champion selection: strictly better value wins; ties within
// kObjectiveTieTol resolve to the lexicographically smallest support.
struct Champion {
    const CandidateRecord* best = nullptr;

    void offer(const CandidateRecord& c) {
        if (c.skipped || std::isnan(c.value)) return;
        if (best == nullptr || c.value < best->value - kObjectiveTieTol) {
            best = &c;
        } else if (c.value <= best->value + kObjectiveTieTol && c.support < best->support) {
            best = &c;
        }
    }
};

ScenarioResult finalize(std::vector<CandidateRecord> certificate, std::string branch,
                        bool genericity_ok, std::size_t n) {
    Champion champ;
    for (const CandidateRecord& c : certificate) champ.offer(c);
    if (champ.best == nullptr) {
        throw Error("scenario solver: no evaluable candidate");
    }
    SelectionPolicy policy{champ.best->weights};
    ScenarioResult out{std::move(policy), champ.best->value, champ.best->support,
                       std::move(certificate), std::move(branch), genericity_ok};
    (void)n;
    return out;
}

// |det| of a small square matrix via partial-pivoted elimination.
double abs_det(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        if (a[piv][col] == 0.0) return 0.0;
        if (piv != col) std::swap(a[piv], a[col]);
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return std::abs(det);
}

// Rows of [T, I^0, ..., I^{M-1}] restricted to `rows`, each normalized to
// unit Euclidean length.
std::vector<std::vector<double>> normalized_rows(const InformationProfile& p,
                                                 const std::vector<std::size_t>& rows) {
    std::vector<std::vector<double>> m;
    m.reserve(rows.size());
    for (std::size_t s : rows) {
        std::vector<double> row;
        row.reserve(1 + p.hypothesis_count());
        row.push_back(p.processing_times[s]);
        for (std::size_t k = 0; k < p.hypothesis_count(); ++k) row.push_back(p.info[k][s]);
        double norm = 0.0;
        for (double v : row) norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : row) v /= norm;
        m.push_back(std::move(row));
    }
    return m;
}

// Visit all size-k index subsets of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& visit) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    if (k > n) return;
    while (true) {
        visit(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Full-rank test of every (M+1)x(M+1) row submatrix, rows normalized.
bool genericity_holds(const InformationProfile& profile) {
    const std::size_t m1 = profile.hypothesis_count() + 1;
    if (profile.size() < m1) return false;
    bool ok = true;
    for_each_subset(profile.size(), m1, [&](const std::vector<std::size_t>& rows) {
        if (ok && abs_det(normalized_rows(profile, rows)) <= 1e-10) ok = false;
    });
    return ok;
}

} // namespace

ScenarioResult scenario_one(const InformationProfile& profile, std::size_t k) {
    if (k >= profile.hypothesis_count()) {
        throw ValidationError("scenario_one: hypothesis index out of range");
    }
    const std::size_t n = profile.size();
    std::vector<CandidateRecord> cert;
    cert.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        CandidateRecord rec;
        rec.kind = CandidateRecord::Kind::vertex;
        rec.support = {s};
        rec.weights = vertex_weights(n, s);
        rec.value = profile.processing_times[s] / profile.info[k][s];
        cert.push_back(std::move(rec));
    }
    return finalize(std::move(cert), "vertex optimum of a single conditioned decision time", true,
                    n);
}

namespace {

struct SplitInfo {
    std::vector<double> diff;            // I^0 - I^1
    std::vector<std::size_t> ordering;   // ascending by diff
    std::size_t m = 0;                   // count of non-positive entries
    bool all_zero = false;
    bool empty = false;                  // all entries of one strict sign
};

SplitInfo split_by_sign(const InformationProfile& profile) {
    SplitInfo info;
    const std::size_t n = profile.size();
    info.diff.resize(n);
    bool any_pos = false, any_nonpos = false, any_nonneg = false;
    info.all_zero = true;
    for (std::size_t s = 0; s < n; ++s) {
        info.diff[s] = profile.info[0][s] - profile.info[1][s];
        if (info.diff[s] != 0.0) info.all_zero = false;
        if (info.diff[s] > 0.0) any_pos = true;
        if (info.diff[s] <= 0.0) any_nonpos = true;
        if (info.diff[s] >= 0.0) any_nonneg = true;
    }
    info.empty = !(any_nonpos && any_nonneg);
    info.ordering.resize(n);
    std::iota(info.ordering.begin(), info.ordering.end(), 0);
    std::stable_sort(info.ordering.begin(), info.ordering.end(),
                     [&](std::size_t a, std::size_t b) { return info.diff[a] < info.diff[b]; });
    info.m = static_cast<std::size_t>(
        std::count_if(info.diff.begin(), info.diff.end(), [](double d) { return d <= 0.0; }));
    (void)any_pos;
    return info;
}

} // namespace

std::optional<IntersectionPolytope> intersection_polytope(const InformationProfile& profile) {
    require_binary(profile, "intersection_polytope");
    const std::size_t n = profile.size();
    const SplitInfo info = split_by_sign(profile);
    if (info.empty) return std::nullopt;

    IntersectionPolytope out;
    out.ordering = info.ordering;
    out.split_index = info.m;
    if (info.m == n) {
        // No strictly positive entry: Q is the face spanned by the sensors
        // with zero difference (the whole simplex when all entries vanish).
        for (std::size_t s = 0; s < n; ++s) {
            if (info.diff[s] == 0.0) out.vertices.emplace_back(vertex_weights(n, s));
        }
        return out;
    }
    for (std::size_t si = 0; si < info.m; ++si) {
        for (std::size_t ri = info.m; ri < n; ++ri) {
            const std::size_t s = info.ordering[si];
            const std::size_t r = info.ordering[ri];
            const double ds = info.diff[s];
            const double dr = info.diff[r];
            std::vector<double> w(n, 0.0);
            w[s] = dr / (dr - ds);
            w[r] = 1.0 - w[s];
            out.vertices.emplace_back(std::move(w));
        }
    }
    return out;
}

ScenarioResult scenario_two(const InformationProfile& profile) {
    require_binary(profile, "scenario_two");
    const std::size_t n = profile.size();
    const std::vector<double>& T = profile.processing_times;
    const std::vector<double>& I0 = profile.info[0];
    const std::vector<double>& I1 = profile.info[1];

    std::vector<CandidateRecord> cert;
    for (std::size_t w = 0; w < n; ++w) {
        CandidateRecord rec;
        rec.kind = CandidateRecord::Kind::vertex;
        rec.support = {w};
        rec.weights = vertex_weights(n, w);
        rec.value = std::max(T[w] / I0[w], T[w] / I1[w]);
        cert.push_back(std::move(rec));
    }

    const SplitInfo info = split_by_sign(profile);
    std::string branch = info.empty
                             ? "intersection polytope empty: optimum at a vertex"
                             : "vertices and intersection-polytope candidates compared";
    if (!info.empty && info.m < n) {
        for (std::size_t si = 0; si < info.m; ++si) {
            for (std::size_t ri = info.m; ri < n; ++ri) {
                const std::size_t s = info.ordering[si];
                const std::size_t r = info.ordering[ri];
                CandidateRecord rec;
                rec.kind = CandidateRecord::Kind::polytope_vertex;
                rec.support = {std::min(s, r), std::max(s, r)};
                const double den = I1[s] * I0[r] - I0[s] * I1[r];
                if (std::abs(den) < kDegenerateDenominator) {
                    rec.skipped = true;
                    rec.value = kNaN;
                    rec.weights = std::vector<double>(n, kNaN);
                    rec.note = "degenerate denominator; pair skipped";
                } else {
                    const double ds = info.diff[s];
                    const double dr = info.diff[r];
                    std::vector<double> wts(n, 0.0);
                    wts[s] = dr / (dr - ds);
                    wts[r] = 1.0 - wts[s];
                    rec.weights = std::move(wts);
                    rec.value = ((I0[r] - I1[r]) * T[s] - (I0[s] - I1[s]) * T[r]) / den;
                }
                cert.push_back(std::move(rec));
            }
        }
    }

    ScenarioResult out = finalize(std::move(cert), std::move(branch), true, n);
    // Location-of-min-max invariant: a non-vertex optimum balances the two
    // decision times.
    if (out.support.size() > 1) {
        const double g0 = decision_time(profile, out.policy, 0);
        const double g1 = decision_time(profile, out.policy, 1);
        if (std::abs(g0 - g1) >= 1e-9 * std::max(1.0, std::abs(g0))) {
            throw Error("scenario_two: interior optimum does not balance g^0 and g^1");
        }
    }
    return out;
}

EdgeOptimum edge_optimum(const InformationProfile& profile, std::size_t s, std::size_t r) {
    require_binary(profile, "edge_optimum");
    if (s == r || s >= profile.size() || r >= profile.size()) {
        throw ValidationError("edge_optimum: need two distinct sensor indices");
    }
    const std::vector<double>& T = profile.processing_times;
    const std::vector<double>& I0 = profile.info[0];
    const std::vector<double>& I1 = profile.info[1];

    const double g0s = T[s] / I0[s], g0r = T[r] / I0[r];
    const double g1s = T[s] / I1[s], g1r = T[r] / I1[r];
    const double avg_s = 0.5 * (g0s + g1s);
    const double avg_r = 0.5 * (g0r + g1r);

    const double d0 = g0s - g0r;
    const double d1 = g1s - g1r;
    if (!(d0 * d1 < 0.0)) {
        // Both decision times favor the same endpoint (or one is flat).
        return avg_s <= avg_r ? EdgeOptimum{0.0, avg_s, false} : EdgeOptimum{1.0, avg_r, false};
    }

    // Orient so g^0 favors a and g^1 favors b; then both square-root
    // arguments are positive.
    std::size_t a = s, b = r;
    bool flipped = false;
    if (d0 > 0.0) {
        std::swap(a, b);
        flipped = true;
    }
    const double A = T[b] * I0[a] - T[a] * I0[b]; // > 0: g^0 favors a
    const double B = T[a] * I1[b] - T[b] * I1[a]; // > 0: g^1 favors b
    const double den = I0[a] * I1[b] - I0[b] * I1[a];
    if (A < 0.0 || B < 0.0 || den <= 0.0) {
        // Numerical degeneracy at the sign boundary: fall back to the better
        // endpoint, flagged.
        return avg_s <= avg_r ? EdgeOptimum{0.0, avg_s, true} : EdgeOptimum{1.0, avg_r, true};
    }
    const double sq_a = std::sqrt(A);
    const double sq_b = std::sqrt(B);
    const double mu = (I0[b] * sq_b - I1[b] * sq_a) / (I1[a] * sq_a - I0[a] * sq_b);
    double t = 1.0 / (1.0 + mu);
    const double value = 0.5 * (std::sqrt(B / den) + std::sqrt(A / den)) *
                         (std::sqrt(B / den) + std::sqrt(A / den));
    if (!std::isfinite(t) || !(t > 0.0 && t < 1.0) || !std::isfinite(value)) {
        return avg_s <= avg_r ? EdgeOptimum{0.0, avg_s, true} : EdgeOptimum{1.0, avg_r, true};
    }
    if (flipped) t = 1.0 - t;
    return EdgeOptimum{t, value, false};
}

namespace {

// Which branch of the average-decision-time theorem applies (M = 2).
std::pair<std::string, bool> classify_binary_branch(const InformationProfile& profile) {
    const std::vector<double>& T = profile.processing_times;
    const std::vector<double>& I0 = profile.info[0];
    const std::vector<double>& I1 = profile.info[1];
    const std::size_t n = profile.size();

    double max_cross = 0.0, scale = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t r = s + 1; r < n; ++r) {
            max_cross = std::max(max_cross, std::abs(I0[s] * I1[r] - I0[r] * I1[s]));
        }
        scale = std::max(scale, I0[s] * I1[s]);
    }
    if (n == 1 || max_cross <= 1e-12 * scale) {
        return {"information vectors linearly dependent: optimum at a vertex (statement 1)", true};
    }

    // Least-squares T ~ a0 I0 + a1 I1.
    double g00 = 0, g01 = 0, g11 = 0, b0 = 0, b1 = 0, tnorm2 = 0;
    for (std::size_t s = 0; s < n; ++s) {
        g00 += I0[s] * I0[s];
        g01 += I0[s] * I1[s];
        g11 += I1[s] * I1[s];
        b0 += I0[s] * T[s];
        b1 += I1[s] * T[s];
        tnorm2 += T[s] * T[s];
    }
    const double det = g00 * g11 - g01 * g01;
    const double a0 = (b0 * g11 - b1 * g01) / det;
    const double a1 = (b1 * g00 - b0 * g01) / det;
    double res2 = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        const double r = T[s] - a0 * I0[s] - a1 * I1[s];
        res2 += r * r;
    }
    if (n > 2 && res2 <= 1e-20 * tnorm2) {
        if (a0 * a1 < 0.0) {
            return {"T in span of the information vectors with opposite signs: optimum on an edge "
                    "(statement 2a)",
                    true};
        }
        return {"T is a positive combination of the information vectors: the optimum may lie in "
                "the simplex interior (statement 2b); best vertex/edge candidate reported",
                true};
    }

    bool generic = true;
    if (n >= 3) {
        for_each_subset(n, 3, [&](const std::vector<std::size_t>& rows) {
            if (generic && abs_det(normalized_rows(profile, rows)) <= 1e-10) generic = false;
        });
    }
    if (generic) {
        return {"generic sensor set: optimum on an edge (statement 3)", true};
    }
    return {"full-rank condition fails: edge/vertex enumeration is heuristic here", false};
}

} // namespace

ScenarioResult scenario_three_binary(const InformationProfile& profile) {
    require_binary(profile, "scenario_three_binary");
    const std::size_t n = profile.size();
    std::vector<CandidateRecord> cert;
    for (std::size_t s = 0; s < n; ++s) {
        CandidateRecord rec;
        rec.kind = CandidateRecord::Kind::vertex;
        rec.support = {s};
        rec.weights = vertex_weights(n, s);
        rec.value = 0.5 * (profile.processing_times[s] / profile.info[0][s] +
                           profile.processing_times[s] / profile.info[1][s]);
        cert.push_back(std::move(rec));
    }
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t r = s + 1; r < n; ++r) {
            const EdgeOptimum opt = edge_optimum(profile, s, r);
            CandidateRecord rec;
            rec.kind = CandidateRecord::Kind::edge;
            rec.weights = std::vector<double>(n, 0.0);
            rec.weights[s] = 1.0 - opt.t;
            rec.weights[r] = opt.t;
            if (opt.t == 0.0) {
                rec.support = {s};
            } else if (opt.t == 1.0) {
                rec.support = {r};
            } else {
                rec.support = {s, r};
            }
            rec.value = opt.value;
            if (opt.clamped) rec.note = "interior branch degenerated; endpoint used";
            cert.push_back(std::move(rec));
        }
    }
    auto [branch, generic] = classify_binary_branch(profile);
    return finalize(std::move(cert), std::move(branch), generic, n);
}

namespace {

// Average decision time restricted to a face, with weights over `sub`.
struct FaceObjective {
    const InformationProfile& profile;
    const std::vector<std::size_t>& sub;

    double operator()(const std::vector<double>& w) const {
        double qT = 0.0;
        for (std::size_t j = 0; j < sub.size(); ++j) qT += w[j] * profile.processing_times[sub[j]];
        double sum = 0.0;
        for (std::size_t k = 0; k < profile.hypothesis_count(); ++k) {
            double qI = 0.0;
            for (std::size_t j = 0; j < sub.size(); ++j) qI += w[j] * profile.info[k][sub[j]];
            sum += qT / qI;
        }
        return sum / static_cast<double>(profile.hypothesis_count());
    }
};

// Dense lattice minimum over the face simplex at resolution 1/steps.
void lattice_minimum(const FaceObjective& obj, std::size_t dim, std::size_t steps,
                     std::vector<double>& best_w, double& best_v) {
    std::vector<std::size_t> counts(dim, 0);
    std::vector<double> w(dim, 0.0);
    const double h = 1.0 / static_cast<double>(steps);

    // Recursive composition enumeration of `steps` into `dim` parts.
    auto rec = [&](auto&& self, std::size_t pos, std::size_t remaining) -> void {
        if (pos + 1 == dim) {
            counts[pos] = remaining;
            for (std::size_t j = 0; j < dim; ++j) w[j] = static_cast<double>(counts[j]) * h;
            const double v = obj(w);
            if (v < best_v) {
                best_v = v;
                best_w = w;
            }
            return;
        }
        for (std::size_t c = 0; c <= remaining; ++c) {
            counts[pos] = c;
            self(self, pos + 1, remaining - c);
        }
    };
    rec(rec, 0, steps);
}

// Pattern search: move mass `step` between coordinates while it improves.
void refine_on_face(const FaceObjective& obj, std::vector<double>& w, double& value, double step) {
    const std::size_t dim = w.size();
    bool improved = true;
    int guard = 200000;
    while (improved && guard-- > 0) {
        improved = false;
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                if (i == j || w[j] <= 0.0) continue;
                const double delta = std::min(step, w[j]);
                std::vector<double> trial = w;
                trial[i] += delta;
                trial[j] -= delta;
                const double v = obj(trial);
                if (v < value - 1e-15) {
                    w = std::move(trial);
                    value = v;
                    improved = true;
                }
            }
        }
    }
}

} // namespace

ScenarioResult scenario_three_multi(const InformationProfile& profile, double grid_step,
                                    int refinement_rounds) {
    if (!(grid_step > 0.0 && grid_step <= 0.1)) {
        throw ValidationError("scenario_three_multi: grid_step must lie in (0, 0.1]");
    }
    if (refinement_rounds < 0) {
        throw ValidationError("scenario_three_multi: refinement_rounds must be >= 0");
    }
    const std::size_t n = profile.size();
    const std::size_t M = profile.hypothesis_count();
    const std::size_t max_support = std::min(n, M);
    const std::size_t steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(1.0 / grid_step)));

    std::string branch;
    bool generic = true;
    if (n > M) {
        generic = genericity_holds(profile);
        branch = generic ? "generic sensor set: optimal support has at most M sensors"
                         : "full-rank condition fails: the at-most-M support bound is heuristic";
    } else {
        branch = "n <= M: full-simplex search (beyond the paper's n > M setting)";
    }

    std::vector<CandidateRecord> cert;
    for (std::size_t size = 1; size <= max_support; ++size) {
        for_each_subset(n, size, [&](const std::vector<std::size_t>& sub) {
            FaceObjective obj{profile, sub};
            std::vector<double> w(sub.size(), 0.0);
            double value = std::numeric_limits<double>::infinity();
            if (sub.size() == 1) {
                w[0] = 1.0;
                value = obj(w);
            } else {
                lattice_minimum(obj, sub.size(), steps, w, value);
                double step = grid_step;
                for (int round = 0; round < refinement_rounds; ++round) {
                    step *= 0.1;
                    refine_on_face(obj, w, value, step);
                }
            }
            CandidateRecord rec;
            rec.kind = CandidateRecord::Kind::face;
            rec.weights = std::vector<double>(n, 0.0);
            for (std::size_t j = 0; j < sub.size(); ++j) rec.weights[sub[j]] = w[j];
            for (std::size_t j = 0; j < sub.size(); ++j) {
                if (w[j] > 0.0) rec.support.push_back(sub[j]);
            }
            rec.value = value;
            cert.push_back(std::move(rec));
        });
    }
    return finalize(std::move(cert), std::move(branch), generic, n);
}

} // namespace sensorsel
