#pragma once

#include "suq2/operator_matrix.hpp"
#include "suq2/peter_weyl.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace suq2 {

enum class Gen { Alpha, AlphaStar, Beta, BetaStar };

inline const char* gen_name(Gen g)
{
    switch (g) {
    case Gen::Alpha: return "a";
    case Gen::AlphaStar: return "a*";
    case Gen::Beta: return "b";
    case Gen::BetaStar: return "b*";
    }
    return "?";
}

inline AlgebraElement gen_element(Gen g)
{
    switch (g) {
    case Gen::Alpha: return gen_alpha();
    case Gen::AlphaStar: return gen_alpha_star();
    case Gen::Beta: return gen_beta();
    case Gen::BetaStar: return gen_beta_star();
    }
    throw std::logic_error("bad generator");
}

// A closed-form coefficient whose target fell outside the label chart while
// the coefficient itself is nonzero.  This happens only for lowering terms
// pinned to the chart edge, and the stranded weight is O(q^(2n)).
struct HatDrop {
    PWIndex src;
    double coeff;
};

// Closed-form multiplication model on the matrix-unit basis.  Each generator
// sends e(n,i,j) to one raising and one lowering term; coefficients below
// are exact powers of q and square roots of 1 - q^k.
inline OperatorMatrix hat_generator(Gen g, const PWBasis& b, double q,
                                    std::vector<HatDrop>* drops = nullptr)
{
    OperatorMatrix m(SpaceTag::PW, OperatorMatrix::levels_of(b), b.truncation().nmax.twice(), 1);
    auto omq = [&](int e) { return 1.0 - std::pow(q, e); };
    for (int col = 0; col < b.dim(); ++col) {
        const PWIndex s = b.at(col);
        const int tn = s.n.twice(), ti = s.i.twice(), tj = s.j.twice();
        // {target, coefficient} pairs for the raising and lowering parts.
        std::pair<PWIndex, double> terms[2];
        switch (g) {
        case Gen::Alpha:
            terms[0] = {{s.n + half(), s.i - half(), s.j - half()},
                        std::pow(q, tn + (ti + tj) / 2 + 1)};
            terms[1] = {{s.n - half(), s.i - half(), s.j - half()},
                        std::sqrt(omq(tn + ti) * omq(tn + tj))};
            break;
        case Gen::AlphaStar:
            terms[0] = {{s.n + half(), s.i + half(), s.j + half()},
                        std::sqrt(omq(tn + ti + 2) * omq(tn + tj + 2))};
            terms[1] = {{s.n - half(), s.i + half(), s.j + half()},
                        std::pow(q, tn + (ti + tj) / 2 + 1)};
            break;
        case Gen::Beta:
            terms[0] = {{s.n + half(), s.i + half(), s.j - half()},
                        -std::pow(q, (tn + tj) / 2) * std::sqrt(omq(tn + ti + 2))};
            terms[1] = {{s.n - half(), s.i + half(), s.j - half()},
                        std::pow(q, (tn + ti) / 2) * std::sqrt(omq(tn + tj))};
            break;
        case Gen::BetaStar:
            terms[0] = {{s.n + half(), s.i - half(), s.j + half()},
                        std::pow(q, (tn + ti) / 2) * std::sqrt(omq(tn + tj + 2))};
            terms[1] = {{s.n - half(), s.i - half(), s.j + half()},
                        -std::pow(q, (tn + tj) / 2) * std::sqrt(omq(tn + ti))};
            break;
        }
        for (const auto& [dst, coeff] : terms) {
            if (coeff == 0.0) continue;
            if (!pw_valid(dst)) {
                if (drops) drops->push_back({s, coeff});
                continue;
            }
            if (!b.contains(dst)) continue;  // truncation cut, tracked by the ledger
            m.set(b.index_of(dst), col, coeff);
        }
    }
    return m;
}

// Normalized numeric matrix of an exact operator: rescaling each axis by its
// length turns coefficients on representatives into matrix elements in the
// orthonormal basis.  The level ledger is inferred from the sparsity.
inline OperatorMatrix to_numeric(const ExactOperator& t, double q)
{
    const GnsBasis& b = t.basis();
    std::vector<double> len(b.dim());
    for (int k = 0; k < b.dim(); ++k) len[k] = std::sqrt(b.vec(k).norm2.evaluate(q));
    OperatorMatrix m(SpaceTag::PW, OperatorMatrix::levels_of(b.labels()),
                     b.nmax().twice(), 0);
    int shift = 0;
    for (int col = 0; col < b.dim(); ++col)
        for (const auto& [row, c] : t.column(col)) {
            m.set(row, col, c.evaluate(q) * len[row] / len[col]);
            shift = std::max(shift,
                             std::abs(b.labels().level(row).twice()
                                      - b.labels().level(col).twice()));
        }
    m.set_ledger(shift, b.nmax().twice() - shift);
    return m;
}

// ---- eigenvalue families ----

// Two-branch eigenvalue family: lambda = a n + b except on the k + 1 extreme
// columns (rows for the Right version), where lambda = c n + d.
struct EigenvalueModel {
    int k = 0;
    int a = 0, b = 0, c = 0, d = 0;
    Side side = Side::Left;

    bool high_branch(const PWIndex& x) const
    {
        const HalfInt t = side == Side::Left ? x.j : x.i;
        return t >= x.n - HalfInt(k);
    }
    int eigenvalue_twice(const PWIndex& x) const
    {
        return high_branch(x) ? c * x.n.twice() + 2 * d : a * x.n.twice() + 2 * b;
    }
    double eigenvalue(const PWIndex& x) const { return 0.5 * eigenvalue_twice(x); }

    std::string str() const
    {
        return "(" + std::to_string(k) + "," + std::to_string(a) + "," + std::to_string(b) + ","
            + std::to_string(c) + "," + std::to_string(d) + ","
            + (side == Side::Left ? "L" : "R") + ")";
    }
};

// The two operators of interest and a third family used as a cross-check.
inline EigenvalueModel dirac_standard() { return {0, -2, 0, 2, 1, Side::Left}; }
inline EigenvalueModel dirac_offset() { return {0, -2, -1, 2, 1, Side::Left}; }
inline EigenvalueModel dirac_probe() { return {1, -1, 0, 1, 2, Side::Left}; }

inline OperatorMatrix model_matrix(const EigenvalueModel& m, const PWBasis& b)
{
    return OperatorMatrix::diagonal(SpaceTag::PW, OperatorMatrix::levels_of(b),
                                    b.truncation().nmax.twice(),
                                    [&](int k) { return m.eigenvalue(b.at(k)); });
}

inline OperatorMatrix model_abs_matrix(const EigenvalueModel& m, const PWBasis& b)
{
    return OperatorMatrix::diagonal(SpaceTag::PW, OperatorMatrix::levels_of(b),
                                    b.truncation().nmax.twice(),
                                    [&](int k) { return std::abs(m.eigenvalue(b.at(k))); });
}

// Sign pattern, with sign(0) taken as +1; zero_seen reports whether that
// convention was exercised.
inline std::vector<int> model_signs(const EigenvalueModel& m, const PWBasis& b, bool* zero_seen)
{
    std::vector<int> s(b.dim());
    for (int k = 0; k < b.dim(); ++k) {
        const int t = m.eigenvalue_twice(b.at(k));
        if (t == 0 && zero_seen) *zero_seen = true;
        s[k] = t < 0 ? -1 : 1;
    }
    return s;
}

inline ExactOperator exact_model_operator(const GnsBasis& b, const EigenvalueModel& m)
{
    ExactOperator t(b);
    for (int k = 0; k < b.dim(); ++k)
        t.add_entry(k, k, QScalar::fraction(m.eigenvalue_twice(b.labels().at(k)), 2));
    return t;
}

// ---- equivariance ----

// First translation entry joining two different eigenvalues, if any; such an
// entry certifies that the family cannot commute with that translation side.
struct EquivarianceWitness {
    PWIndex row, col;
    int row_twice = 0, col_twice = 0;
};

inline std::optional<EquivarianceWitness> structural_witness(const ExactOperator& u,
                                                             const EigenvalueModel& m)
{
    const PWBasis& labels = u.basis().labels();
    for (int col = 0; col < u.dim(); ++col)
        for (const auto& [row, c] : u.column(col)) {
            const int tr = m.eigenvalue_twice(labels.at(row));
            const int tc = m.eigenvalue_twice(labels.at(col));
            if (tr != tc) return EquivarianceWitness{labels.at(row), labels.at(col), tr, tc};
        }
    return std::nullopt;
}

inline bool commutes_exactly(const ExactOperator& u, const ExactOperator& d)
{
    return (d.composed_with(u) - u.composed_with(d)).is_zero();
}

// ---- growth comparison ----

// Smallest slope on the grid {1/8, 2/8, ...} such that |target| <=
// offset + slope * |reference| pointwise, where the required offset stops
// growing strictly before the last level; otherwise infeasible.
struct GrowthBound {
    bool feasible = false;
    double slope = 0.0;
    double offset = 0.0;
    int settled_twice = 0;  // level (doubled) after which the offset is final
};

template <typename F>
GrowthBound growth_bound_fn(F&& target_eigenvalue, const EigenvalueModel& reference,
                            const PWBasis& b)
{
    const int tmax = b.truncation().nmax.twice();
    for (int k8 = 1; k8 <= 32; ++k8) {
        const double slope = k8 / 8.0;
        double best = -1.0;
        int settled = 0;
        for (int t = 0; t <= tmax; ++t) {
            double level_max = -1.0;
            for (int col = 0; col < b.dim(); ++col) {
                if (b.level(col).twice() != t) continue;
                const PWIndex& x = b.at(col);
                level_max = std::max(level_max, std::abs(target_eigenvalue(x))
                                                    - slope * std::abs(reference.eigenvalue(x)));
            }
            if (level_max > best) {
                best = level_max;
                settled = t;
            }
        }
        if (settled < tmax)
            return {true, slope, std::max(best, 0.0), settled};
    }
    return {};
}

inline GrowthBound growth_bound(const EigenvalueModel& target, const EigenvalueModel& reference,
                                const PWBasis& b)
{
    return growth_bound_fn([&](const PWIndex& x) { return target.eigenvalue(x); }, reference, b);
}

// ---- sign pattern comparison ----

struct SignComparison {
    long disagreements = 0;
    int last_disagreement_twice = -1;  // -1 when the patterns agree everywhere
};

inline SignComparison compare_signs(const std::vector<int>& sa, const std::vector<int>& sb,
                                    const PWBasis& b)
{
    SignComparison r;
    for (int k = 0; k < b.dim(); ++k)
        if (sa.at(k) != sb.at(k)) {
            ++r.disagreements;
            r.last_disagreement_twice = std::max(r.last_disagreement_twice, b.level(k).twice());
        }
    return r;
}

// Compact difference within the window: every disagreement sits strictly
// below the top level, so enlarging the truncation cannot be what ended them.
inline bool sign_difference_compact(const SignComparison& c, const PWBasis& b)
{
    return c.last_disagreement_twice < b.truncation().nmax.twice();
}

// ---- eigenvalue multiplicities per level ----

struct SpectralLine {
    double abs_eigenvalue = 0.0;
    long multiplicity = 0;
    double eigenvalue = 0.0;  // signed value the absolute comes from
};

// The two branch contributions of one level of an eigenvalue family; the
// row (or column) index is fully degenerate.
inline std::vector<SpectralLine> model_level_lines(const EigenvalueModel& m, int level_twice)
{
    const int t = level_twice;
    long high = m.k + 1;
    if (high > t + 1) high = t + 1;
    if (high < 0) high = 0;
    const long low = (t + 1) - high;
    const double lam_low = 0.5 * (m.a * t + 2 * m.b);
    const double lam_high = 0.5 * (m.c * t + 2 * m.d);
    std::vector<SpectralLine> lines;
    if (low > 0) lines.push_back({std::abs(lam_low), (t + 1) * low, lam_low});
    if (high > 0) lines.push_back({std::abs(lam_high), (t + 1) * high, lam_high});
    return lines;
}

} // namespace suq2
