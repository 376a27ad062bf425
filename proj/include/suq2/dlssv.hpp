#pragma once

#include "suq2/gns_operators.hpp"
#include "suq2/operator_matrix.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace suq2 {

// The four 2x2 sector-coupling coefficient families of the spinor
// representation: A raises/lowers paired with alpha*, B with -beta.  Rows
// index the target sector (Up, Down), columns the source sector.
enum class CoeffKind { APlus, AMinus, BPlus, BMinus };

inline const char* coeff_name(CoeffKind k)
{
    switch (k) {
    case CoeffKind::APlus: return "a+";
    case CoeffKind::AMinus: return "a-";
    case CoeffKind::BPlus: return "b+";
    case CoeffKind::BMinus: return "b-";
    }
    return "?";
}

namespace detail {

inline double qnum(HalfInt m, double q) { return q_number_value(m.value(), q); }

inline double qnum_sqrt(HalfInt m, double q)
{
    const double v = qnum(m, q);
    if (v < 0.0) throw std::domain_error("negative radicand in sector coefficient");
    return std::sqrt(v);
}

inline double qpow(double q, HalfInt e) { return std::pow(q, e.value()); }

} // namespace detail

// One entry of a sector-coupling matrix, computed lazily so that entries
// belonging to absent sectors are never evaluated.  A vanishing prefactor
// short-circuits before any division by [2n].
inline double dlssv_coeff(CoeffKind kind, HalfInt n, HalfInt i, HalfInt j, Sector dst, Sector src,
                          double q, const std::optional<CoeffKind>& negated = {})
{
    using detail::qnum;
    using detail::qnum_sqrt;
    using detail::qpow;
    const double common = qpow(q, HalfInt::halves((i + j - half()).twice() / 2));
    const bool plus_kind = kind == CoeffKind::APlus || kind == CoeffKind::BPlus;
    const double pref = common * (plus_kind ? qnum_sqrt(n + i + 1, q) : qnum_sqrt(n - i, q));
    if (pref == 0.0) return 0.0;
    const double sign = negated && *negated == kind ? -1.0 : 1.0;

    const int r = dst == Sector::Up ? 0 : 1;
    const int c = src == Sector::Up ? 0 : 1;
    double v = 0.0;
    switch (kind) {
    case CoeffKind::APlus:
        if (r == 0 && c == 0)
            v = qpow(q, -n - half()) * qnum_sqrt(n + j + HalfInt::halves(3), q)
                / qnum(2 * n + 2, q);
        else if (r == 1 && c == 0)
            v = qpow(q, half()) * qnum_sqrt(n - j + half(), q)
                / (qnum(2 * n + 1, q) * qnum(2 * n + 2, q));
        else if (r == 1 && c == 1)
            v = qpow(q, -n) * qnum_sqrt(n + j + half(), q) / qnum(2 * n + 1, q);
        break;
    case CoeffKind::AMinus:
        if (r == 0 && c == 0)
            v = qpow(q, n + 1) * qnum_sqrt(n - j + half(), q) / qnum(2 * n + 1, q);
        else if (r == 0 && c == 1)
            v = -qpow(q, half()) * qnum_sqrt(n + j + half(), q)
                / (qnum(2 * n, q) * qnum(2 * n + 1, q));
        else if (r == 1 && c == 1)
            v = qpow(q, n + half()) * qnum_sqrt(n - j - half(), q) / qnum(2 * n, q);
        break;
    case CoeffKind::BPlus:
        if (r == 0 && c == 0)
            v = qnum_sqrt(n - j + HalfInt::halves(3), q) / qnum(2 * n + 2, q);
        else if (r == 1 && c == 0)
            v = -qpow(q, -n - 1) * qnum_sqrt(n + j + half(), q)
                / (qnum(2 * n + 1, q) * qnum(2 * n + 2, q));
        else if (r == 1 && c == 1)
            v = qpow(q, -half()) * qnum_sqrt(n - j + half(), q) / qnum(2 * n + 1, q);
        break;
    case CoeffKind::BMinus:
        if (r == 0 && c == 0)
            v = -qpow(q, -half()) * qnum_sqrt(n + j + half(), q) / qnum(2 * n + 1, q);
        else if (r == 0 && c == 1)
            v = -qpow(q, n) * qnum_sqrt(n - j + half(), q)
                / (qnum(2 * n, q) * qnum(2 * n + 1, q));
        else if (r == 1 && c == 1)
            v = -qnum_sqrt(n + j - half(), q) / qnum(2 * n, q);
        break;
    }
    return sign * pref * v;
}

// Coefficients of the adjoint pair: the raising matrix of alpha (resp.
// -beta*) at (n,i,j) is the transpose of the lowering matrix of alpha*
// (resp. -beta) taken at the landing label, and vice versa.
inline double dlssv_coeff_tilde(CoeffKind kind, HalfInt n, HalfInt i, HalfInt j, Sector dst,
                                Sector src, double q,
                                const std::optional<CoeffKind>& negated = {})
{
    const bool a_family = kind == CoeffKind::APlus || kind == CoeffKind::AMinus;
    const bool raising = kind == CoeffKind::APlus || kind == CoeffKind::BPlus;
    const HalfInt bn = raising ? n + half() : n - half();
    const HalfInt bi = i - half();
    const HalfInt bj = a_family ? j - half() : j + half();
    if (bn.twice() < 0 || abs(bi) > bn)
        throw std::domain_error("sector coefficient landing label out of range");
    const CoeffKind base = a_family ? (raising ? CoeffKind::AMinus : CoeffKind::APlus)
                                    : (raising ? CoeffKind::BMinus : CoeffKind::BPlus);
    return dlssv_coeff(base, bn, bi, bj, src, dst, q, negated);
}

// Diagonal leading forms of the four families; off-diagonal entries are
// O(q^(2n)) and have leading form zero.
inline double dlssv_leading(CoeffKind kind, HalfInt n, HalfInt i, HalfInt j, Sector diag, double q)
{
    auto om = [&](HalfInt e) { return 1.0 - std::pow(q, e.value()); };
    auto qp = [&](HalfInt e) { return std::pow(q, e.value()); };
    const HalfInt two_n = 2 * n;
    const int up = diag == Sector::Up ? 1 : -1;
    switch (kind) {
    case CoeffKind::APlus:
        return std::sqrt(om(two_n + 2 * i + 2) * om(two_n + 2 * j + HalfInt(2) + up));
    case CoeffKind::AMinus:
        return qp(two_n + i + j + half()) * (diag == Sector::Up ? q : 1.0)
            * std::sqrt(om(two_n - 2 * i) * om(two_n - 2 * j + HalfInt(up)));
    case CoeffKind::BPlus:
        return qp(n + j - half()) * (diag == Sector::Up ? q : 1.0)
            * std::sqrt(om(two_n + 2 * i + 2) * om(two_n - 2 * j + HalfInt(2) + up));
    case CoeffKind::BMinus:
        return -qp(n + i) * std::sqrt(om(two_n - 2 * i) * om(two_n + 2 * j + HalfInt(up)));
    }
    throw std::logic_error("bad coefficient kind");
}

// Largest gap between a sector coefficient and its leading form over all
// labels and sector pairs of one level; off-diagonal leading forms are zero.
inline double dlssv_leading_gap(int level_twice, double q)
{
    double worst = 0.0;
    const HalfInt n = HalfInt::halves(level_twice);
    for (int it = -level_twice; it <= level_twice; it += 2)
        for (int jt = -level_twice - 1; jt <= level_twice + 1; jt += 2)
            for (CoeffKind kind : {CoeffKind::APlus, CoeffKind::AMinus, CoeffKind::BPlus,
                                   CoeffKind::BMinus}) {
                const HalfInt i = HalfInt::halves(it), j = HalfInt::halves(jt);
                const bool raising = kind == CoeffKind::APlus || kind == CoeffKind::BPlus;
                const bool a_family = kind == CoeffKind::APlus || kind == CoeffKind::AMinus;
                const HalfInt n2 = raising ? n + half() : n - half();
                const HalfInt i2 = i + half();
                const HalfInt j2 = a_family ? j + half() : j - half();
                for (Sector sc : {Sector::Up, Sector::Down})
                    for (Sector sr : {Sector::Up, Sector::Down}) {
                        if (!dlssv_valid({n, i, j, sc})) continue;
                        if (!dlssv_valid({n2, i2, j2, sr})) continue;
                        const double v = dlssv_coeff(kind, n, i, j, sr, sc, q);
                        const double lead =
                            sr == sc ? dlssv_leading(kind, n, i, j, sr, q) : 0.0;
                        worst = std::max(worst, std::abs(v - lead));
                    }
            }
    return worst;
}

// A nonzero coefficient pointing at a label outside the chart; the
// construction is expected to produce none.
struct PiPrimeAnomaly {
    DlssvIndex src;
    DlssvIndex dst;
    double coeff;
};

// Spinor representation of one generator, assembled columnwise from the
// sector-coupling matrices.  Entries whose target leaves the truncation are
// cut (tracked by the ledger); entries whose target leaves the chart must
// vanish identically and are verified to.
inline OperatorMatrix pi_prime(Gen g, const DlssvBasis& b, double q,
                               const std::optional<CoeffKind>& negated = {},
                               std::vector<PiPrimeAnomaly>* anomalies = nullptr)
{
    OperatorMatrix m(SpaceTag::DLSSV, OperatorMatrix::levels_of(b),
                     b.truncation().nmax.twice(), 1);
    const bool tilde = g == Gen::Alpha || g == Gen::BetaStar;
    const bool a_family = g == Gen::Alpha || g == Gen::AlphaStar;
    const double global = (g == Gen::Beta || g == Gen::BetaStar) ? -1.0 : 1.0;

    for (int col = 0; col < b.dim(); ++col) {
        const DlssvIndex s = b.at(col);
        for (int dir : {+1, -1}) {
            const HalfInt n2 = s.n + HalfInt::halves(dir);
            const HalfInt i2 = tilde ? s.i - half() : s.i + half();
            const HalfInt j2 = a_family == tilde ? s.j - half() : s.j + half();
            if (n2.twice() < 0 || abs(i2) > n2) continue;
            const CoeffKind kind = dir > 0 ? (a_family ? CoeffKind::APlus : CoeffKind::BPlus)
                                           : (a_family ? CoeffKind::AMinus : CoeffKind::BMinus);
            for (Sector dst : {Sector::Up, Sector::Down}) {
                const double v = tilde
                    ? dlssv_coeff_tilde(kind, s.n, s.i, s.j, dst, s.sector, q, negated)
                    : dlssv_coeff(kind, s.n, s.i, s.j, dst, s.sector, q, negated);
                if (v == 0.0) continue;
                const DlssvIndex t{n2, i2, j2, dst};
                if (!dlssv_valid(t)) {
                    if (anomalies) anomalies->push_back({s, t, v});
                    continue;
                }
                if (n2 > b.truncation().nmax) continue;
                m.set(b.index_of(t), col, global * v);
            }
        }
    }
    return m;
}

// Charge-conjugation-symmetric eigenvalue assignment on the direct sum:
// 2n + 1 on the Up sector, -2n on the Down sector.
inline int dirac_dlssv_value(const DlssvIndex& x)
{
    return x.sector == Sector::Up ? x.n.twice() + 1 : -x.n.twice();
}

inline OperatorMatrix dirac_dlssv(const DlssvBasis& b)
{
    return OperatorMatrix::diagonal(SpaceTag::DLSSV, OperatorMatrix::levels_of(b),
                                    b.truncation().nmax.twice(),
                                    [&](int k) { return double(dirac_dlssv_value(b.at(k))); });
}

// Per-level absolute eigenvalues and multiplicities of the direct-sum
// operator.
inline std::vector<SpectralLine> dlssv_level_lines(int level_twice)
{
    const long t = level_twice;
    std::vector<SpectralLine> lines;
    lines.push_back({double(t + 1), (t + 1) * (t + 2), double(t + 1)});
    if (t > 0) lines.push_back({double(t), (t + 1) * t, double(-t)});
    return lines;
}

} // namespace suq2
