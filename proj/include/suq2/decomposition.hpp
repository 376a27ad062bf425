#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "suq2/dlssv.hpp"
#include "suq2/gns_operators.hpp"
#include "suq2/operator_matrix.hpp"

namespace suq2 {

// ---- the level-preserving relabeling between two GNS copies and the
// ---- direct-sum space ----
//
// Per level n the doubled space carries 2(2n+1)^2 vectors and the direct sum
// carries (2n+1)(2n+2) + (2n+1)2n; the relabeling sends
//   first copy,  j < n : (n, i, j)  ->  (n, i, j + 1/2) in the small sector,
//   first copy,  j = n : (n, i, n)  ->  (n, i, n + 1/2) in the big sector,
//   second copy        : (n, i, j)  ->  (n, i, j - 1/2) in the big sector.
struct SpinorUnitary {
    std::vector<int> to_direct_sum;  // doubled position -> direct-sum position
    std::vector<int> to_doubled;     // inverse
};

inline SpinorUnitary spinor_unitary(const DoubledPWBasis& d, const DlssvBasis& s)
{
    if (d.truncation().nmax != s.truncation().nmax)
        throw std::invalid_argument("spinor_unitary: truncation mismatch");
    SpinorUnitary u{std::vector<int>(static_cast<std::size_t>(d.dim()), -1),
                    std::vector<int>(static_cast<std::size_t>(s.dim()), -1)};
    for (int p = 0; p < d.dim(); ++p) {
        const DoubledPWIndex x = d.at(p);
        const PWIndex& w = x.inner;
        DlssvIndex target{};
        if (x.copy == Copy::First)
            target = w.j == w.n ? DlssvIndex{w.n, w.i, w.n + half(), Sector::Up}
                                : DlssvIndex{w.n, w.i, w.j + half(), Sector::Down};
        else
            target = DlssvIndex{w.n, w.i, w.j - half(), Sector::Up};
        const int t = s.index_of(target);
        u.to_direct_sum[static_cast<std::size_t>(p)] = t;
        u.to_doubled[static_cast<std::size_t>(t)] = p;
    }
    for (int k : u.to_doubled)
        if (k < 0) throw std::logic_error("spinor_unitary: relabeling is not onto");
    return u;
}

// Two copies of a one-space operator, acting blockwise on the doubled space.
inline OperatorMatrix doubled_operator(const OperatorMatrix& m, const DoubledPWBasis& d)
{
    if (m.space() != SpaceTag::PW || m.dim() != d.component().dim())
        throw std::invalid_argument("doubled_operator: operand is not a one-copy operator");
    OperatorMatrix r(SpaceTag::DoubledPW, OperatorMatrix::levels_of(d), m.nmax_twice());
    r.set_ledger(m.shift_twice(), m.clean_below_twice());
    const int h = m.dim();
    for (int col = 0; col < h; ++col)
        for (const auto& [row, v] : m.column(col)) {
            r.set(row, col, v);
            r.set(row + h, col + h, v);
        }
    return r;
}

inline OperatorMatrix conjugated_to_direct_sum(const OperatorMatrix& m, const SpinorUnitary& u,
                                               const DlssvBasis& s)
{
    if (m.space() != SpaceTag::DoubledPW || m.dim() != s.dim())
        throw std::invalid_argument("conjugated_to_direct_sum: operand is not doubled");
    OperatorMatrix r(SpaceTag::DLSSV, OperatorMatrix::levels_of(s), m.nmax_twice());
    r.set_ledger(m.shift_twice(), m.clean_below_twice());
    for (int col = 0; col < m.dim(); ++col) {
        const int tc = u.to_direct_sum[static_cast<std::size_t>(col)];
        for (const auto& [row, v] : m.column(col))
            r.set(u.to_direct_sum[static_cast<std::size_t>(row)], tc, v);
    }
    return r;
}

// Exact eigenvalue intertwining defect, in doubled (integer) units: the first
// copy carries the first family, the second copy the absolute value of the
// second, and the relabeling must match the direct-sum operator entrywise.
inline long intertwining_defect_twice(const EigenvalueModel& first, const EigenvalueModel& second,
                                      HalfInt nmax)
{
    const DoubledPWBasis d(Truncation{nmax});
    const DlssvBasis s(Truncation{nmax});
    const SpinorUnitary u = spinor_unitary(d, s);
    long worst = 0;
    for (int p = 0; p < d.dim(); ++p) {
        const DoubledPWIndex x = d.at(p);
        const int lhs = x.copy == Copy::First ? first.eigenvalue_twice(x.inner)
                                              : std::abs(second.eigenvalue_twice(x.inner));
        const int rhs =
            2 * dirac_dlssv_value(s.at(u.to_direct_sum[static_cast<std::size_t>(p)]));
        worst = std::max(worst, static_cast<long>(std::abs(lhs - rhs)));
    }
    return worst;
}

// Difference between the relabeled doubled closed-form generator and the
// spinor generator, as an operator on the direct-sum space.
inline OperatorMatrix spinor_gap(Gen g, const DlssvBasis& s, double q)
{
    const DoubledPWBasis d(s.truncation());
    const SpinorUnitary u = spinor_unitary(d, s);
    return conjugated_to_direct_sum(doubled_operator(hat_generator(g, d.component(), q), d), u, s) -
           pi_prime(g, s, q);
}

// ---- geometric decay fits over level norms ----

struct DecayFit {
    double log_c = 0.0;
    double rate = 0.0;  // contraction factor per unit of spin
    int points = 0;
};

// Least-squares fit of log v_t = log_c + (t/2) log rate over doubled levels
// [from, to]; zero values are skipped.
inline DecayFit fit_decay(const std::vector<double>& level_values, int from_twice, int to_twice)
{
    std::vector<std::pair<double, double>> pts;
    for (int t = from_twice; t <= to_twice && t < static_cast<int>(level_values.size()); ++t)
        if (level_values[static_cast<std::size_t>(t)] > 0.0)
            pts.emplace_back(0.5 * t, std::log(level_values[static_cast<std::size_t>(t)]));
    DecayFit f;
    f.points = static_cast<int>(pts.size());
    if (f.points < 2) return f;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.log_c = (sy - slope * sx) / n;
    f.rate = std::exp(slope);
    return f;
}

// ---- sign gauge between two numeric generator families ----
//
// Two matrix families that agree up to a diagonal +-1 change of basis leave a
// consistent relative sign on every shared nonzero entry; breadth-first
// propagation from position 0 fixes the gauge and counts contradictions.
struct SignAlignment {
    std::vector<double> sign;  // +-1 per position, 0 when unreachable
    int unreached = 0;
    int conflicts = 0;
};

inline SignAlignment align_signs(const std::vector<const OperatorMatrix*>& a,
                                 const std::vector<const OperatorMatrix*>& b,
                                 double floor_value = 1e-8)
{
    if (a.empty() || a.size() != b.size())
        throw std::invalid_argument("align_signs: family size mismatch");
    const int n = a.front()->dim();
    std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(n));
    for (std::size_t f = 0; f < a.size(); ++f)
        for (int col = 0; col < n; ++col)
            for (const auto& [row, va] : a[f]->column(col)) {
                if (row == col || std::abs(va) <= floor_value) continue;
                const double vb = b[f]->entry(row, col);
                if (std::abs(vb) <= floor_value) continue;
                const double rel = va * vb > 0.0 ? 1.0 : -1.0;
                adj[static_cast<std::size_t>(col)].emplace_back(row, rel);
                adj[static_cast<std::size_t>(row)].emplace_back(col, rel);
            }
    SignAlignment out{std::vector<double>(static_cast<std::size_t>(n), 0.0), 0, 0};
    std::vector<int> queue{0};
    out.sign[0] = 1.0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int p = queue[head];
        for (const auto& [r, rel] : adj[static_cast<std::size_t>(p)]) {
            const double want = out.sign[static_cast<std::size_t>(p)] * rel;
            double& have = out.sign[static_cast<std::size_t>(r)];
            if (have == 0.0) {
                have = want;
                queue.push_back(r);
            } else if (have != want) {
                ++out.conflicts;
            }
        }
    }
    for (double v : out.sign)
        if (v == 0.0) ++out.unreached;
    return out;
}

// Per-source-level largest entry difference a - S b S over the columns both
// ledgers mark clean.
inline std::vector<double> aligned_level_gaps(const OperatorMatrix& a, const OperatorMatrix& b,
                                              const std::vector<double>& sign)
{
    const int cap = std::min(a.clean_below_twice(), b.clean_below_twice());
    std::vector<double> out(static_cast<std::size_t>(a.nmax_twice()) + 1, 0.0);
    for (int col = 0; col < a.dim(); ++col) {
        const int t = a.level_twice(col);
        if (t > cap) continue;
        double& slot = out[static_cast<std::size_t>(t)];
        const double sc = sign[static_cast<std::size_t>(col)];
        for (const auto& [row, va] : a.column(col))
            slot = std::max(slot, std::abs(va - sign[static_cast<std::size_t>(row)] *
                                                    b.entry(row, col) * sc));
        for (const auto& [row, vb] : b.column(col))
            if (a.entry(row, col) == 0.0)
                slot = std::max(slot, std::abs(vb));
    }
    return out;
}

// ---- index pairing with the defining corepresentation ----
//
// The corepresentation acts on two copies of the representation space through
// the 2x2 block operator [[a, -q b*], [b, a*]]; compressing it between the
// positive-energy subspaces gives a finite rectangle whose near-kernel counts,
// minus those of the adjoint compression, recover the pairing integer.
// Columns stop at the deepest fully known level while rows keep the whole
// truncation, so a genuine kernel vector shows up as a singular value of the
// order of its tail mass beyond the column cap.
struct CompressionSpectrum {
    std::vector<double> sigma;        // smallest singular values, ascending
    std::vector<double> edge_weight;  // mass of each singular vector on the deepest column level
    int rows = 0;
    int cols = 0;
    bool dense_path = true;
};

inline CompressionSpectrum compression_spectrum(const std::array<const OperatorMatrix*, 4>& block,
                                                const std::vector<char>& plus, int col_cap_twice,
                                                int dense_cutoff = 1500, int keep = 12)
{
    const OperatorMatrix& b0 = *block[0];
    const int n = b0.dim();
    if (static_cast<int>(plus.size()) != n)
        throw std::invalid_argument("compression_spectrum: flag size mismatch");
    std::vector<int> rowpos, colpos;
    for (int k = 0; k < n; ++k) {
        if (!plus[static_cast<std::size_t>(k)]) continue;
        rowpos.push_back(k);
        if (b0.level_twice(k) <= col_cap_twice) colpos.push_back(k);
    }
    const int R = static_cast<int>(rowpos.size());
    const int C = static_cast<int>(colpos.size());
    if (C == 0 || R < C) throw std::invalid_argument("compression_spectrum: empty compression");
    int deepest = 0;
    for (int k : colpos) deepest = std::max(deepest, b0.level_twice(k));
    std::vector<int> rmap(static_cast<std::size_t>(n), -1);
    for (int r = 0; r < R; ++r) rmap[static_cast<std::size_t>(rowpos[r])] = r;

    std::vector<Eigen::Triplet<double>> trip;
    for (int br = 0; br < 2; ++br)
        for (int bc = 0; bc < 2; ++bc) {
            const OperatorMatrix& m = *block[static_cast<std::size_t>(2 * br + bc)];
            for (int c = 0; c < C; ++c)
                for (const auto& [row, v] : m.column(colpos[c])) {
                    const int r = rmap[static_cast<std::size_t>(row)];
                    if (r >= 0) trip.emplace_back(br * R + r, bc * C + c, v);
                }
        }

    CompressionSpectrum out;
    out.rows = 2 * R;
    out.cols = 2 * C;
    const int kept = std::min(keep, 2 * C);
    auto record = [&](const Eigen::VectorXd& sigma_asc, const Eigen::MatrixXd& vecs) {
        for (int i = 0; i < kept; ++i) {
            out.sigma.push_back(sigma_asc[i]);
            double w = 0.0;
            for (int j = 0; j < 2 * C; ++j)
                if (b0.level_twice(colpos[j % C]) == deepest) w += vecs(j, i) * vecs(j, i);
            out.edge_weight.push_back(w / vecs.col(i).squaredNorm());
        }
    };

    if (std::max(out.rows, out.cols) <= dense_cutoff) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(out.rows, out.cols);
        for (const auto& t : trip) a(t.row(), t.col()) += t.value();
        Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinV);
        const Eigen::VectorXd desc = svd.singularValues();
        Eigen::VectorXd asc(desc.size());
        Eigen::MatrixXd vecs(out.cols, kept);
        for (int i = 0; i < desc.size(); ++i) asc[i] = desc[desc.size() - 1 - i];
        for (int i = 0; i < kept; ++i) vecs.col(i) = svd.matrixV().col(desc.size() - 1 - i);
        record(asc, vecs);
        return out;
    }

    out.dense_path = false;
    Eigen::SparseMatrix<double> a(out.rows, out.cols);
    a.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseMatrix<double> gram = (Eigen::SparseMatrix<double>(a.transpose()) * a).pruned();
    double diag_scale = 0.0;
    for (int k = 0; k < gram.outerSize(); ++k) diag_scale = std::max(diag_scale, gram.coeff(k, k));
    Eigen::SparseMatrix<double> shifted = gram;
    for (int k = 0; k < shifted.rows(); ++k) shifted.coeffRef(k, k) += 1e-13 * diag_scale;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(shifted);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("compression_spectrum: factorization failed");

    const int width = std::min(std::max(16, kept), out.cols);
    Eigen::MatrixXd basis(out.cols, width);
    for (int j = 0; j < width; ++j)
        for (int i = 0; i < out.cols; ++i)
            basis(i, j) = std::cos(static_cast<double>((i + 1) * (j + 1)) /
                                   static_cast<double>(out.cols));
    basis = Eigen::HouseholderQR<Eigen::MatrixXd>(basis).householderQ() *
            Eigen::MatrixXd::Identity(out.cols, width);
    for (int it = 0; it < 100; ++it) {
        Eigen::MatrixXd next = ldlt.solve(basis);
        basis = Eigen::HouseholderQR<Eigen::MatrixXd>(next).householderQ() *
                Eigen::MatrixXd::Identity(out.cols, width);
    }
    const Eigen::MatrixXd rayleigh = basis.transpose() * (gram * basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (rayleigh + rayleigh.transpose()));
    Eigen::VectorXd asc(width);
    for (int i = 0; i < width; ++i) asc[i] = std::sqrt(std::max(es.eigenvalues()[i], 0.0));
    const Eigen::MatrixXd ritz = basis * es.eigenvectors();
    record(asc, ritz.leftCols(kept));
    return out;
}

struct IndexInputs {
    std::array<OperatorMatrix, 4> forward;  // row-major blocks of the corepresentation
    std::array<OperatorMatrix, 4> reverse;  // row-major blocks of its adjoint
    std::vector<char> plus;
    int col_cap_twice = 0;
};

inline IndexInputs index_inputs(const OperatorMatrix& a, const OperatorMatrix& b,
                                const OperatorMatrix& astar, const OperatorMatrix& bstar,
                                std::vector<char> plus, double q)
{
    IndexInputs in{{a, (-q) * bstar, b, astar},
                   {a.adjoint(), b.adjoint(), (-q) * bstar.adjoint(), astar.adjoint()},
                   std::move(plus),
                   0};
    int cap = a.nmax_twice();
    for (const auto& m : in.forward) cap = std::min(cap, m.clean_below_twice());
    for (const auto& m : in.reverse) cap = std::min(cap, m.clean_below_twice());
    in.col_cap_twice = cap;
    return in;
}

inline IndexInputs index_inputs_pw(const PWBasis& b, const EigenvalueModel& m, double q)
{
    std::vector<char> plus(static_cast<std::size_t>(b.dim()), 0);
    for (int k = 0; k < b.dim(); ++k)
        plus[static_cast<std::size_t>(k)] = m.eigenvalue_twice(b.at(k)) > 0 ? 1 : 0;
    return index_inputs(hat_generator(Gen::Alpha, b, q), hat_generator(Gen::Beta, b, q),
                        hat_generator(Gen::AlphaStar, b, q), hat_generator(Gen::BetaStar, b, q),
                        std::move(plus), q);
}

inline IndexInputs index_inputs_dlssv(const DlssvBasis& s, double q)
{
    std::vector<char> plus(static_cast<std::size_t>(s.dim()), 0);
    for (int k = 0; k < s.dim(); ++k)
        plus[static_cast<std::size_t>(k)] = s.at(k).sector == Sector::Up ? 1 : 0;
    return index_inputs(pi_prime(Gen::Alpha, s, q), pi_prime(Gen::Beta, s, q),
                        pi_prime(Gen::AlphaStar, s, q), pi_prime(Gen::BetaStar, s, q),
                        std::move(plus), q);
}

struct IndexPairing {
    CompressionSpectrum forward;
    CompressionSpectrum reverse;
    double locality = 0.5;

    static int kernel_count(const CompressionSpectrum& s, double tau, double locality)
    {
        int k = 0;
        for (std::size_t i = 0; i < s.sigma.size(); ++i)
            if (s.sigma[i] < tau && s.edge_weight[i] < locality) ++k;
        return k;
    }
    static double largest_kernel_sigma(const CompressionSpectrum& s, double tau, double locality)
    {
        double worst = 0.0;
        for (std::size_t i = 0; i < s.sigma.size(); ++i)
            if (s.sigma[i] < tau && s.edge_weight[i] < locality)
                worst = std::max(worst, s.sigma[i]);
        return worst;
    }
    static double gap_above(const CompressionSpectrum& s, double tau)
    {
        for (double v : s.sigma)
            if (v >= tau) return v;
        return std::numeric_limits<double>::infinity();
    }

    int index_at(double tau) const
    {
        return kernel_count(forward, tau, locality) - kernel_count(reverse, tau, locality);
    }
    bool stable_over(const std::vector<double>& taus) const
    {
        if (taus.empty()) return true;
        const int first = index_at(taus.front());
        for (double t : taus)
            if (index_at(t) != first) return false;
        return true;
    }
};

inline IndexPairing index_pairing(const IndexInputs& in, int dense_cutoff = 1500, int keep = 12)
{
    IndexPairing p;
    p.forward = compression_spectrum(
        {&in.forward[0], &in.forward[1], &in.forward[2], &in.forward[3]}, in.plus,
        in.col_cap_twice, dense_cutoff, keep);
    p.reverse = compression_spectrum(
        {&in.reverse[0], &in.reverse[1], &in.reverse[2], &in.reverse[3]}, in.plus,
        in.col_cap_twice, dense_cutoff, keep);
    return p;
}

}  // namespace suq2
