#pragma once

#include "suq2/algebra.hpp"
#include "suq2/basis.hpp"
#include "suq2/exact_linalg.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace suq2 {

// Orthogonal (not normalized) representative of one matrix-unit vector in the
// state space, with its exact squared length.  The normalized vector is
// rep / sqrt(norm2); keeping the pair avoids square roots in exact work.
struct GnsVector {
    PWIndex label;
    AlgebraElement rep;
    QScalar norm2;
};

// Gram-Schmidt model of the matrix-unit basis.  Words of a fixed bi-weight
// (i, j), listed by increasing degree, are orthogonalized in order; the r-th
// output is the representative of spin n = max(|i|, |j|) + r, gauged so that
// the coefficient of the newly entering word is exactly 1.  Orthogonality
// across different bi-weights is automatic: the state kills every word of
// nonzero weight.
class GnsBasis {
public:
    explicit GnsBasis(Truncation t) : labels_(t) { build(); }

    // Install precomputed vectors (e.g. from a cache).  Only alignment with
    // the label enumeration is checked here; callers wanting more assurance
    // should spot-check orthogonality.
    GnsBasis(Truncation t, std::vector<GnsVector> vecs) : labels_(t), vecs_(std::move(vecs))
    {
        if (static_cast<int>(vecs_.size()) != labels_.dim())
            throw std::invalid_argument("cached basis has wrong size");
        for (int k = 0; k < labels_.dim(); ++k)
            if (!(vecs_[k].label == labels_.at(k)))
                throw std::invalid_argument("cached basis labels misaligned");
        index_classes();
    }

    const PWBasis& labels() const { return labels_; }
    int dim() const { return labels_.dim(); }
    HalfInt nmax() const { return labels_.truncation().nmax; }

    const GnsVector& vec(int pos) const { return vecs_.at(pos); }
    const GnsVector& vec(const PWIndex& x) const { return vecs_.at(labels_.index_of(x)); }

    // Word of bi-weight (i, j) entering at step r: the a-power is forced to
    // -(i+j), the b-excess to i-j, and r counts the extra b b* pairs.
    static Monomial class_word(HalfInt i, HalfInt j, int r)
    {
        if (!(i + j).is_integer()) throw std::invalid_argument("weights of mixed parity");
        const int k = -(i + j).whole();
        const int d = (i - j).whole();
        const int m = r + (d > 0 ? d : 0);
        const int l = r + (d > 0 ? 0 : -d);
        return Monomial{k, m, l};
    }

    // Positions of all vectors of one bi-weight, by increasing spin.
    const std::vector<int>& weight_class(HalfInt i, HalfInt j) const
    {
        static const std::vector<int> empty;
        auto it = classes_.find({i.twice(), j.twice()});
        return it == classes_.end() ? empty : it->second;
    }

    struct Expansion {
        std::map<int, QScalar> coeff;  // position -> coefficient on rep
        AlgebraElement residual;       // component orthogonal to every kept vector
    };

    // Exact orthogonal expansion over the truncated basis.  The residual is
    // the part supported on spins beyond the truncation.
    Expansion expand(const AlgebraElement& u) const
    {
        Expansion out;
        out.residual = u;
        std::map<std::pair<int, int>, bool> seen;
        for (const auto& [m, c] : u.terms()) {
            const auto w = weight(m);
            const std::pair<int, int> key{w.first.twice(), w.second.twice()};
            if (std::exchange(seen[key], true)) continue;
            for (int pos : weight_class(w.first, w.second)) {
                const GnsVector& v = vecs_[pos];
                const QScalar c2 = inner(v.rep, u) / v.norm2;
                if (c2.is_zero()) continue;
                out.coeff[pos] = c2;
                out.residual = out.residual - c2 * v.rep;
            }
        }
        return out;
    }

private:
    void build()
    {
        vecs_.resize(labels_.dim());
        const int tmax = nmax().twice();
        int filled = 0;
        for (int ti = -tmax; ti <= tmax; ++ti)
            for (int tj = -tmax; tj <= tmax; ++tj) {
                if (((ti + tj) % 2 + 2) % 2 != 0) continue;
                const HalfInt i = HalfInt::halves(ti), j = HalfInt::halves(tj);
                const int base = std::max(ti < 0 ? -ti : ti, tj < 0 ? -tj : tj);
                std::vector<const GnsVector*> done;
                for (int r = 0; base + 2 * r <= tmax; ++r) {
                    const HalfInt n = HalfInt::halves(base + 2 * r);
                    const AlgebraElement word{class_word(i, j, r)};
                    AlgebraElement v = word;
                    for (const GnsVector* p : done)
                        v = v - (inner(p->rep, word) / p->norm2) * p->rep;
                    QScalar norm2 = inner(v, v);
                    if (norm2.is_zero()) throw std::logic_error("dependent basis words");
                    const int pos = labels_.index_of({n, i, j});
                    vecs_[pos] = GnsVector{{n, i, j}, std::move(v), std::move(norm2)};
                    done.push_back(&vecs_[pos]);
                    ++filled;
                }
            }
        if (filled != labels_.dim()) throw std::logic_error("weight classes do not cover basis");
        index_classes();
    }

    void index_classes()
    {
        classes_.clear();
        for (int k = 0; k < labels_.dim(); ++k) {
            const PWIndex& x = labels_.at(k);
            classes_[{x.i.twice(), x.j.twice()}].push_back(k);
        }
    }

    PWBasis labels_;
    std::vector<GnsVector> vecs_;
    std::map<std::pair<int, int>, std::vector<int>> classes_;
};

// Linear operator with exact coefficients, written in the unnormalized basis:
// T rep_y = sum_x C[x][y] rep_x.  Adjoints are taken with respect to the
// state inner product, which weights each axis by norm2.
class ExactOperator {
public:
    explicit ExactOperator(const GnsBasis& basis) : basis_(&basis), cols_(basis.dim()) {}

    static ExactOperator identity(const GnsBasis& b)
    {
        ExactOperator t(b);
        for (int k = 0; k < b.dim(); ++k) t.cols_[k][k] = QScalar(1);
        return t;
    }

    const GnsBasis& basis() const { return *basis_; }
    int dim() const { return static_cast<int>(cols_.size()); }

    void add_entry(int row, int col, const QScalar& c)
    {
        if (c.is_zero()) return;
        auto& column = cols_.at(col);
        auto [it, fresh] = column.try_emplace(row, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) column.erase(it);
        }
    }

    QScalar entry(int row, int col) const
    {
        const auto& column = cols_.at(col);
        auto it = column.find(row);
        return it == column.end() ? QScalar(0) : it->second;
    }

    const std::map<int, QScalar>& column(int col) const { return cols_.at(col); }

    bool is_zero() const
    {
        for (const auto& c : cols_)
            if (!c.empty()) return false;
        return true;
    }

    friend ExactOperator operator+(const ExactOperator& a, const ExactOperator& b)
    {
        ExactOperator r = a;
        for (int col = 0; col < b.dim(); ++col)
            for (const auto& [row, c] : b.cols_[col]) r.add_entry(row, col, c);
        return r;
    }
    friend ExactOperator operator-(const ExactOperator& a, const ExactOperator& b)
    {
        ExactOperator r = a;
        for (int col = 0; col < b.dim(); ++col)
            for (const auto& [row, c] : b.cols_[col]) r.add_entry(row, col, -c);
        return r;
    }
    friend ExactOperator operator*(const QScalar& c, const ExactOperator& a)
    {
        ExactOperator r(*a.basis_);
        for (int col = 0; col < a.dim(); ++col)
            for (const auto& [row, k] : a.cols_[col]) r.add_entry(row, col, c * k);
        return r;
    }

    // f.composed_with(g) applies g first.
    ExactOperator composed_with(const ExactOperator& g) const
    {
        ExactOperator r(*basis_);
        for (int col = 0; col < g.dim(); ++col)
            for (const auto& [mid, cg] : g.cols_[col])
                for (const auto& [row, cf] : cols_[mid]) r.add_entry(row, col, cf * cg);
        return r;
    }

    ExactOperator adjoint() const
    {
        ExactOperator r(*basis_);
        for (int col = 0; col < dim(); ++col)
            for (const auto& [row, c] : cols_[col])
                r.add_entry(col, row, c * basis_->vec(row).norm2 / basis_->vec(col).norm2);
        return r;
    }

    bool is_self_adjoint() const
    {
        return (*this - adjoint()).is_zero();
    }

    // Rank over the field of rational functions of q.
    int rank() const
    {
        QMatrix m(dim(), QVector(dim(), QScalar(0)));
        for (int col = 0; col < dim(); ++col)
            for (const auto& [row, c] : cols_[col]) m[row][col] = c;
        return exact_rank(std::move(m));
    }

private:
    const GnsBasis* basis_;
    std::vector<std::map<int, QScalar>> cols_;
};

// Left multiplication by an algebra element, compressed to the truncation:
// components of spin beyond nmax are dropped.
inline ExactOperator exact_multiplication(const GnsBasis& b, const AlgebraElement& a)
{
    ExactOperator t(b);
    for (int col = 0; col < b.dim(); ++col) {
        const auto ex = b.expand(normal_multiply(a, b.vec(col).rep));
        for (const auto& [row, c] : ex.coeff) t.add_entry(row, col, c);
    }
    return t;
}

// Translation by a functional.  Right contraction preserves (n, i), left
// contraction preserves (n, j); either way no component ever leaves its
// level, so the expansion must be exact.
inline ExactOperator exact_translation(const GnsBasis& b, const Functional& rho, Side side)
{
    ExactOperator t(b);
    for (int col = 0; col < b.dim(); ++col) {
        const auto ex = b.expand(convolve(rho, b.vec(col).rep, side));
        if (!ex.residual.is_zero())
            throw std::logic_error("translation left the truncated span");
        for (const auto& [row, c] : ex.coeff) t.add_entry(row, col, c);
    }
    return t;
}

// Rank-one projection onto the invariant cyclic vector.
inline ExactOperator exact_state_projection(const GnsBasis& b)
{
    ExactOperator t(b);
    const int origin = b.labels().index_of({HalfInt(0), HalfInt(0), HalfInt(0)});
    for (int col = 0; col < b.dim(); ++col) {
        t.add_entry(origin, col, haar(b.vec(col).rep));
    }
    return t;
}

} // namespace suq2
