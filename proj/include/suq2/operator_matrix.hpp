#pragma once

#include "suq2/basis.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace suq2 {

// Sparse numeric operator on one of the enumerated spaces.  Columns are kept
// as ordered maps; rows and columns share the same enumeration.
//
// Truncation bookkeeping: shift_twice bounds how many half-levels an entry
// can move a vector; columns whose source level (doubled) is at most
// clean_below_twice are complete, i.e. agree with the untruncated operator.
// Compositions and adjoints propagate both fields conservatively.
class OperatorMatrix {
public:
    OperatorMatrix(SpaceTag space, std::vector<int> level_twice, int nmax_twice,
                   int shift_twice = 0)
        : space_(space),
          levels_(std::move(level_twice)),
          nmax_twice_(nmax_twice),
          shift_twice_(shift_twice),
          clean_below_twice_(nmax_twice - shift_twice),
          cols_(levels_.size())
    {
    }

    static std::vector<int> levels_of(const PWBasis& b)
    {
        std::vector<int> l(b.dim());
        for (int k = 0; k < b.dim(); ++k) l[k] = b.level(k).twice();
        return l;
    }
    static std::vector<int> levels_of(const DlssvBasis& b)
    {
        std::vector<int> l(b.dim());
        for (int k = 0; k < b.dim(); ++k) l[k] = b.at(k).n.twice();
        return l;
    }
    static std::vector<int> levels_of(const DoubledPWBasis& b)
    {
        std::vector<int> l(b.dim());
        for (int k = 0; k < b.dim(); ++k) l[k] = b.at(k).inner.n.twice();
        return l;
    }

    int dim() const { return static_cast<int>(levels_.size()); }
    SpaceTag space() const { return space_; }
    int level_twice(int k) const { return levels_.at(k); }
    int nmax_twice() const { return nmax_twice_; }
    int shift_twice() const { return shift_twice_; }
    int clean_below_twice() const { return clean_below_twice_; }

    void set_ledger(int shift_twice, int clean_below_twice)
    {
        shift_twice_ = shift_twice;
        clean_below_twice_ = clean_below_twice;
    }

    void add(int row, int col, double v)
    {
        if (v == 0.0) return;
        auto& c = cols_.at(col);
        auto [it, fresh] = c.try_emplace(row, v);
        if (!fresh) {
            it->second += v;
            if (it->second == 0.0) c.erase(it);
        }
    }
    void set(int row, int col, double v)
    {
        auto& c = cols_.at(col);
        if (v == 0.0)
            c.erase(row);
        else
            c[row] = v;
    }
    double entry(int row, int col) const
    {
        const auto& c = cols_.at(col);
        auto it = c.find(row);
        return it == c.end() ? 0.0 : it->second;
    }
    const std::map<int, double>& column(int col) const { return cols_.at(col); }

    long nonzeros() const
    {
        long n = 0;
        for (const auto& c : cols_) n += static_cast<long>(c.size());
        return n;
    }

    Eigen::VectorXd apply(const Eigen::VectorXd& v) const
    {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
        for (int col = 0; col < dim(); ++col) {
            const double x = v[col];
            if (x == 0.0) continue;
            for (const auto& [row, a] : cols_[col]) out[row] += a * x;
        }
        return out;
    }
    Eigen::VectorXd apply_transposed(const Eigen::VectorXd& v) const
    {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
        for (int col = 0; col < dim(); ++col) {
            double s = 0.0;
            for (const auto& [row, a] : cols_[col]) s += a * v[row];
            out[col] = s;
        }
        return out;
    }

    friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b)
    {
        OperatorMatrix r = a.check_same(b);
        r.shift_twice_ = std::max(a.shift_twice_, b.shift_twice_);
        r.clean_below_twice_ = std::min(a.clean_below_twice_, b.clean_below_twice_);
        for (int col = 0; col < b.dim(); ++col)
            for (const auto& [row, v] : b.cols_[col]) r.add(row, col, v);
        return r;
    }
    friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b)
    {
        OperatorMatrix r = a.check_same(b);
        r.shift_twice_ = std::max(a.shift_twice_, b.shift_twice_);
        r.clean_below_twice_ = std::min(a.clean_below_twice_, b.clean_below_twice_);
        for (int col = 0; col < b.dim(); ++col)
            for (const auto& [row, v] : b.cols_[col]) r.add(row, col, -v);
        return r;
    }
    friend OperatorMatrix operator*(double s, const OperatorMatrix& a)
    {
        OperatorMatrix r(a.space_, a.levels_, a.nmax_twice_);
        r.set_ledger(a.shift_twice_, a.clean_below_twice_);
        if (s != 0.0)
            for (int col = 0; col < a.dim(); ++col)
                for (const auto& [row, v] : a.cols_[col]) r.add(row, col, s * v);
        return r;
    }

    // a.composed_with(b) applies b first.
    OperatorMatrix composed_with(const OperatorMatrix& b) const
    {
        check_same(b);
        OperatorMatrix r(space_, levels_, nmax_twice_);
        r.set_ledger(shift_twice_ + b.shift_twice_,
                     std::min(b.clean_below_twice_, clean_below_twice_ - b.shift_twice_));
        for (int col = 0; col < dim(); ++col)
            for (const auto& [mid, vb] : b.cols_[col])
                for (const auto& [row, va] : cols_[mid]) r.add(row, col, va * vb);
        return r;
    }

    OperatorMatrix adjoint() const
    {
        OperatorMatrix r(space_, levels_, nmax_twice_);
        r.set_ledger(shift_twice_,
                     std::min(clean_below_twice_, nmax_twice_ - shift_twice_));
        for (int col = 0; col < dim(); ++col)
            for (const auto& [row, v] : cols_[col]) r.set(col, row, v);
        return r;
    }

    template <typename F>
    static OperatorMatrix diagonal(SpaceTag space, std::vector<int> levels, int nmax_twice, F f)
    {
        OperatorMatrix r(space, std::move(levels), nmax_twice, 0);
        for (int k = 0; k < r.dim(); ++k) r.set(k, k, f(k));
        return r;
    }

    Eigen::MatrixXd dense() const
    {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim(), dim());
        for (int col = 0; col < dim(); ++col)
            for (const auto& [row, v] : cols_[col]) m(row, col) = v;
        return m;
    }

    // Rows and columns restricted by level cutoffs (doubled values); order of
    // the surviving indices follows the enumeration.
    Eigen::MatrixXd dense_section(int max_row_level_twice, int max_col_level_twice) const
    {
        const std::vector<int> rows = levels_up_to(max_row_level_twice);
        std::vector<int> rowpos(dim(), -1);
        for (std::size_t r = 0; r < rows.size(); ++r) rowpos[rows[r]] = static_cast<int>(r);
        const std::vector<int> cols = levels_up_to(max_col_level_twice);
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows.size(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (const auto& [row, v] : cols_[cols[c]])
                if (rowpos[row] >= 0) m(rowpos[row], static_cast<int>(c)) = v;
        return m;
    }

    // All rows against the columns of one source level.
    Eigen::MatrixXd source_level_block(int level_twice) const
    {
        std::vector<int> cols;
        for (int k = 0; k < dim(); ++k)
            if (levels_[k] == level_twice) cols.push_back(k);
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (const auto& [row, v] : cols_[cols[c]]) m(row, static_cast<int>(c)) = v;
        return m;
    }

    double max_abs() const
    {
        double m = 0.0;
        for (const auto& c : cols_)
            for (const auto& [row, v] : c) m = std::max(m, std::abs(v));
        return m;
    }

    // Largest singular value.  Dense solve for small matrices, power
    // iteration on T^T T (deterministic start) for large ones.
    double operator_norm() const
    {
        if (dim() == 0) return 0.0;
        if (dim() <= 700) return dense_spectral_norm(dense());
        Eigen::VectorXd v = Eigen::VectorXd::Ones(dim());
        v.normalize();
        double lambda = 0.0;
        for (int it = 0; it < 2000; ++it) {
            Eigen::VectorXd w = apply_transposed(apply(v));
            const double nw = w.norm();
            if (nw == 0.0) return 0.0;
            const double next = v.dot(w);
            v = w / nw;
            if (it > 10 && std::abs(next - lambda) <= 1e-13 * std::abs(next)) {
                lambda = next;
                break;
            }
            lambda = next;
        }
        return std::sqrt(std::max(lambda, 0.0));
    }

    static double dense_spectral_norm(const Eigen::MatrixXd& a)
    {
        if (a.rows() == 0 || a.cols() == 0) return 0.0;
        if (a.rows() * a.cols() <= 250000) {
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
            return svd.singularValues()[0];
        }
        const Eigen::MatrixXd g = a.transpose() * a;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
        return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
    }

    // Operator norm of each source level's complete column block.
    std::vector<double> per_source_level_norms() const
    {
        std::vector<double> out;
        for (int t = 0; t <= nmax_twice_; ++t)
            out.push_back(dense_spectral_norm(source_level_block(t)));
        return out;
    }

private:
    OperatorMatrix check_same(const OperatorMatrix& b) const
    {
        if (space_ != b.space_ || levels_ != b.levels_)
            throw std::invalid_argument("operator space mismatch");
        return *this;
    }

    std::vector<int> levels_up_to(int max_twice) const
    {
        std::vector<int> keep;
        for (int k = 0; k < dim(); ++k)
            if (levels_[k] <= max_twice) keep.push_back(k);
        return keep;
    }

    SpaceTag space_;
    std::vector<int> levels_;
    int nmax_twice_;
    int shift_twice_;
    int clean_below_twice_;
    std::vector<std::map<int, double>> cols_;
};

// Spectral norm of the columns the ledger marks as complete, with all rows
// kept.  This is the honest residual size for identities checked after
// truncation.
inline double clean_columns_norm(const OperatorMatrix& m)
{
    return OperatorMatrix::dense_spectral_norm(
        m.dense_section(m.nmax_twice(), m.clean_below_twice()));
}

} // namespace suq2
