#pragma once

#include "suq2/qscalar.hpp"

#include <stdexcept>
#include <vector>

namespace suq2 {

using QMatrix = std::vector<std::vector<QScalar>>;
using QVector = std::vector<QScalar>;

// Row-reduce in place over the exact scalar field; returns the rank.
inline int gauss_eliminate(QMatrix& m)
{
    if (m.empty()) return 0;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (!m[r][col].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        const QScalar inv = QScalar(1) / m[rank][col];
        for (int c = col; c < cols; ++c) m[rank][c] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][col].is_zero()) continue;
            const QScalar f = m[r][col];
            for (int c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

inline int exact_rank(QMatrix m) { return gauss_eliminate(m); }

// Solve A x = b; requires the system to be consistent with a unique solution.
inline QVector solve_unique(const QMatrix& a, const QVector& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("shape mismatch");
    if (a.empty()) return {};
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(a[0].size());
    QMatrix aug = a;
    for (int r = 0; r < rows; ++r) aug[r].push_back(b[r]);
    gauss_eliminate(aug);

    QVector x(cols, QScalar(0));
    std::vector<bool> seen(cols, false);
    for (int r = 0; r < rows; ++r) {
        int lead = -1;
        for (int c = 0; c < cols; ++c)
            if (!aug[r][c].is_zero()) {
                lead = c;
                break;
            }
        if (lead < 0) {
            if (!aug[r][cols].is_zero()) throw std::domain_error("inconsistent system");
            continue;
        }
        x[lead] = aug[r][cols];
        seen[lead] = true;
    }
    for (int c = 0; c < cols; ++c)
        if (!seen[c]) throw std::domain_error("underdetermined system");
    return x;
}

} // namespace suq2
