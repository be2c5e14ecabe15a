#include "qmap/linalg.hpp"

#include <stdexcept>

namespace qmap {

QMat to_qmat(const IntMat& m) {
    QMat out;
    out.reserve(m.size());
    for (const auto& row : m) out.push_back(to_qvec(row));
    return out;
}

QMat transpose(const QMat& m) {
    if (m.empty()) return {};
    QMat out(m[0].size(), QVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) out[j][i] = m[i][j];
    return out;
}

QVec mat_vec(const QMat& m, const QVec& v) {
    QVec out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < m[i].size(); ++j) acc += m[i][j] * v[j];
        out[i] = acc;
    }
    return out;
}

QMat mat_mul(const QMat& a, const QMat& b) {
    if (a.empty()) return {};
    std::size_t inner = b.size();
    std::size_t cols = b.empty() ? 0 : b[0].size();
    QMat out(a.size(), QVec(cols));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (is_zero(a[i][k])) continue;
            for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

QMat identity(std::size_t n) {
    QMat out(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
    return out;
}

std::vector<std::size_t> rref(QMat& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && is_zero(m[p][c])) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        Rational inv = 1 / m[row][c];
        for (std::size_t j = c; j < cols; ++j) m[row][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || is_zero(m[i][c])) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

std::size_t rank(QMat m) { return rref(m).size(); }

Rational determinant(QMat m) {
    std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(m[p][c])) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (is_zero(m[i][c])) continue;
            Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

std::optional<QMat> inverse(const QMat& m) {
    std::size_t n = m.size();
    if (n == 0) return QMat{};
    QMat aug(n, QVec(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw std::invalid_argument("inverse of a non-square matrix");
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    QMat out(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
    return out;
}

std::vector<QVec> nullspace(const QMat& m) {
    if (m.empty()) return {};
    QMat r = m;
    std::size_t cols = r[0].size();
    auto piv = rref(r);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<QVec> out;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        QVec v(cols);
        v[free] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r[i][free];
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<QVec> solve_independent(const std::vector<QVec>& columns, const QVec& target) {
    std::size_t k = columns.size();
    std::size_t n = target.size();
    QMat aug(n, QVec(k + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug[i][j] = columns[j][i];
        aug[i][k] = target[i];
    }
    auto piv = rref(aug);
    // Independent and consistent exactly when the pivots are the first k columns.
    if (piv.size() != k || (k > 0 && piv.back() != k - 1)) return std::nullopt;
    QVec out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = aug[i][k];
    return out;
}

}  // namespace qmap
