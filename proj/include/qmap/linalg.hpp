#pragma once

// Small dense exact linear algebra over Q. Matrices are row-major.

#include <optional>
#include <vector>

#include "qmap/rational.hpp"

namespace qmap {

using QMat = std::vector<QVec>;

QMat to_qmat(const IntMat& m);
QMat transpose(const QMat& m);
QVec mat_vec(const QMat& m, const QVec& v);
QMat mat_mul(const QMat& a, const QMat& b);
QMat identity(std::size_t n);

/// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(QMat& m);

std::size_t rank(QMat m);
Rational determinant(QMat m);
std::optional<QMat> inverse(const QMat& m);

/// Basis of {x : m x = 0}.
std::vector<QVec> nullspace(const QMat& m);

/// Coefficients c with sum_i c_i columns[i] = target, if the target lies in
/// the span and the columns are linearly independent.
std::optional<QVec> solve_independent(const std::vector<QVec>& columns, const QVec& target);

}  // namespace qmap
