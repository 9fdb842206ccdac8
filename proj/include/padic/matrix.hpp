#pragma once

#include "padic/scalars.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <span>
#include <vector>

namespace padic {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) return false;
  return true;
}

template <typename Scalar>
Matrix<Scalar> commutator(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  return a * b - b * a;
}

/// Smallest k >= 1 with m^k == 0, or 0 when m is not nilpotent. Powers are
/// tried up to the dimension.
int nilpotency_index(const RationalMatrix& m);

bool is_nilpotent(const RationalMatrix& m);

/// Sup norm of the entries (minimum valuation).
NormExp matrix_norm(const RationalMatrix& m, const Prime& p);

/// Reduced row echelon form; returns the pivot columns.
std::vector<Eigen::Index> row_reduce(RationalMatrix& m);

int rank(RationalMatrix m);

/// Columns form a basis of the null space.
RationalMatrix kernel(const RationalMatrix& m);

/// Rows form a basis of the row space.
RationalMatrix row_basis(const RationalMatrix& m);

/// Exact inverse; throws std::domain_error when singular.
RationalMatrix inverse(const RationalMatrix& m);

/// Columns of a basis of the joint kernel of the given matrices.
RationalMatrix joint_kernel(std::span<const RationalMatrix> ms);

/// True when the columns of v lie in the column span of basis.
bool in_span(const RationalMatrix& basis, const RationalMatrix& v);

}  // namespace padic
