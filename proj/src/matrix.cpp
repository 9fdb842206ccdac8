#include "padic/matrix.hpp"

#include <stdexcept>

namespace padic {

int nilpotency_index(const RationalMatrix& m) {
  const auto n = m.rows();
  if (n == 0) return 1;
  RationalMatrix power = m;
  for (int k = 1; k <= n; ++k) {
    if (is_zero(power)) return k;
    power = power * m;
  }
  return 0;
}

bool is_nilpotent(const RationalMatrix& m) { return nilpotency_index(m) > 0; }

NormExp matrix_norm(const RationalMatrix& m, const Prime& p) {
  NormExp best = NormExp::zero();
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) best = max(best, norm_value(m(i, j), p));
  return best;
}

std::vector<Eigen::Index> row_reduce(RationalMatrix& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    m.row(row).swap(m.row(pivot));
    const Rational lead = m(row, col);
    for (Eigen::Index k = col; k < m.cols(); ++k) m(row, k) /= lead;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational factor = m(r, col);
      for (Eigen::Index k = col; k < m.cols(); ++k) m(r, k) -= factor * m(row, k);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(RationalMatrix m) { return static_cast<int>(row_reduce(m).size()); }

RationalMatrix kernel(const RationalMatrix& m) {
  RationalMatrix reduced = m;
  const auto pivots = row_reduce(reduced);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;

  RationalMatrix basis = RationalMatrix::Zero(m.cols(), m.cols() - static_cast<Eigen::Index>(pivots.size()));
  Eigen::Index out = 0;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, out) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      basis(pivots[r], out) = -reduced(static_cast<Eigen::Index>(r), free);
    ++out;
  }
  return basis;
}

RationalMatrix row_basis(const RationalMatrix& m) {
  RationalMatrix reduced = m;
  const auto pivots = row_reduce(reduced);
  return reduced.topRows(static_cast<Eigen::Index>(pivots.size()));
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix is not square");
  const auto n = m.rows();
  RationalMatrix augmented(n, 2 * n);
  augmented << m, RationalMatrix::Identity(n, n);
  const auto pivots = row_reduce(augmented);
  if (static_cast<Eigen::Index>(pivots.size()) < n || (n > 0 && pivots[static_cast<std::size_t>(n - 1)] >= n))
    throw std::domain_error("inverse: matrix is singular");
  return augmented.rightCols(n);
}

RationalMatrix joint_kernel(std::span<const RationalMatrix> ms) {
  if (ms.empty()) throw std::invalid_argument("joint_kernel: no matrices");
  const auto cols = ms.front().cols();
  Eigen::Index rows = 0;
  for (const auto& m : ms) rows += m.rows();
  RationalMatrix stacked(rows, cols);
  Eigen::Index at = 0;
  for (const auto& m : ms) {
    stacked.middleRows(at, m.rows()) = m;
    at += m.rows();
  }
  return kernel(stacked);
}

bool in_span(const RationalMatrix& basis, const RationalMatrix& v) {
  if (basis.cols() == 0) return is_zero(v);
  if (v.cols() == 0) return true;
  RationalMatrix joined(basis.rows(), basis.cols() + v.cols());
  joined << basis, v;
  return rank(joined) == rank(basis);
}

}  // namespace padic
