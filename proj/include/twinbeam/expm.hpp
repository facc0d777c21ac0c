#ifndef TWINBEAM_EXPM_HPP
#define TWINBEAM_EXPM_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "twinbeam/types.hpp"

namespace twinbeam {

/// Action of a matrix exponential, w = exp(t A) v, by scaling and a truncated
/// Taylor series per substep (the usual way to exponentiate a large sparse
/// generator onto a single vector without forming exp(t A)).
///
/// The number of substeps follows the 1-norm of t A after shifting out the
/// mean diagonal, which keeps each substep's series short and well-conditioned.
template <typename Real>
VectorXc<Real> expm_apply(const SparseMatrixc<Real>& A, VectorXc<Real> v,
                          Complex<Real> t) {
  using C = Complex<Real>;
  const Eigen::Index n = A.rows();
  if (A.cols() != n || v.size() != n)
    throw std::invalid_argument("expm_apply: dimension mismatch");
  if (n == 0) return v;

  const C mu = A.diagonal().sum() * t / Real(n);

  // one-norm of t A - mu I
  VectorX<Real> colsum = VectorX<Real>::Zero(n);
  for (Eigen::Index k = 0; k < A.outerSize(); ++k) {
    for (typename SparseMatrixc<Real>::InnerIterator it(A, k); it; ++it) {
      C val = t * it.value();
      if (it.row() == it.col()) val -= mu;
      colsum(it.col()) += std::abs(val);
    }
  }
  const Real norm1 = colsum.size() ? colsum.maxCoeff() : Real(0);

  const Real theta = Real(1);  // series length ~20 at double precision
  const std::int64_t steps =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(norm1 / theta)));
  const C tstep = t / Real(steps);
  const C mustep = mu / Real(steps);
  const int max_terms = 64;
  const Real eps = std::numeric_limits<Real>::epsilon();

  VectorXc<Real> term(n), w(n);
  for (std::int64_t s = 0; s < steps; ++s) {
    term = v;
    w = v;
    int small_in_a_row = 0;
    for (int k = 1; k <= max_terms; ++k) {
      term = (A * term * tstep - mustep * term) / Real(k);
      w += term;
      if (term.norm() <= eps * w.norm()) {
        if (++small_in_a_row == 2) break;
      } else {
        small_in_a_row = 0;
      }
    }
    v = std::exp(mustep) * w;
  }
  return v;
}

}  // namespace twinbeam

#endif
