#ifndef TWINBEAM_TYPES_HPP
#define TWINBEAM_TYPES_HPP

#include <complex>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace twinbeam {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using Matrix2c = Eigen::Matrix<Complex<Real>, 2, 2>;

template <typename Real>
using MatrixXc = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using VectorXc = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using VectorX = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

template <typename Real>
using SparseMatrixc = Eigen::SparseMatrix<Complex<Real>>;

}  // namespace twinbeam

#endif
