#pragma once

#include <Eigen/Dense>
#include <complex>

namespace mwtl {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Largest singular value. Specializes the 1x1 case to |a|.
double operator_norm(const Mat& a);

bool is_hermitian(const Mat& a, double tol = 1e-10);

/// Spectral power A^alpha of a Hermitian positive definite matrix.
/// The input is symmetrized as (A + A*)/2 when within the Hermitian
/// tolerance; eigenvalues below 1e-12 * lambda_max are rejected.
Mat matrix_power(const Mat& a, double alpha);

/// Validates Hermitian positive definiteness (throws on failure).
void require_hermitian_pd(const Mat& a);

}  // namespace mwtl
