#include "mwtl/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace mwtl {

double operator_norm(const Mat& a) {
    if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
    // largest eigenvalue of A* A, computed Hermitianly
    Eigen::SelfAdjointEigenSolver<Mat> es(a.adjoint() * a, Eigen::EigenvaluesOnly);
    double lam = es.eigenvalues().maxCoeff();
    return std::sqrt(std::max(lam, 0.0));
}

bool is_hermitian(const Mat& a, double tol) {
    double ref = operator_norm(a);
    if (ref == 0.0) return true;
    return operator_norm(Mat(a - a.adjoint())) <= tol * ref;
}

Mat matrix_power(const Mat& a, double alpha) {
    if (!is_hermitian(a)) throw std::invalid_argument("matrix_power: not Hermitian");
    Mat sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(sym);
    const auto& lam = es.eigenvalues();
    double lam_max = lam.maxCoeff();
    if (lam_max <= 0.0 || lam.minCoeff() <= 1e-12 * lam_max)
        throw std::invalid_argument("not positive definite");
    Eigen::VectorXd plam(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) plam[i] = std::pow(lam[i], alpha);
    return es.eigenvectors() * plam.asDiagonal() * es.eigenvectors().adjoint();
}

void require_hermitian_pd(const Mat& a) {
    if (!is_hermitian(a)) throw std::invalid_argument("not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (a + a.adjoint())), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("not positive definite");
}

}  // namespace mwtl
