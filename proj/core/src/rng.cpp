#include "mwtl/rng.hpp"

#include <cmath>
#include <numbers>

namespace mwtl {

std::uint64_t Rng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
}

cplx Rng::cnormal() {
    double re = normal();
    double im = normal();
    return {re, im};
}

Vec Rng::unit_vector(int m) {
    Vec v(m);
    for (int i = 0; i < m; ++i) v[i] = cnormal();
    double nrm = v.norm();
    while (nrm < 1e-12) {
        for (int i = 0; i < m; ++i) v[i] = cnormal();
        nrm = v.norm();
    }
    return v / nrm;
}

Mat Rng::hermitian_pd(int m, double spread) {
    Mat g(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) g(i, j) = cnormal();
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Eigen::VectorXd lam(m);
    for (int i = 0; i < m; ++i) lam[i] = std::exp(std::log(spread) * (uniform() - 0.5));
    return q * lam.asDiagonal() * q.adjoint();
}

std::vector<Vec> direction_set(int m, int extra, std::uint64_t seed) {
    std::vector<Vec> dirs;
    dirs.reserve(m + extra);
    for (int i = 0; i < m; ++i) {
        Vec e = Vec::Zero(m);
        e[i] = 1.0;
        dirs.push_back(e);
    }
    Rng rng(seed);
    for (int i = 0; i < extra; ++i) dirs.push_back(rng.unit_vector(m));
    return dirs;
}

}  // namespace mwtl
