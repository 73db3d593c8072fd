#include <doctest.h>

#include <cmath>

#include "mwtl/matrix.hpp"
#include "mwtl/rng.hpp"

using namespace mwtl;

TEST_CASE("operator norm 1x1 is the modulus") {
    Mat a(1, 1);
    a(0, 0) = cplx(3, -4);
    CHECK(operator_norm(a) == doctest::Approx(5.0));
}

TEST_CASE("operator norm of a known 2x2") {
    Mat a = Mat::Zero(2, 2);
    a(0, 0) = 3;
    a(1, 1) = 2;
    CHECK(operator_norm(a) == doctest::Approx(3.0));
    // rank-one uv*: norm = |u| |v|
    Vec u(2), v(2);
    u << cplx(1, 0), cplx(0, 2);
    v << cplx(2, 0), cplx(1, 0);
    Mat r = u * v.adjoint();
    CHECK(operator_norm(r) == doctest::Approx(u.norm() * v.norm()));
}

TEST_CASE("operator norm is unitarily invariant") {
    Rng rng(123);
    Mat a = rng.hermitian_pd(3);
    Mat q = Eigen::HouseholderQR<Mat>(rng.hermitian_pd(3)).householderQ();
    CHECK(operator_norm(q * a * q.adjoint()) == doctest::Approx(operator_norm(a)).epsilon(1e-10));
}

TEST_CASE("matrix power roots and inverses") {
    Rng rng(7);
    Mat a = rng.hermitian_pd(3);
    Mat half = matrix_power(a, 0.5);
    CHECK(operator_norm(half * half - a) < 1e-10 * operator_norm(a));
    Mat inv = matrix_power(a, -1.0);
    CHECK(operator_norm(a * inv - Mat::Identity(3, 3)) < 1e-10);
    Mat third = matrix_power(a, 1.0 / 3);
    CHECK(operator_norm(third * third * third - a) < 1e-9 * operator_norm(a));
}

TEST_CASE("matrix power rejects non positive definite input") {
    Mat a = Mat::Zero(2, 2);
    a(0, 0) = 1;
    a(1, 1) = -1;
    CHECK_THROWS_WITH(matrix_power(a, 0.5), doctest::Contains("positive definite"));
    Mat sing = Mat::Zero(2, 2);
    sing(0, 0) = 1;
    CHECK_THROWS(matrix_power(sing, -1.0));
}

TEST_CASE("hermitian detection") {
    Mat a(2, 2);
    a << cplx(1, 0), cplx(2, 1), cplx(2, -1), cplx(3, 0);
    CHECK(is_hermitian(a));
    a(0, 1) = cplx(2, 1.5);
    CHECK_FALSE(is_hermitian(a));
}

TEST_CASE("random hermitian pd really is pd") {
    Rng rng(99);
    for (int m : {1, 2, 3}) {
        Mat a = rng.hermitian_pd(m);
        CHECK_NOTHROW(require_hermitian_pd(a));
    }
}
