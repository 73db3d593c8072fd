#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mwtl/rng.hpp"
#include "mwtl/weights.hpp"

using namespace mwtl;

namespace {

WeightSpec diag_power(std::vector<double> exps) {
    WeightSpec s;
    s.kind = WeightSpec::Kind::diagonal_power;
    s.exponents = std::move(exps);
    return s;
}

}  // namespace

TEST_CASE("identity weight has bracket one for all p") {
    TorusGrid g(1, 4);
    MatrixWeightField w = generate_weight(WeightSpec{}, g, 2);
    for (double p : {0.5, 1.0, 2.0, 4.0}) {
        ApReport rep = ap_characteristic(w, p);
        CHECK(rep.value == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("constant weight also has bracket one") {
    TorusGrid g(1, 4);
    Rng rng(3);
    WeightSpec s;
    s.kind = WeightSpec::Kind::constant;
    s.matrix = rng.hermitian_pd(2);
    MatrixWeightField w = generate_weight(s, g, 2);
    CHECK(ap_characteristic(w, 2.0).value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(ap_characteristic(w, 0.5).value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("diagonal power weight hand values") {
    TorusGrid g(1, 4);
    MatrixWeightField w = generate_weight(diag_power({1.0, 0.0}), g, 2);
    std::size_t site = 4;  // x = 1/4
    CHECK(w.value(site)(0, 0).real() == doctest::Approx(0.25));
    CHECK(w.value(site)(1, 1).real() == doctest::Approx(1.0));
    // singular sample replaced by (spacing/2)^a
    CHECK(w.value(0)(0, 0).real() == doctest::Approx(1.0 / 32));
}

TEST_CASE("inadmissible exponent is rejected") {
    TorusGrid g(1, 4);
    CHECK_THROWS_WITH(generate_weight(diag_power({-1.0, 0.0}), g, 2),
                      doctest::Contains("inadmissible"));
    CHECK_NOTHROW(generate_weight(diag_power({-0.9, 0.0}), g, 2));
}

TEST_CASE("off grid center is rejected") {
    TorusGrid g(1, 4);
    WeightSpec s = diag_power({0.5, 0.0});
    s.center = {0.13, 0.0};
    CHECK_THROWS(generate_weight(s, g, 2));
}

TEST_CASE("bracket is at least one and grows with singularity strength") {
    TorusGrid g(1, 6);
    double prev = 1.0;
    for (double a : {0.25, 0.5, 0.9}) {
        MatrixWeightField w = generate_weight(diag_power({a, 0.0}), g, 2);
        double v = ap_characteristic(w, 2.0).value;
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
}

TEST_CASE("m=1 matrix bracket matches the scalar bracket") {
    TorusGrid g(1, 5);
    WeightSpec s;
    s.kind = WeightSpec::Kind::scalar_power;
    s.exponents = {0.5};
    MatrixWeightField w = generate_weight(s, g, 1);
    RealField scalar(g);
    for (std::size_t i = 0; i < scalar.size(); ++i) scalar[i] = w.value(i)(0, 0).real();
    CHECK(ap_characteristic(w, 2.0).value ==
          doctest::Approx(scalar_ap_characteristic(scalar, 2.0)).epsilon(1e-9));
}

TEST_CASE("scalar p=1 degenerate weight throws") {
    TorusGrid g(1, 4);
    RealField zero(g, 0.0);
    CHECK_THROWS_WITH(scalar_ap_characteristic(zero, 1.0), doctest::Contains("degenerate"));
}

TEST_CASE("duality: trivial for constant weights, finite in general") {
    TorusGrid g(1, 5);
    MatrixWeightField id = generate_weight(WeightSpec{}, g, 2);
    auto [lhs, rhs] = duality_check(id, 2.0);
    CHECK(lhs == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rhs == doctest::Approx(1.0).epsilon(1e-9));

    MatrixWeightField w = generate_weight(diag_power({0.5, 0.0}), g, 2);
    auto [v, vd] = duality_check(w, 1.5);
    CHECK(std::isfinite(v));
    CHECK(std::isfinite(vd));
    CHECK(v >= 1.0 - 1e-9);
    CHECK(vd >= 1.0 - 1e-9);
}

TEST_CASE("rotating weight is pointwise hermitian pd and non commuting") {
    TorusGrid g(1, 4);
    WeightSpec s;
    s.kind = WeightSpec::Kind::rotating;
    s.exponents = {0.5, -0.25};
    s.rate = 1.0;
    MatrixWeightField w = generate_weight(s, g, 2);
    for (std::size_t i = 0; i < g.total_samples(); ++i)
        CHECK_NOTHROW(require_hermitian_pd(w.value(i)));
    Mat ab = w.value(1) * w.value(2);
    Mat ba = w.value(2) * w.value(1);
    CHECK(operator_norm(ab - ba) > 1e-6);
}

TEST_CASE("scalar_reduction wants unit directions") {
    TorusGrid g(1, 4);
    MatrixWeightField w = generate_weight(WeightSpec{}, g, 2);
    Vec y = Vec::Zero(2);
    y(0) = 2.0;
    CHECK_THROWS(scalar_reduction(w, 2.0, y));
    y(0) = 1.0;
    RealField r = scalar_reduction(w, 2.0, y);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i] == doctest::Approx(1.0));
}

TEST_CASE("doubling exponent of the identity is the dimension") {
    for (int n : {1, 2}) {
        TorusGrid g(n, 4);
        MatrixWeightField w = generate_weight(WeightSpec{}, g, n == 1 ? 2 : 1);
        CHECK(doubling_exponent(w, 2.0) == doctest::Approx(n).epsilon(1e-9));
    }
}

TEST_CASE("weight spec json round trip") {
    WeightSpec s;
    s.kind = WeightSpec::Kind::rotating;
    s.exponents = {0.5, -0.25};
    s.rate = 2.0;
    WeightSpec back = WeightSpec::from_json(s.to_json());
    CHECK(back.kind == s.kind);
    CHECK(back.exponents == s.exponents);
    CHECK(back.rate == doctest::Approx(s.rate));

    Rng rng(1);
    WeightSpec c;
    c.kind = WeightSpec::Kind::constant;
    c.matrix = rng.hermitian_pd(2);
    WeightSpec cb = WeightSpec::from_json(c.to_json());
    CHECK(operator_norm(cb.matrix - c.matrix) < 1e-12);
}

TEST_CASE("ap report csv has the expected header") {
    TorusGrid g(1, 4);
    MatrixWeightField w = generate_weight(WeightSpec{}, g, 2);
    ApReport rep = ap_characteristic(w, 2.0);
    std::stringstream ss;
    rep.write_csv(ss);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "level,cube_index,bracket_value");
}
