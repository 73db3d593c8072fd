#include <doctest.h>

#include <cmath>

#include "mwtl/corpus.hpp"
#include "mwtl/littlewood_paley.hpp"

using namespace mwtl;

TEST_CASE("profile construction validates its inputs") {
    CHECK_THROWS(AnalysisProfile(2.0, 0.5, 0, 4));
    CHECK_THROWS(AnalysisProfile(0.5, 1.5, 0, 4));  // ratio != 4
    CHECK_THROWS(AnalysisProfile(0.5, 2.0, 2, 3));  // window too narrow
    CHECK_NOTHROW(AnalysisProfile(0.5, 2.0, 0, 4));
}

TEST_CASE("square tiling sums to one on the covered annulus") {
    AnalysisProfile prof(0.5, 2.0, 0, 6);
    for (double t = prof.covered_lo(); t <= prof.covered_hi(); t *= 1.0371) {
        double acc = 0;
        for (int j = prof.j_min(); j <= prof.j_max(); ++j) {
            double s = prof.sigma(j, t);
            acc += s * s;
        }
        CHECK(acc == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("profile is supported in its annulus only") {
    AnalysisProfile prof(0.5, 2.0, 1, 4);
    CHECK(prof.g(0.49) == 0.0);
    CHECK(prof.g(2.01) == 0.0);
    CHECK(prof.g(1.0) > 0.0);
    CHECK(prof.sigma(0, 1.0) == 0.0);  // outside the scale window
    CHECK(prof.sigma(2, 4.0) > 0.0);
}

TEST_CASE("nyquist guard") {
    TorusGrid g(1, 6);  // N/2 = 32
    CHECK_THROWS_WITH(make_profile(0.5, 2.0, 0, 4, g), doctest::Contains("aliasing"));
    CHECK_NOTHROW(make_profile(0.5, 2.0, 0, 3, g));
}

TEST_CASE("profile json round trip") {
    AnalysisProfile prof(0.5, 2.0, 1, 5);
    AnalysisProfile back = AnalysisProfile::from_json(prof.to_json());
    CHECK(back.c1() == doctest::Approx(prof.c1()));
    CHECK(back.c2() == doctest::Approx(prof.c2()));
    CHECK(back.j_min() == prof.j_min());
    CHECK(back.j_max() == prof.j_max());
}

TEST_CASE("lp pieces sum back to the field in L2") {
    TorusGrid g(1, 7);
    AnalysisProfile prof = make_profile(0.5, 2.0, 1, 4, g);
    CorpusSpec cs;
    cs.size = 1;
    cs.band_lo = 4;
    cs.band_hi = 8;
    SampledField f = corpus_member(g, 2, cs, 0);
    // Parseval with the square tiling: sum_j ||phi_j * f||^2 = ||f||^2
    double lhs = 0, rhs = 0;
    for (int j = prof.j_min(); j <= prof.j_max(); ++j) {
        SampledField piece = lp_piece(f, prof, j);
        for (const auto& z : piece.raw()) lhs += std::norm(z);
    }
    for (const auto& z : f.raw()) rhs += std::norm(z);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("lp_piece commutes with grid translation") {
    TorusGrid g(1, 6);
    AnalysisProfile prof = make_profile(0.5, 2.0, 1, 3, g);
    CorpusSpec cs;
    cs.band_lo = 2;
    cs.band_hi = 4;
    SampledField f = corpus_member(g, 1, cs, 0);
    int shift = 5;
    int N = g.samples_per_axis();
    SampledField ft(g, 1);
    for (int x = 0; x < N; ++x) ft.at(x, 0) = f.at((x + shift) % N, 0);
    SampledField a = lp_piece(ft, prof, 2);
    SampledField b = lp_piece(f, prof, 2);
    for (int x = 0; x < N; ++x)
        CHECK(std::abs(a.at(x, 0) - b.at((x + shift) % N, 0)) < 1e-10);
}

TEST_CASE("calderon reconstruction on covered fields") {
    TorusGrid g(1, 7);
    AnalysisPair pair = make_pair(make_profile(0.5, 2.0, 1, 4, g));
    CorpusSpec cs;
    cs.size = 5;
    cs.band_lo = 4;
    cs.band_hi = 8;
    for (int i = 0; i < cs.size; ++i) {
        SampledField f = corpus_member(g, 2, cs, i);
        CHECK(calderon_check(pair, f) < 1e-8);
    }
}

TEST_CASE("calderon rejects uncovered content and accepts zero") {
    TorusGrid g(1, 7);
    AnalysisPair pair = make_pair(make_profile(0.5, 2.0, 1, 4, g));
    SampledField zero(g, 1);
    CHECK(calderon_check(pair, zero) == 0.0);
    CorpusSpec cs;
    cs.band_lo = 1;  // below covered_lo = 4
    cs.band_hi = 2;
    SampledField f = corpus_member(g, 1, cs, 0);
    CHECK_THROWS_WITH(calderon_check(pair, f), doctest::Contains("outside window"));
}
