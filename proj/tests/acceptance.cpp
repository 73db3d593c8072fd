// End-to-end acceptance checks. Each criterion prints exactly one line:
//   criterion N: PASS|FAIL (detail)
// The process exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "mwtl/corpus.hpp"
#include "mwtl/harness.hpp"
#include "mwtl/rng.hpp"

using namespace mwtl;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s (%s)\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

struct WeightCase {
    const char* name;
    WeightSpec spec;
};

std::vector<WeightCase> weight_cases() {
    WeightSpec ident;

    WeightSpec constant;
    constant.kind = WeightSpec::Kind::constant;
    constant.matrix = Mat(2, 2);
    constant.matrix << cplx(2.0, 0), cplx(0.5, 0.25), cplx(0.5, -0.25), cplx(1.0, 0);

    WeightSpec diag;
    diag.kind = WeightSpec::Kind::diagonal_power;
    diag.exponents = {0.5, 0.0};

    return {{"identity", ident}, {"constant", constant}, {"diagonal_power", diag}};
}

const std::vector<std::pair<double, double>> pq_cases = {{2.0, 2.0}, {1.5, 3.0}, {0.8, 2.0}};

// shared large-grid setup: N=256, covered annulus [4,16], corpus band [4,8]
const TorusGrid big_grid{1, 8};

AnalysisProfile big_profile() { return make_profile(0.5, 2.0, 1, 5, big_grid); }

std::vector<SampledField> big_corpus(int m, int size, std::uint64_t seed) {
    CorpusSpec cs;
    cs.size = size;
    cs.seed = seed;
    cs.band_lo = 4;
    cs.band_hi = 8;
    return make_corpus(big_grid, m, cs);
}

void criterion_1_2() {
    auto t0 = std::chrono::steady_clock::now();
    MatrixWeightField w = generate_weight(WeightSpec{}, big_grid, 1);
    AnalysisProfile prof = big_profile();
    SpaceParams params = SpaceParams::with_defaults(0.0, 2.0, 2.0, 1, 1.0);
    auto corpus = big_corpus(1, 20, 0x11);
    double worst = 0;
    for (const auto& f : corpus) {
        double l2 = 0;
        for (const auto& z : f.raw()) l2 += std::norm(z);
        l2 = std::sqrt(l2 / big_grid.total_samples());
        worst = std::max(worst, std::fabs(norm_F(f, w, params, prof) / l2 - 1.0));
    }
    double dt = seconds_since(t0);
    report(1, worst < 1e-6 && dt < 2.0, fmt("max |ratio-1| = %.3g, %.2f s", worst, dt));

    t0 = std::chrono::steady_clock::now();
    AnalysisPair pair = make_pair(prof);
    double resid = 0;
    for (const auto& f : corpus) resid = std::max(resid, calderon_check(pair, f));
    dt = seconds_since(t0);
    report(2, resid < 1e-8 && dt < 2.0, fmt("max residual = %.3g, %.2f s", resid, dt));
}

void criterion_3() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<int> levels{1, 2, 3, 4, 5};
    double gram_dev = 0, john_worst = 0, john_bound_gap = 1e300;
    Rng rng(0xace);
    for (int m : {2, 3}) {
        std::vector<Mat> vals;
        for (std::size_t i = 0; i < big_grid.total_samples(); ++i)
            vals.push_back(rng.hermitian_pd(m));
        MatrixWeightField w(big_grid, m, vals);
        ReducingFamily fam = build_reducing(w, 2.0, ReducingMethod::gram2, levels);
        auto [lo, hi] = verify_reducing(fam, w, 2.0, 100);
        gram_dev = std::max({gram_dev, std::fabs(lo - 1.0), std::fabs(hi - 1.0)});
        for (double p : {0.5, 1.0, 3.0}) {
            ReducingFamily jf = build_reducing(w, p, ReducingMethod::john, levels);
            auto [jlo, jhi] = verify_reducing(jf, w, p, 100);
            double ratio = jhi / jlo;
            double bound = std::sqrt(double(m)) * (1.0 + 1e-3);
            john_worst = std::max(john_worst, ratio / bound);
            john_bound_gap = std::min(john_bound_gap, bound - ratio);
        }
    }
    double dt = seconds_since(t0);
    report(3, gram_dev < 1e-9 && john_worst <= 1.0 && dt < 30.0,
           fmt("gram2 dev = %.2g, worst john ratio/bound = %.4f, %.1f s", gram_dev, john_worst,
               dt));
}

struct EquivData {
    // per config: spreads and per-member ratios needed by criteria 4-6
    bool star_dominates = true;
    double star_spread = 0, square_spread = 0, gstar_spread = 0;
    double dilation_shift = 0;  // worst relative change of square/F and gstar/F ratios
    double aq_spread = 0, aq_bound = 0;
};

EquivData run_equiv_config(const WeightSpec& spec, double p, double q) {
    EquivData out;
    MatrixWeightField w = generate_weight(spec, big_grid, 2);
    double beta = doubling_exponent(w, p);
    SpaceParams params = SpaceParams::with_defaults(0.0, p, q, 1, beta);
    AnalysisProfile prof = big_profile();
    std::vector<int> levels{1, 2, 3, 4, 5};
    ReducingFamily fam = build_reducing(
        w, p, p == 2.0 ? ReducingMethod::gram2 : ReducingMethod::john, levels);
    auto [c1, c2] = verify_reducing(fam, w, p, 100);
    out.aq_bound = (c2 / c1) * 1.1;

    auto corpus = big_corpus(2, 30, 0x46);
    double star_lo = 1e300, star_hi = 0, sq_lo = 1e300, sq_hi = 0, g_lo = 1e300, g_hi = 0;
    double aq_lo = 1e300, aq_hi = 0;
    for (const auto& f : corpus) {
        double nf = norm_F(f, w, params, prof);
        double ns = norm_star(f, w, params, prof);
        double nq = norm_square(f, w, params, prof);
        double ng = norm_gstar(f, w, params, prof);
        double na = norm_F_AQ(f, fam, params, prof);
        if (ns < nf - 1e-12 * nf) out.star_dominates = false;
        star_lo = std::min(star_lo, ns / nf);
        star_hi = std::max(star_hi, ns / nf);
        sq_lo = std::min(sq_lo, nq / nf);
        sq_hi = std::max(sq_hi, nq / nf);
        g_lo = std::min(g_lo, ng / nf);
        g_hi = std::max(g_hi, ng / nf);
        aq_lo = std::min(aq_lo, na / nf);
        aq_hi = std::max(aq_hi, na / nf);

        SampledField d = dilate_by_two(f);
        double dn = norm_F(d, w, params, prof);
        double shift_sq = std::fabs((norm_square(d, w, params, prof) / dn) / (nq / nf) - 1.0);
        double shift_g = std::fabs((norm_gstar(d, w, params, prof) / dn) / (ng / nf) - 1.0);
        out.dilation_shift = std::max({out.dilation_shift, shift_sq, shift_g});
    }
    out.star_spread = star_hi / star_lo;
    out.square_spread = sq_hi / sq_lo;
    out.gstar_spread = g_hi / g_lo;
    out.aq_spread = aq_hi / aq_lo;
    return out;
}

void criteria_4_5_6() {
    auto t0 = std::chrono::steady_clock::now();
    bool pass4 = true, pass5 = true, pass6 = true;
    double worst_star = 0, worst_sq = 0, worst_g = 0, worst_shift = 0, worst_aq_margin = 0;
    for (const auto& wc : weight_cases())
        for (const auto& [p, q] : pq_cases) {
            EquivData d = run_equiv_config(wc.spec, p, q);
            pass4 = pass4 && d.star_dominates && d.star_spread <= 50.0;
            pass5 = pass5 && d.square_spread <= 50.0 && d.gstar_spread <= 50.0 &&
                    d.dilation_shift <= 0.10;
            pass6 = pass6 && d.aq_spread <= d.aq_bound;
            worst_star = std::max(worst_star, d.star_spread);
            worst_sq = std::max(worst_sq, d.square_spread);
            worst_g = std::max(worst_g, d.gstar_spread);
            worst_shift = std::max(worst_shift, d.dilation_shift);
            worst_aq_margin = std::max(worst_aq_margin, d.aq_spread / d.aq_bound);
        }
    double dt = seconds_since(t0);
    report(4, pass4 && dt < 300.0, fmt("max star spread = %.3f, %.0f s", worst_star, dt));
    report(5, pass5,
           fmt("max square/gstar spread = %.3f/%.3f, max dilation shift = %.3f", worst_sq,
               worst_g, worst_shift));
    report(6, pass6, fmt("worst aq spread / bound = %.4f", worst_aq_margin));
}

void criterion_7() {
    double ident_dev = 0;
    MatrixWeightField id = generate_weight(WeightSpec{}, TorusGrid(1, 6), 2);
    for (double p : {0.5, 1.0, 2.0, 4.0})
        ident_dev = std::max(ident_dev, std::fabs(ap_characteristic(id, p).value - 1.0));

    WeightSpec s;
    s.kind = WeightSpec::Kind::scalar_power;
    auto value_at = [&](double a, int L) {
        s.exponents = {a};
        MatrixWeightField w = generate_weight(s, TorusGrid(1, L), 1);
        return ap_characteristic(w, 2.0).value;
    };
    double r_mild = value_at(0.5, 10) / value_at(0.5, 9);
    double r_steep = value_at(1.5, 10) / value_at(1.5, 9);
    bool pass = ident_dev < 1e-9 && std::fabs(r_mild - 1.0) <= 0.10 && r_steep >= 2.0;
    report(7, pass,
           fmt("identity dev = %.2g, a=0.5 ratio = %.4f, a=1.5 growth = %.4f", ident_dev,
               r_mild, r_steep));
}

void criterion_8() {
    double dev = 0;
    for (int n : {1, 2}) {
        TorusGrid g(n, n == 1 ? 8 : 5);
        MatrixWeightField w = generate_weight(WeightSpec{}, g, 2);
        dev = std::max(dev, std::fabs(doubling_exponent(w, 2.0) - n));
    }
    WeightSpec s;
    s.kind = WeightSpec::Kind::scalar_power;
    s.exponents = {1.0};
    MatrixWeightField w = generate_weight(s, TorusGrid(1, 10), 1);
    double beta = doubling_exponent(w, 1.0);
    report(8, dev < 1e-9 && beta >= 1.85 && beta <= 2.0,
           fmt("identity dev = %.2g, power beta = %.4f", dev, beta));
}

void criterion_9() {
    // one value of each empirical constant at N and 2N
    auto at_level = [&](int L) {
        TorusGrid g(1, L);
        CorpusSpec cs;
        cs.size = 20;
        cs.seed = 0x99;
        cs.band_lo = 4;
        cs.band_hi = 8;
        auto corpus = make_corpus(g, 1, cs);
        std::vector<RealField> fields;
        for (const auto& f : corpus) {
            RealField h(g);
            for (std::size_t i = 0; i < h.size(); ++i) h[i] = std::abs(f.at(i, 0));
            fields.push_back(h);
        }
        double eta = 2.0;
        int j = 2;
        double jcf = jcf_check(fields[0], j, eta);
        double fs = fs_check(fields, 2.0, 2.0);

        WeightSpec s;
        s.kind = WeightSpec::Kind::diagonal_power;
        s.exponents = {0.5, 0.0};
        MatrixWeightField w = generate_weight(s, g, 2);
        std::vector<int> levels{1, 2, 3, 4};
        ReducingFamily fam = build_reducing(w, 2.0, ReducingMethod::gram2, levels);
        std::vector<RealField> per_level(fields.begin(), fields.begin() + levels.size());
        double c38 = c38_check(w, fam, 2.0, 2.0, per_level);
        return std::array<double, 3>{jcf, fs, c38};
    };
    auto lattice = [&](int j, double eta) {
        double acc = 0;
        int cubes = 1 << j;
        for (int l = 0; l < cubes; ++l) acc += std::pow(1.0 + std::min(l, cubes - l), -eta);
        return acc;
    };
    auto a = at_level(7), b = at_level(8);
    double bound_jcf = lattice(2, 2.0) * 1.05;
    bool bounds = a[0] <= bound_jcf && b[0] <= bound_jcf && a[1] <= 10.0 && b[1] <= 10.0 &&
                  a[2] <= 20.0 && b[2] <= 20.0;
    bool stable = true;
    for (int i = 0; i < 3; ++i)
        stable = stable && std::fabs(b[i] / a[i] - 1.0) <= 0.25 && std::isfinite(a[i]) &&
                 std::isfinite(b[i]);
    report(9, bounds && stable,
           fmt("jcf/fs/c38 at 2N = %.3f / %.3f / %.3f", b[0], b[1], b[2]));
}

void criterion_10() {
    AnalysisProfile prof = big_profile();

    // identity symbol on an admissible matrix weight
    WeightSpec ds;
    ds.kind = WeightSpec::Kind::diagonal_power;
    ds.exponents = {0.5, 0.0};
    MatrixWeightField w = generate_weight(ds, big_grid, 2);
    double beta = doubling_exponent(w, 2.0);
    SpaceParams params = SpaceParams::with_defaults(0.0, 2.0, 2.0, 1, beta);
    auto corpus = big_corpus(2, 30, 0x10);
    BoundednessReport ident =
        boundedness_report(corpus, w, params, MultiplierSymbol::identity(), prof);
    double ident_dev = 0;
    for (double r : ident.ratios) ident_dev = std::max(ident_dev, std::fabs(r - 1.0));

    // Hilbert transform identity
    TorusGrid small(1, 6);
    SampledField cosf(small, 1);
    for (std::size_t s = 0; s < small.total_samples(); ++s)
        cosf.at(s, 0) = std::cos(2 * std::numbers::pi * small.point(s)[0]);
    SampledField sinf = apply_multiplier(cosf, MultiplierSymbol::riesz(1));
    double hilbert_dev = 0;
    for (std::size_t s = 0; s < small.total_samples(); ++s)
        hilbert_dev = std::max(
            hilbert_dev,
            std::abs(sinf.at(s, 0) - std::sin(2 * std::numbers::pi * small.point(s)[0])));

    // boundedness with theorem-valid smoothness
    MatrixWeightField wi = generate_weight(WeightSpec{}, big_grid, 1);
    SpaceParams pi1 = SpaceParams::with_defaults(0.0, 2.0, 2.0, 1, 1.0);
    auto scal = big_corpus(1, 30, 0x30);
    BoundednessReport pow1 =
        boundedness_report(scal, wi, pi1, MultiplierSymbol::power(1.0), prof);
    BoundednessReport riesz = boundedness_report(corpus, w, params, MultiplierSymbol::riesz(1), prof);
    bool pow_ok = true;
    for (double r : pow1.ratios) pow_ok = pow_ok && r >= 0.2 && r <= 5.0;

    // identity-symbol shell constants in 1d
    HormanderReport hr = hormander_constants(MultiplierSymbol::identity(), big_grid);
    double shell_dev = 0;
    for (const auto& row : hr.table) {
        if (row.sigma != std::array<int, 2>{0, 0}) continue;
        if (std::pow(2.0, row.shell_t) < 8) continue;
        shell_dev = std::max(shell_dev, std::fabs(row.bracket / 2.0 - 1.0));
    }

    bool pass = ident_dev < 1e-9 && hilbert_dev < 1e-12 && pow_ok &&
                riesz.max_ratio <= 20.0 && shell_dev <= 0.05;
    report(10, pass,
           fmt("identity dev = %.2g, hilbert dev = %.2g, riesz max ratio = %.3f", ident_dev,
               hilbert_dev, riesz.max_ratio));
}

}  // namespace

int main() {
    criterion_1_2();
    criterion_3();
    criteria_4_5_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures > 0 ? 1 : 0;
}
