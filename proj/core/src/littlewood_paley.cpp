#include "mwtl/littlewood_paley.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace mwtl {

AnalysisProfile::AnalysisProfile(double c1, double c2, int j_min, int j_max)
    : c1_(c1), c2_(c2), j_min_(j_min), j_max_(j_max) {
    if (!(0 < c1 && c1 < c2)) throw std::invalid_argument("profile: need 0 < c1 < c2");
    if (std::fabs(c2 / c1 - 4.0) > 1e-9)
        throw std::invalid_argument("profile: annulus ratio must be 4");
    if (j_max < j_min + 2) throw std::invalid_argument("profile: window too narrow");
}

double AnalysisProfile::raw_bump(double t) const {
    if (t <= c1_ || t >= c2_) return 0.0;
    // smooth bump in log-frequency, centered on the annulus
    double u = 2.0 * std::log2(t / std::sqrt(c1_ * c2_)) / std::log2(c2_ / c1_);
    if (u <= -1.0 || u >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double AnalysisProfile::g(double t) const {
    double b = raw_bump(t);
    if (b == 0.0) return 0.0;
    // square-normalize over all dyadic shifts; at most 3 contribute
    double denom = 0;
    for (int l = -2; l <= 2; ++l) {
        double bb = raw_bump(std::ldexp(t, l));
        denom += bb * bb;
    }
    return b / std::sqrt(denom);
}

double AnalysisProfile::sigma(int j, double kmag) const {
    if (j < j_min_ || j > j_max_) return 0.0;
    return g(kmag / std::pow(2.0, j));
}

double AnalysisProfile::sigma(int j, std::array<int, 2> k) const {
    return sigma(j, std::sqrt(static_cast<double>(k[0]) * k[0] +
                              static_cast<double>(k[1]) * k[1]));
}

bool AnalysisProfile::covered(double kmag) const {
    double eps = 1e-12;
    return kmag >= covered_lo() - eps && kmag <= covered_hi() + eps;
}

void AnalysisProfile::require_fits(const TorusGrid& grid) const {
    double nyquist = grid.samples_per_axis() / 2.0;
    if (c2_ * std::pow(2.0, j_max_) >= nyquist) throw std::invalid_argument("aliasing");
}

std::string AnalysisProfile::to_json() const {
    nlohmann::json j{{"c1", c1_}, {"c2", c2_}, {"jmin", j_min_}, {"jmax", j_max_}};
    return j.dump();
}

AnalysisProfile AnalysisProfile::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    return AnalysisProfile(j.at("c1").get<double>(), j.at("c2").get<double>(),
                           j.at("jmin").get<int>(), j.at("jmax").get<int>());
}

AnalysisProfile make_profile(double c1, double c2, int j_min, int j_max,
                             const TorusGrid& grid) {
    AnalysisProfile p(c1, c2, j_min, j_max);
    p.require_fits(grid);
    return p;
}

AnalysisPair make_pair(const AnalysisProfile& profile) { return {profile, profile}; }

SampledField lp_piece(const SampledField& f, const AnalysisProfile& profile, int j) {
    if (j < profile.j_min() || j > profile.j_max())
        throw std::invalid_argument("lp_piece: scale outside window");
    SampledField out = convolve_symbol(
        f, [&](std::array<int, 2> k) { return cplx{profile.sigma(j, k), 0.0}; });
    out.set_band_limit(static_cast<int>(std::ceil(profile.c2() * std::pow(2.0, j))));
    return out;
}

double calderon_check(const AnalysisPair& pair, const SampledField& f) {
    const TorusGrid& g = f.grid();
    // frequency-content check against the covered annulus
    SampledField spec = fft_forward(f);
    double max_coeff = 0;
    for (std::size_t s = 0; s < g.total_samples(); ++s)
        for (int c = 0; c < f.m(); ++c)
            max_coeff = std::max(max_coeff, std::abs(spec.at(s, c)));
    if (max_coeff == 0.0) return 0.0;
    for (std::size_t s = 0; s < g.total_samples(); ++s) {
        auto k = g.freq_coords(s);
        double kmag = std::sqrt(static_cast<double>(k[0]) * k[0] +
                                static_cast<double>(k[1]) * k[1]);
        if (pair.phi.covered(kmag)) continue;
        for (int c = 0; c < f.m(); ++c)
            if (std::abs(spec.at(s, c)) > 1e-10 * max_coeff)
                throw std::invalid_argument("frequency content outside window");
    }
    // spectral reconstruction: residual of 1 - sum_j phihat psihat
    SampledField recon = convolve_symbol(f, [&](std::array<int, 2> k) {
        double acc = 0;
        for (int j = pair.phi.j_min(); j <= pair.phi.j_max(); ++j)
            acc += pair.phi.sigma(j, k) * pair.psi.sigma(j, k);
        return cplx{acc, 0.0};
    });
    double num = 0, den = 0;
    for (std::size_t s = 0; s < g.total_samples(); ++s)
        for (int c = 0; c < f.m(); ++c) {
            num = std::max(num, std::abs(recon.at(s, c) - f.at(s, c)));
            den = std::max(den, std::abs(f.at(s, c)));
        }
    return den == 0.0 ? 0.0 : num / den;
}

}  // namespace mwtl
