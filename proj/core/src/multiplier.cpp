#include "mwtl/multiplier.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace mwtl {

cplx RadialMonomialSum::eval(const std::array<double, 2>& xi, int n) const {
    double r2 = xi[0] * xi[0] + (n == 2 ? xi[1] * xi[1] : 0.0);
    if (r2 == 0.0) return {0, 0};
    double r = std::sqrt(r2);
    cplx acc{0, 0};
    for (const auto& t : terms_) {
        double mono = std::pow(xi[0], t.mono[0]);
        if (n == 2 && t.mono[1] != 0) mono *= std::pow(xi[1], t.mono[1]);
        else if (n == 1 && t.mono[1] != 0) mono = 0.0;
        acc += t.coef * mono * std::pow(r, t.radial);
    }
    return acc;
}

RadialMonomialSum RadialMonomialSum::derivative(int axis) const {
    // d/dxi_d (xi^a |xi|^e) = a_d xi^{a - e_d} |xi|^e + e xi^{a + e_d} |xi|^{e-2}
    std::vector<Term> out;
    for (const auto& t : terms_) {
        if (t.mono[axis] != 0) {
            Term u = t;
            u.coef *= static_cast<double>(t.mono[axis]);
            u.mono[axis] -= 1;
            out.push_back(u);
        }
        if (t.radial != 0.0) {
            Term u = t;
            u.coef *= t.radial;
            u.mono[axis] += 1;
            u.radial -= 2.0;
            out.push_back(u);
        }
    }
    return RadialMonomialSum(std::move(out));
}

RadialMonomialSum RadialMonomialSum::constant(cplx c) {
    return RadialMonomialSum({Term{c, {0, 0}, 0.0}});
}

RadialMonomialSum RadialMonomialSum::riesz(int axis) {
    Term t{cplx{0, -1}, {0, 0}, -1.0};
    t.mono[axis] = 1;
    return RadialMonomialSum({t});
}

RadialMonomialSum RadialMonomialSum::radial_power(double e) {
    return RadialMonomialSum({Term{cplx{1, 0}, {0, 0}, e}});
}

MultiplierSymbol MultiplierSymbol::identity() {
    MultiplierSymbol m;
    m.kind_ = Kind::identity;
    m.s_ = 0.0;
    m.ell_ = 3;
    m.expr_ = RadialMonomialSum::constant({1, 0});
    return m;
}

MultiplierSymbol MultiplierSymbol::riesz(int axis) {
    if (axis < 1 || axis > 2) throw std::invalid_argument("riesz: axis must be 1 or 2");
    MultiplierSymbol m;
    m.kind_ = Kind::riesz;
    m.s_ = 0.0;
    m.ell_ = 3;
    m.riesz_axis_ = axis;
    m.expr_ = RadialMonomialSum::riesz(axis - 1);
    return m;
}

MultiplierSymbol MultiplierSymbol::power(double s) {
    MultiplierSymbol m;
    m.kind_ = Kind::power;
    m.s_ = s;
    m.ell_ = 3;
    m.expr_ = RadialMonomialSum::radial_power(-s);
    return m;
}

MultiplierSymbol MultiplierSymbol::custom(
    std::function<cplx(std::array<double, 2>, int)> eval, double s, int ell) {
    MultiplierSymbol m;
    m.kind_ = Kind::custom;
    m.s_ = s;
    m.ell_ = std::min(ell, 3);  // FD noise dominates beyond third order
    if (m.ell_ < 1) throw std::invalid_argument("multiplier: smoothness must be >= 1");
    m.custom_ = std::move(eval);
    return m;
}

void MultiplierSymbol::set_smoothness(int ell) {
    if (ell < 1) throw std::invalid_argument("multiplier: smoothness must be >= 1");
    ell_ = kind_ == Kind::custom ? std::min(ell, 3) : ell;
}

cplx MultiplierSymbol::eval(const std::array<double, 2>& xi, int n) const {
    if (xi[0] == 0.0 && (n == 1 || xi[1] == 0.0)) return {0, 0};  // m(0) := 0
    if (kind_ == Kind::custom) return custom_(xi, n);
    return expr_.eval(xi, n);
}

cplx MultiplierSymbol::derivative(const std::array<int, 2>& sigma,
                                  const std::array<double, 2>& xi, int n) const {
    if (kind_ == Kind::custom) {
        // nested central differences, shell-relative step
        double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1]);
        double h = r * 1e-3;
        std::function<cplx(std::array<int, 2>, std::array<double, 2>)> rec =
            [&](std::array<int, 2> sg, std::array<double, 2> at) -> cplx {
            for (int d = 0; d < 2; ++d) {
                if (sg[d] > 0) {
                    auto sg2 = sg;
                    sg2[d] -= 1;
                    auto hi = at, lo = at;
                    hi[d] += h;
                    lo[d] -= h;
                    return (rec(sg2, hi) - rec(sg2, lo)) / (2.0 * h);
                }
            }
            return custom_(at, n);
        };
        return rec(sigma, xi);
    }
    for (const auto& [sg, expr] : deriv_cache_)
        if (sg == sigma) return expr.eval(xi, n);
    RadialMonomialSum d = expr_;
    for (int axis = 0; axis < 2; ++axis)
        for (int k = 0; k < sigma[axis]; ++k) d = d.derivative(axis);
    deriv_cache_.emplace_back(sigma, d);
    return deriv_cache_.back().second.eval(xi, n);
}

std::string MultiplierSymbol::to_json() const {
    const char* names[] = {"identity", "riesz", "power", "custom"};
    nlohmann::json j{{"kind", names[static_cast<int>(kind_)]},
                     {"s", s_},
                     {"ell", ell_},
                     {"params", {{"axis", riesz_axis_}}}};
    return j.dump();
}

MultiplierSymbol MultiplierSymbol::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::string kind = j.at("kind").get<std::string>();
    MultiplierSymbol m;
    if (kind == "identity")
        m = identity();
    else if (kind == "riesz")
        m = riesz(j.contains("params") && j["params"].contains("axis")
                      ? j["params"]["axis"].get<int>()
                      : 1);
    else if (kind == "power")
        m = power(j.at("s").get<double>());
    else
        throw std::invalid_argument("multiplier json: unknown kind '" + kind + "'");
    if (j.contains("ell")) m.set_smoothness(j["ell"].get<int>());
    return m;
}

double HormanderReport::constant_for(const std::array<int, 2>& sigma) const {
    for (const auto& [sg, v] : constants)
        if (sg == sigma) return v;
    throw std::out_of_range("hormander report: sigma not scanned");
}

void HormanderReport::write_csv(std::ostream& os) const {
    os << "sigma,shell_t,bracket,A_sigma\n";
    os.precision(12);
    for (const auto& r : table)
        os << r.sigma[0] << '+' << r.sigma[1] << ',' << r.shell_t << ',' << r.bracket << ','
           << constant_for(r.sigma) << '\n';
}

HormanderReport hormander_constants(const MultiplierSymbol& sym, const TorusGrid& grid) {
    int n = grid.n;
    int nyquist = grid.samples_per_axis() / 2;
    HormanderReport rep;

    std::vector<std::array<int, 2>> sigmas;
    for (int total = 0; total <= sym.smoothness(); ++total)
        for (int s0 = 0; s0 <= total; ++s0) {
            if (n == 1 && s0 != total) continue;
            sigmas.push_back({s0, total - s0});
        }

    // gather lattice points per shell t: R = 2^t, R <= |xi| < 2R, 2R <= nyquist
    int t_max = 0;
    while ((2 << (t_max + 1)) <= nyquist) ++t_max;
    for (const auto& sigma : sigmas) {
        int order = sigma[0] + sigma[1];
        double a_sigma = 0;
        for (int t = 0; t <= t_max; ++t) {
            double R = std::pow(2.0, t);
            double sum = 0;
            auto visit = [&](double x0, double x1) {
                double r = std::sqrt(x0 * x0 + x1 * x1);
                if (r < R || r >= 2 * R) return;
                sum += std::norm(sym.derivative(sigma, {x0, x1}, n));
            };
            int lim = static_cast<int>(2 * R);
            if (n == 1) {
                for (int k = -lim; k <= lim; ++k) visit(k, 0);
            } else {
                for (int k0 = -lim; k0 <= lim; ++k0)
                    for (int k1 = -lim; k1 <= lim; ++k1) visit(k0, k1);
            }
            double bracket =
                std::pow(R, -n + 2 * sym.order() + 2 * order) * sum;
            rep.table.push_back({sigma, t, bracket});
            a_sigma = std::max(a_sigma, bracket);
        }
        rep.constants.emplace_back(sigma, a_sigma);
    }
    return rep;
}

SampledField apply_multiplier(const SampledField& f, const MultiplierSymbol& sym) {
    int n = f.grid().n;
    return convolve_symbol(f, [&](std::array<int, 2> k) {
        return sym.eval({double(k[0]), double(k[1])}, n);
    });
}

BoundednessReport boundedness_report(const std::vector<SampledField>& corpus,
                                     const MatrixWeightField& w, const SpaceParams& params,
                                     const MultiplierSymbol& sym,
                                     const AnalysisProfile& profile) {
    BoundednessReport rep;
    SpaceParams shifted = params;
    shifted.alpha = params.alpha + sym.order();
    for (const auto& f : corpus) {
        double den = norm_F(f, w, params, profile);
        double num = norm_F(apply_multiplier(f, sym), w, shifted, profile);
        double r = den == 0.0 ? 0.0 : num / den;
        rep.ratios.push_back(r);
        rep.max_ratio = std::max(rep.max_ratio, r);
    }
    return rep;
}

}  // namespace mwtl
