#include "mwtl/weights.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <ostream>

#include "mwtl/rng.hpp"

namespace mwtl {

namespace {

const char* kind_name(WeightSpec::Kind k) {
    switch (k) {
        case WeightSpec::Kind::identity: return "identity";
        case WeightSpec::Kind::constant: return "constant";
        case WeightSpec::Kind::diagonal_power: return "diagonal_power";
        case WeightSpec::Kind::rotating: return "rotating";
        case WeightSpec::Kind::scalar_power: return "scalar_power";
    }
    return "identity";
}

WeightSpec::Kind kind_from_name(const std::string& s) {
    if (s == "identity") return WeightSpec::Kind::identity;
    if (s == "constant") return WeightSpec::Kind::constant;
    if (s == "diagonal_power") return WeightSpec::Kind::diagonal_power;
    if (s == "rotating") return WeightSpec::Kind::rotating;
    if (s == "scalar_power") return WeightSpec::Kind::scalar_power;
    throw std::invalid_argument("weight spec: unknown kind '" + s + "'");
}

}  // namespace

std::string WeightSpec::to_json() const {
    nlohmann::json j;
    j["kind"] = kind_name(kind);
    j["exponents"] = exponents;
    j["center"] = {center[0], center[1]};
    j["rate"] = rate;
    if (matrix.size() > 0) {
        std::vector<std::vector<double>> re, im;
        for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
            std::vector<double> rr, ri;
            for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
                rr.push_back(matrix(r, c).real());
                ri.push_back(matrix(r, c).imag());
            }
            re.push_back(rr);
            im.push_back(ri);
        }
        j["matrix"] = {{"re", re}, {"im", im}};
    }
    return j.dump();
}

WeightSpec WeightSpec::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    WeightSpec s;
    s.kind = kind_from_name(j.at("kind").get<std::string>());
    if (j.contains("exponents")) s.exponents = j["exponents"].get<std::vector<double>>();
    if (j.contains("center")) {
        auto c = j["center"].get<std::vector<double>>();
        for (std::size_t i = 0; i < c.size() && i < 2; ++i) s.center[i] = c[i];
    }
    if (j.contains("rate")) s.rate = j["rate"].get<double>();
    if (j.contains("matrix")) {
        auto re = j["matrix"]["re"].get<std::vector<std::vector<double>>>();
        auto im = j["matrix"]["im"].get<std::vector<std::vector<double>>>();
        s.matrix.resize(re.size(), re.empty() ? 0 : re[0].size());
        for (std::size_t r = 0; r < re.size(); ++r)
            for (std::size_t c = 0; c < re[r].size(); ++c)
                s.matrix(r, c) = cplx(re[r][c], im[r][c]);
    }
    return s;
}

MatrixWeightField::MatrixWeightField(TorusGrid grid, int m, std::vector<Mat> values)
    : grid_(grid), m_(m), values_(std::move(values)) {
    if (values_.size() != grid_.total_samples())
        throw std::invalid_argument("MatrixWeightField: wrong sample count");
}

const std::vector<Mat>& MatrixWeightField::power(double alpha) const {
    auto it = power_cache_.find(alpha);
    if (it != power_cache_.end()) return it->second;
    std::vector<Mat> pw;
    pw.reserve(values_.size());
    for (const auto& v : values_) pw.push_back(matrix_power(v, alpha));
    return power_cache_.emplace(alpha, std::move(pw)).first->second;
}

namespace {

/// dist(x, x0)^a with the singular sample replaced by (spacing/2)^a.
double power_weight_value(const TorusGrid& g, std::size_t site,
                          const std::array<double, 2>& center, double a) {
    double d = torus_distance(g.n, g.point(site), center);
    if (d < 0.5 * g.spacing()) d = 0.5 * g.spacing();
    return std::pow(d, a);
}

void check_exponents(const std::vector<double>& a, int n, int m) {
    if (static_cast<int>(a.size()) != m)
        throw std::invalid_argument("weight spec: need one exponent per component");
    for (double ai : a)
        if (ai <= -n) throw std::invalid_argument("inadmissible exponent");
}

void check_center_on_grid(const TorusGrid& g, const std::array<double, 2>& c) {
    int N = g.samples_per_axis();
    for (int d = 0; d < g.n; ++d) {
        double idx = c[d] * N;
        if (std::fabs(idx - std::round(idx)) > 1e-9)
            throw std::invalid_argument("weight spec: center must lie on the grid");
    }
}

}  // namespace

MatrixWeightField generate_weight(const WeightSpec& spec, const TorusGrid& grid, int m) {
    std::size_t total = grid.total_samples();
    std::vector<Mat> vals(total);
    switch (spec.kind) {
        case WeightSpec::Kind::identity: {
            for (auto& v : vals) v = Mat::Identity(m, m);
            break;
        }
        case WeightSpec::Kind::constant: {
            if (spec.matrix.rows() != m || spec.matrix.cols() != m)
                throw std::invalid_argument("weight spec: constant matrix has wrong size");
            require_hermitian_pd(spec.matrix);
            for (auto& v : vals) v = spec.matrix;
            break;
        }
        case WeightSpec::Kind::diagonal_power: {
            check_exponents(spec.exponents, grid.n, m);
            check_center_on_grid(grid, spec.center);
            for (std::size_t s = 0; s < total; ++s) {
                Mat v = Mat::Zero(m, m);
                for (int i = 0; i < m; ++i)
                    v(i, i) = power_weight_value(grid, s, spec.center, spec.exponents[i]);
                vals[s] = v;
            }
            break;
        }
        case WeightSpec::Kind::rotating: {
            check_exponents(spec.exponents, grid.n, m);
            check_center_on_grid(grid, spec.center);
            for (std::size_t s = 0; s < total; ++s) {
                Mat d = Mat::Zero(m, m);
                for (int i = 0; i < m; ++i)
                    d(i, i) = power_weight_value(grid, s, spec.center, spec.exponents[i]);
                if (m >= 2) {
                    double theta =
                        2.0 * std::numbers::pi * spec.rate * grid.point(s)[0];
                    Mat r = Mat::Identity(m, m);
                    r(0, 0) = std::cos(theta);
                    r(0, 1) = -std::sin(theta);
                    r(1, 0) = std::sin(theta);
                    r(1, 1) = std::cos(theta);
                    d = r * d * r.adjoint();
                }
                vals[s] = d;
            }
            break;
        }
        case WeightSpec::Kind::scalar_power: {
            if (spec.exponents.size() != 1)
                throw std::invalid_argument("weight spec: scalar_power needs one exponent");
            if (spec.exponents[0] <= -grid.n)
                throw std::invalid_argument("inadmissible exponent");
            check_center_on_grid(grid, spec.center);
            for (std::size_t s = 0; s < total; ++s)
                vals[s] = power_weight_value(grid, s, spec.center, spec.exponents[0]) *
                          Mat::Identity(m, m);
            break;
        }
    }
    return MatrixWeightField(grid, m, std::move(vals));
}

void ApReport::write_csv(std::ostream& os) const {
    os << "level,cube_index,bracket_value\n";
    os.precision(12);
    for (const auto& r : table) os << r.level << ',' << r.cube << ',' << r.bracket << '\n';
}

ApReport ap_characteristic(const MatrixWeightField& w, double p, int j_min) {
    if (p <= 0) throw std::invalid_argument("ap_characteristic: p must be positive");
    const TorusGrid& g = w.grid();
    const auto& pos = w.power(1.0 / p);
    const auto& neg = w.power(-1.0 / p);

    ApReport rep;
    rep.p = p;
    bool conj = p > 1.0;
    double pp = conj ? p / (p - 1.0) : 0.0;

    for (int j = j_min; j <= g.level; ++j) {
        double level_best = -1;
        std::size_t level_arg = 0;
        for (std::size_t q = 0; q < cube_count(g, j); ++q) {
            DyadicCube cube = cube_from_flat(g, j, q);
            auto sites = cube_samples(g, cube);
            double bracket;
            if (conj) {
                double mean_x = 0;
                for (auto x : sites) {
                    double mean_y = 0;
                    for (auto y : sites) mean_y += std::pow(operator_norm(pos[x] * neg[y]), pp);
                    mean_y /= static_cast<double>(sites.size());
                    mean_x += std::pow(mean_y, p / pp);
                }
                bracket = mean_x / static_cast<double>(sites.size());
            } else {
                double best_y = 0;
                for (auto y : sites) {
                    double mean_x = 0;
                    for (auto x : sites) mean_x += std::pow(operator_norm(pos[x] * neg[y]), p);
                    best_y = std::max(best_y, mean_x / static_cast<double>(sites.size()));
                }
                bracket = best_y;
            }
            if (!std::isfinite(bracket))
                throw std::runtime_error("overflow: weight too singular for grid");
            if (bracket > level_best) {
                level_best = bracket;
                level_arg = q;
            }
            if (bracket > rep.value) {
                rep.value = bracket;
                rep.argmax = cube;
            }
        }
        rep.table.push_back({j, level_arg, level_best});
    }
    return rep;
}

double scalar_ap_characteristic(const RealField& w, double p, int j_min) {
    if (p < 1) throw std::invalid_argument("scalar_ap_characteristic: p must be >= 1");
    const TorusGrid& g = w.grid();
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] < 0) throw std::invalid_argument("scalar weight must be nonnegative");

    double best = 0;
    for (int j = j_min; j <= g.level; ++j) {
        for (std::size_t q = 0; q < cube_count(g, j); ++q) {
            auto sites = cube_samples(g, cube_from_flat(g, j, q));
            double mean_w = 0;
            for (auto s : sites) mean_w += w[s];
            mean_w /= static_cast<double>(sites.size());
            double bracket;
            if (p > 1) {
                bool all_zero = true;
                double mean_dual = 0;
                for (auto s : sites) {
                    if (w[s] > 0) all_zero = false;
                    mean_dual += std::pow(w[s], 1.0 / (1.0 - p));
                }
                if (all_zero) throw std::runtime_error("degenerate weight");
                mean_dual /= static_cast<double>(sites.size());
                bracket = mean_w * std::pow(mean_dual, p - 1.0);
            } else {
                double inv_max = 0;
                for (auto s : sites) {
                    if (w[s] <= 0) throw std::runtime_error("degenerate weight");
                    inv_max = std::max(inv_max, 1.0 / w[s]);
                }
                bracket = mean_w * inv_max;
            }
            best = std::max(best, bracket);
        }
    }
    return best;
}

RealField scalar_reduction(const MatrixWeightField& w, double p, const Vec& y) {
    if (std::fabs(y.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("scalar_reduction: direction must be a unit vector");
    const auto& pos = w.power(1.0 / p);
    RealField out(w.grid());
    for (std::size_t s = 0; s < out.size(); ++s)
        out[s] = std::pow((pos[s] * y).norm(), p);
    return out;
}

RealField norm_weight_field(const MatrixWeightField& w, double p) {
    const auto& pos = w.power(1.0 / p);
    RealField out(w.grid());
    for (std::size_t s = 0; s < out.size(); ++s)
        out[s] = std::pow(operator_norm(pos[s]), p);
    return out;
}

std::pair<double, double> duality_check(const MatrixWeightField& w, double p) {
    if (p <= 1) throw std::invalid_argument("duality_check: p must exceed 1");
    double pp = p / (p - 1.0);
    std::vector<Mat> dual;
    dual.reserve(w.grid().total_samples());
    for (std::size_t s = 0; s < w.grid().total_samples(); ++s)
        dual.push_back(matrix_power(w.value(s), -pp / p));
    MatrixWeightField wd(w.grid(), w.m(), std::move(dual));
    return {ap_characteristic(w, p).value, ap_characteristic(wd, pp).value};
}

double doubling_exponent(const MatrixWeightField& w, double p, int extra_directions,
                         std::uint64_t seed) {
    if (p <= 0) throw std::invalid_argument("doubling_exponent: p must be positive");
    const TorusGrid& g = w.grid();
    int N = g.samples_per_axis();
    const auto& pos = w.power(1.0 / p);
    auto dirs = direction_set(w.m(), extra_directions, seed);

    double best = 0;
    for (const auto& z : dirs) {
        RealField u(g);
        for (std::size_t s = 0; s < u.size(); ++s) u[s] = std::pow((pos[s] * z).norm(), p);
        BoxSums box(u);
        for (int j = 1; j <= g.level - 1; ++j) {
            int s = N >> j;
            int half = s / 2;
            if (g.n == 1) {
                for (int st = 0; st < N; ++st) {
                    double sq = box.sum({st, 0}, {s, 1});
                    double s2 = box.sum({st - half, 0}, {2 * s, 1});
                    best = std::max(best, std::log2(s2 / sq));
                }
            } else {
                for (int st0 = 0; st0 < N; ++st0)
                    for (int st1 = 0; st1 < N; ++st1) {
                        double sq = box.sum({st0, st1}, {s, s});
                        double s2 = box.sum({st0 - half, st1 - half}, {2 * s, 2 * s});
                        best = std::max(best, std::log2(s2 / sq));
                    }
            }
        }
    }
    return best;
}

}  // namespace mwtl
