#include "mwtl/reducing.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "mwtl/rng.hpp"

namespace mwtl {

Mat mvee_shape(const std::vector<Vec>& points, double tol, int max_iter) {
    if (points.empty()) throw std::invalid_argument("mvee_shape: no points");
    const int m = static_cast<int>(points.front().size());
    const int M = static_cast<int>(points.size());

    Mat P(m, M);  // points as columns
    for (int i = 0; i < M; ++i) P.col(i) = points[i];

    Eigen::VectorXd wts = Eigen::VectorXd::Constant(M, 1.0 / M);
    Mat S = Mat::Zero(m, m);
    for (int i = 0; i < M; ++i) S += wts[i] * P.col(i) * P.col(i).adjoint();
    Mat Sinv = S.inverse();
    Eigen::VectorXd kappa =
        (P.adjoint() * (Sinv * P)).diagonal().real();

    for (int it = 0; it < max_iter; ++it) {
        if (it % 1024 == 1023) {  // re-sync against rank-one update drift
            S = Mat::Zero(m, m);
            for (int i = 0; i < M; ++i) S += wts[i] * P.col(i) * P.col(i).adjoint();
            Sinv = S.inverse();
            kappa = (P.adjoint() * (Sinv * P)).diagonal().real();
        }
        int arg_max = 0, arg_min = -1;
        double k_max = -1, k_min = std::numeric_limits<double>::infinity();
        for (int i = 0; i < M; ++i) {
            if (kappa[i] > k_max) {
                k_max = kappa[i];
                arg_max = i;
            }
            if (wts[i] > 1e-14 && kappa[i] < k_min) {
                k_min = kappa[i];
                arg_min = i;
            }
        }
        // Wolfe-Atwood: alternate add and away steps on the worst violation
        double up = k_max - m, down = m - k_min;
        if (up <= m * tol && down <= m * tol) break;
        int k;
        double lam;
        if (up >= down) {
            k = arg_max;
            lam = (k_max - m) / (m * (k_max - 1.0));
        } else {
            k = arg_min;
            // line-search optimum is only a maximizer for k_min > 1;
            // otherwise drop the point's weight entirely
            lam = k_min > 1.0 + 1e-12
                      ? (k_min - m) / (m * (k_min - 1.0))  // negative
                      : -std::numeric_limits<double>::infinity();
            lam = std::max(lam, -wts[k] / (1.0 - wts[k]));
        }
        // Sherman-Morrison update of Sinv and all quadratic forms
        double om = 1.0 - lam;
        double kap_k = kappa[k];
        Vec v = Sinv * P.col(k);
        Vec g = P.adjoint() * v;  // g_i = p_i* Sinv p_k
        double denom = om * (om + lam * kap_k);
        Sinv = Sinv / om - (lam / denom) * (v * v.adjoint());
        for (int i = 0; i < M; ++i)
            kappa[i] = kappa[i] / om - lam * std::norm(g[i]) / denom;
        wts *= om;
        wts[k] += lam;
    }
    // shape matrix anchored at the worst point: z* E z <= 1 for all points
    S = Mat::Zero(m, m);
    for (int i = 0; i < M; ++i) S += wts[i] * P.col(i) * P.col(i).adjoint();
    Sinv = S.inverse();
    double k_max = 0;
    for (int i = 0; i < M; ++i)
        k_max = std::max(k_max, std::real(points[i].dot(Sinv * points[i])));
    Mat E = Sinv / k_max;
    return 0.5 * (E + E.adjoint());
}

double rho_cube(const MatrixWeightField& w, double p, const std::vector<std::size_t>& sites,
                const Vec& z) {
    const auto& pos = w.power(1.0 / p);
    double acc = 0;
    for (auto s : sites) acc += std::pow((pos[s] * z).norm(), p);
    return std::pow(acc / static_cast<double>(sites.size()), 1.0 / p);
}

void ReducingFamily::set_level(int level, std::vector<Mat> ops) {
    std::vector<Mat> inv;
    inv.reserve(ops.size());
    for (const auto& a : ops) inv.push_back(a.inverse());
    ops_[level] = std::move(ops);
    inv_[level] = std::move(inv);
    if (std::find(levels_.begin(), levels_.end(), level) == levels_.end()) {
        levels_.push_back(level);
        std::sort(levels_.begin(), levels_.end());
    }
}

void ReducingFamily::write_csv(std::ostream& os) const {
    os << "level,cube_index,row,col,re,im\n";
    os.precision(17);
    for (int lv : levels_) {
        const auto& ops = ops_.at(lv);
        for (std::size_t q = 0; q < ops.size(); ++q)
            for (Eigen::Index r = 0; r < ops[q].rows(); ++r)
                for (Eigen::Index c = 0; c < ops[q].cols(); ++c)
                    os << lv << ',' << q << ',' << r << ',' << c << ','
                       << ops[q](r, c).real() << ',' << ops[q](r, c).imag() << '\n';
    }
}

ReducingFamily build_reducing(const MatrixWeightField& w, double p, ReducingMethod method,
                              const std::vector<int>& levels, int john_directions,
                              std::uint64_t seed) {
    ReducingFamily fam(p, method);
    const TorusGrid& g = w.grid();
    for (int lv : levels) {
        if (lv < 0 || lv > g.level)
            throw std::invalid_argument("build_reducing: level outside grid depth");
        std::vector<Mat> ops(cube_count(g, lv));
        for (std::size_t q = 0; q < ops.size(); ++q) {
            auto sites = cube_samples(g, cube_from_flat(g, lv, q));
            if (method == ReducingMethod::gram2) {
                const auto& pw = w.power(2.0 / p);
                Mat acc = Mat::Zero(w.m(), w.m());
                for (auto s : sites) acc += pw[s];
                acc /= static_cast<double>(sites.size());
                ops[q] = matrix_power(acc, 0.5);
            } else {
                Rng rng(seed ^ (static_cast<std::uint64_t>(lv) << 32) ^ q);
                std::vector<Vec> pts;
                pts.reserve(john_directions);
                for (int i = 0; i < john_directions; ++i) {
                    Vec u = rng.unit_vector(w.m());
                    double r = rho_cube(w, p, sites, u);
                    if (!(r > 0))
                        throw std::runtime_error("weight not invertible on cube");
                    pts.push_back(u / r);
                }
                Mat E = mvee_shape(pts, 1e-7);
                ops[q] = matrix_power(E, 0.5);
            }
        }
        fam.set_level(lv, std::move(ops));
    }
    return fam;
}

std::pair<double, double> verify_reducing(ReducingFamily& family, const MatrixWeightField& w,
                                          double p, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("verify_reducing: trials must be >= 1");
    const TorusGrid& g = w.grid();
    Rng rng(seed);
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (int lv : family.levels()) {
        for (std::size_t q = 0; q < cube_count(g, lv); ++q) {
            auto sites = cube_samples(g, cube_from_flat(g, lv, q));
            const Mat& a = family.op(lv, q);
            for (int t = 0; t < trials; ++t) {
                Vec z = rng.unit_vector(w.m());
                double ratio = rho_cube(w, p, sites, z) / (a * z).norm();
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
        }
    }
    family.set_constants(lo, hi);
    return {lo, hi};
}

namespace {

double index_distance(const TorusGrid& g, int level, std::size_t qa, std::size_t qb) {
    int c = cubes_per_axis(level);
    auto coords = [&](std::size_t q) {
        return g.n == 1 ? std::array<int, 2>{static_cast<int>(q), 0}
                        : std::array<int, 2>{static_cast<int>(q) / c,
                                             static_cast<int>(q) % c};
    };
    auto a = coords(qa), b = coords(qb);
    double s = 0;
    for (int d = 0; d < g.n; ++d) {
        int t = std::abs(a[d] - b[d]);
        t = std::min(t, c - t);  // periodic index distance
        s += static_cast<double>(t) * t;
    }
    return std::sqrt(s);
}

}  // namespace

double weak_doubling_order(const ReducingFamily& family, const TorusGrid& grid,
                           int pairs_per_level, std::uint64_t seed) {
    if (family.levels().empty()) throw std::invalid_argument("weak_doubling_order: empty family");
    Rng rng(seed);
    double best = 0;
    int coarsest = family.levels().front();
    for (int lv : family.levels()) {
        std::size_t nq = cube_count(grid, lv);
        auto probe = [&](std::size_t qa, std::size_t qb) {
            if (qa == qb) return;
            double d = index_distance(grid, lv, qa, qb);
            double nrm = operator_norm(family.op(lv, qa) * family.op_inverse(lv, qb));
            best = std::max(best, std::log(nrm) / std::log1p(d));
        };
        if (lv == coarsest || nq * nq <= static_cast<std::size_t>(pairs_per_level)) {
            for (std::size_t qa = 0; qa < nq; ++qa)
                for (std::size_t qb = 0; qb < nq; ++qb) probe(qa, qb);
        } else {
            for (int t = 0; t < pairs_per_level; ++t)
                probe(rng.next_u64() % nq, rng.next_u64() % nq);
        }
    }
    return best;
}

double strong_doubling_check(const ReducingFamily& family, const TorusGrid& grid, double beta,
                             double p, int pairs, std::uint64_t seed) {
    const auto& lvls = family.levels();
    if (lvls.empty()) throw std::invalid_argument("strong_doubling_check: empty family");
    Rng rng(seed);
    double worst = 0;
    auto corner = [&](int lv, std::size_t q) {
        DyadicCube cube = cube_from_flat(grid, lv, q);
        double edge = 1.0 / cubes_per_axis(lv);
        return std::array<double, 2>{cube.index[0] * edge, cube.index[1] * edge};
    };
    for (int t = 0; t < pairs; ++t) {
        int la = lvls[rng.next_u64() % lvls.size()];
        int lb = lvls[rng.next_u64() % lvls.size()];
        std::size_t qa = rng.next_u64() % cube_count(grid, la);
        std::size_t qb = rng.next_u64() % cube_count(grid, lb);
        double ea = 1.0 / cubes_per_axis(la), eb = 1.0 / cubes_per_axis(lb);
        double lhs = std::pow(operator_norm(family.op(la, qa) * family.op_inverse(lb, qb)), p);
        double emax = std::max(ea, eb);
        double dist = torus_distance(grid.n, corner(la, qa), corner(lb, qb));
        double rhs = std::max(std::pow(eb / ea, grid.n), std::pow(ea / eb, beta - grid.n)) *
                     std::pow(1.0 + dist / emax, beta);
        worst = std::max(worst, lhs / rhs);
    }
    return worst;
}

std::vector<BoundScanEntry> reducing_bound_scan(const ReducingFamily& family,
                                                const MatrixWeightField& w, double p,
                                                int eta_steps) {
    const TorusGrid& g = w.grid();
    const auto& neg = w.power(-1.0 / p);
    std::vector<BoundScanEntry> out;
    auto sup_over_cubes = [&](auto&& cube_value) {
        double sup = 0;
        for (int lv : family.levels())
            for (std::size_t q = 0; q < cube_count(g, lv); ++q) {
                auto sites = cube_samples(g, cube_from_flat(g, lv, q));
                sup = std::max(sup, cube_value(lv, q, sites));
            }
        return sup;
    };
    if (p > 1) {
        double pp = p / (p - 1.0);
        for (int i = 1; i <= eta_steps; ++i) {
            double eta = pp * i / eta_steps;
            double v = sup_over_cubes([&](int lv, std::size_t q, const auto& sites) {
                double mean = 0;
                for (auto s : sites)
                    mean += std::pow(operator_norm(family.op(lv, q) * neg[s]), eta);
                return mean / static_cast<double>(sites.size());
            });
            out.push_back({eta, v});
        }
    } else {
        double v = sup_over_cubes([&](int lv, std::size_t q, const auto& sites) {
            double mx = 0;
            for (auto s : sites)
                mx = std::max(mx, operator_norm(family.op(lv, q) * neg[s]));
            return mx;
        });
        out.push_back({std::numeric_limits<double>::quiet_NaN(), v});
    }
    return out;
}

}  // namespace mwtl
