#include "mwtl/norms.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>

namespace mwtl {

double SpaceParams::a_threshold(int n, double beta) const {
    return n / std::min({1.0, p, q}) + beta / p;
}

double SpaceParams::lambda_threshold(int n, double beta) const {
    return 1.0 / std::min({1.0, p, q}) + beta / (n * p);
}

bool SpaceParams::theorem_valid(int n, double beta) const {
    return a > a_threshold(n, beta) && lambda > lambda_threshold(n, beta);
}

SpaceParams SpaceParams::with_defaults(double alpha, double p, double q, int n, double beta) {
    SpaceParams s;
    s.alpha = alpha;
    s.p = p;
    s.q = q;
    s.a = s.a_threshold(n, beta) + 1.0;
    s.lambda = s.lambda_threshold(n, beta) + 0.5;
    return s;
}

namespace {

// circular sliding-window maximum, window length len, value at x covers
// starts in (x-len, x]
std::vector<double> circular_window_max(const std::vector<double>& v, int len) {
    int N = static_cast<int>(v.size());
    std::vector<double> out(N);
    std::deque<int> dq;  // indices into the virtually doubled array
    auto val = [&](int i) { return v[i % N]; };
    // window of starts for position x is [x-len+1, x]
    for (int i = -len + 1; i <= N - 1; ++i) {
        int ii = i + N;  // shifted to nonnegative
        while (!dq.empty() && val(dq.back()) <= val(ii)) dq.pop_back();
        dq.push_back(ii);
        int x = i;  // newest start; window end
        if (x >= 0) {
            while (dq.front() < ii - len + 1) dq.pop_front();
            out[x] = val(dq.front());
        }
    }
    return out;
}

}  // namespace

RealField hl_maximal(const RealField& h) {
    const TorusGrid& g = h.grid();
    int N = g.samples_per_axis();
    for (std::size_t i = 0; i < h.size(); ++i)
        if (h[i] < 0) throw std::invalid_argument("hl_maximal: field must be nonnegative");
    BoxSums box(h);
    RealField out(g, 0.0);
    if (g.n == 1) {
        for (int len = 1; len <= N; ++len) {
            std::vector<double> means(N);
            for (int s = 0; s < N; ++s) means[s] = box.sum({s, 0}, {len, 1}) / len;
            auto mx = circular_window_max(means, len);
            for (int x = 0; x < N; ++x) out[x] = std::max(out[x], mx[x]);
        }
    } else {
        for (int len = 1; len <= N; ++len) {
            double area = static_cast<double>(len) * len;
            std::vector<std::vector<double>> means(N, std::vector<double>(N));
            for (int s0 = 0; s0 < N; ++s0)
                for (int s1 = 0; s1 < N; ++s1)
                    means[s0][s1] = box.sum({s0, s1}, {len, len}) / area;
            // per-row then per-column window max
            std::vector<std::vector<double>> rowmax(N);
            for (int s0 = 0; s0 < N; ++s0) rowmax[s0] = circular_window_max(means[s0], len);
            std::vector<double> col(N);
            for (int x1 = 0; x1 < N; ++x1) {
                for (int s0 = 0; s0 < N; ++s0) col[s0] = rowmax[s0][x1];
                auto mx = circular_window_max(col, len);
                for (int x0 = 0; x0 < N; ++x0) {
                    auto& o = out[static_cast<std::size_t>(x0) * N + x1];
                    o = std::max(o, mx[x0]);
                }
            }
        }
    }
    return out;
}

RealField ej_average(const RealField& h, int j) {
    const TorusGrid& g = h.grid();
    if (j > g.level) throw std::invalid_argument("ej_average: level too fine");
    RealField out(g);
    for (std::size_t q = 0; q < cube_count(g, j); ++q) {
        DyadicCube cube = cube_from_flat(g, j, q);
        double mean = cube_mean(h, cube);
        for (auto s : cube_samples(g, cube)) out[s] = mean;
    }
    return out;
}

RealField gamma_field(const MatrixWeightField& w, const ReducingFamily& family, double p,
                      int j) {
    if (!family.covers(j)) throw std::invalid_argument("gamma_field: level not covered");
    const TorusGrid& g = w.grid();
    const auto& pos = w.power(1.0 / p);
    RealField out(g);
    for (std::size_t q = 0; q < cube_count(g, j); ++q) {
        const Mat& ainv = family.op_inverse(j, q);
        for (auto s : cube_samples(g, cube_from_flat(g, j, q)))
            out[s] = operator_norm(pos[s] * ainv);
    }
    return out;
}

double lp_norm(const RealField& v, double p) {
    double acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i) acc += std::pow(v[i], p);
    return std::pow(acc / static_cast<double>(v.size()), 1.0 / p);
}

namespace {

struct Pieces {
    std::vector<SampledField> by_scale;  // index 0 -> j_min
    int j_min;
};

Pieces compute_pieces(const SampledField& f, const AnalysisProfile& profile) {
    Pieces ps;
    ps.j_min = profile.j_min();
    for (int j = profile.j_min(); j <= profile.j_max(); ++j)
        ps.by_scale.push_back(lp_piece(f, profile, j));
    return ps;
}

/// |B v| for the m-vector at a field site.
double apply_norm(const Mat& b, const SampledField& f, std::size_t site) {
    int m = f.m();
    double acc = 0;
    for (int r = 0; r < m; ++r) {
        cplx s{0, 0};
        for (int c = 0; c < m; ++c) s += b(r, c) * f.at(site, c);
        acc += std::norm(s);
    }
    return std::sqrt(acc);
}

/// ell^q over scales then L^p over the torus of 2^{j alpha} v_j(x).
double lp_lq(const std::vector<RealField>& v, int j_min, const SpaceParams& params) {
    if (v.empty()) return 0.0;
    const TorusGrid& g = v.front().grid();
    RealField agg(g);
    bool qinf = std::isinf(params.q);
    for (std::size_t i = 0; i < v.size(); ++i) {
        double w = std::pow(2.0, (j_min + static_cast<int>(i)) * params.alpha);
        for (std::size_t s = 0; s < agg.size(); ++s) {
            double t = w * v[i][s];
            if (qinf)
                agg[s] = std::max(agg[s], t);
            else
                agg[s] += std::pow(t, params.q);
        }
    }
    if (!qinf)
        for (std::size_t s = 0; s < agg.size(); ++s) agg[s] = std::pow(agg[s], 1.0 / params.q);
    return lp_norm(agg, params.p);
}

/// decay[offset] = (1 + 2^j dist(0, offset))^(-a) over all site offsets
RealField decay_table(const TorusGrid& g, int j, double a) {
    RealField out(g);
    double scale = std::pow(2.0, j);
    auto origin = std::array<double, 2>{0.0, 0.0};
    for (std::size_t s = 0; s < out.size(); ++s)
        out[s] = std::pow(1.0 + scale * torus_distance(g.n, g.point(s), origin), -a);
    return out;
}

std::size_t offset_site(const TorusGrid& g, std::size_t x, std::size_t y) {
    auto cx = g.site_coords(x), cy = g.site_coords(y);
    return g.site_index({cx[0] - cy[0], cx[1] - cy[1]});
}

/// Ball sample offsets {o : dist(0,o) < radius}.
std::vector<std::size_t> ball_offsets(const TorusGrid& g, double radius) {
    std::vector<std::size_t> out;
    auto origin = std::array<double, 2>{0.0, 0.0};
    for (std::size_t s = 0; s < g.total_samples(); ++s)
        if (torus_distance(g.n, g.point(s), origin) < radius) out.push_back(s);
    return out;
}

}  // namespace

double norm_F(const SampledField& f, const MatrixWeightField& w, const SpaceParams& params,
              const AnalysisProfile& profile) {
    auto ps = compute_pieces(f, profile);
    const auto& pos = w.power(1.0 / params.p);
    std::vector<RealField> v;
    for (const auto& piece : ps.by_scale) {
        RealField field(f.grid());
        for (std::size_t s = 0; s < field.size(); ++s)
            field[s] = apply_norm(pos[s], piece, s);
        v.push_back(std::move(field));
    }
    return lp_lq(v, ps.j_min, params);
}

double norm_F_AQ(const SampledField& f, const ReducingFamily& family,
                 const SpaceParams& params, const AnalysisProfile& profile) {
    auto ps = compute_pieces(f, profile);
    const TorusGrid& g = f.grid();
    std::vector<RealField> v;
    for (std::size_t i = 0; i < ps.by_scale.size(); ++i) {
        int j = ps.j_min + static_cast<int>(i);
        if (!family.covers(j)) throw std::invalid_argument("norm_F_AQ: level not covered");
        RealField field(g);
        for (std::size_t q = 0; q < cube_count(g, j); ++q) {
            const Mat& a = family.op(j, q);
            for (auto s : cube_samples(g, cube_from_flat(g, j, q)))
                field[s] = apply_norm(a, ps.by_scale[i], s);
        }
        v.push_back(std::move(field));
    }
    return lp_lq(v, ps.j_min, params);
}

RealField peetre_field(const SampledField& f, const MatrixWeightField& w, double p, int j,
                       double a, const AnalysisProfile& profile) {
    if (a <= 0) throw std::invalid_argument("peetre_field: exponent must be positive");
    SampledField piece = lp_piece(f, profile, j);
    const TorusGrid& g = f.grid();
    const auto& pos = w.power(1.0 / p);
    RealField decay = decay_table(g, j, a);
    RealField out(g);
    std::size_t total = g.total_samples();
    for (std::size_t x = 0; x < total; ++x) {
        const Mat& b = pos[x];
        double best = 0;
        for (std::size_t y = 0; y < total; ++y)
            best = std::max(best, apply_norm(b, piece, y) * decay[offset_site(g, x, y)]);
        out[x] = best;
    }
    return out;
}

double norm_star(const SampledField& f, const MatrixWeightField& w, const SpaceParams& params,
                 const AnalysisProfile& profile) {
    std::vector<RealField> v;
    for (int j = profile.j_min(); j <= profile.j_max(); ++j)
        v.push_back(peetre_field(f, w, params.p, j, params.a, profile));
    return lp_lq(v, profile.j_min(), params);
}

namespace {

/// Per-scale star/starstar fields for the A_Q variants; starstar takes the
/// cube max of the pointwise star field.
std::pair<RealField, RealField> star_fields_aq(const SampledField& piece,
                                               const ReducingFamily& family, int j, double a) {
    const TorusGrid& g = piece.grid();
    RealField decay = decay_table(g, j, a);
    RealField star(g), starstar(g);
    std::size_t total = g.total_samples();
    std::vector<double> u(total);
    for (std::size_t q = 0; q < cube_count(g, j); ++q) {
        const Mat& aq = family.op(j, q);
        for (std::size_t y = 0; y < total; ++y) u[y] = apply_norm(aq, piece, y);
        auto sites = cube_samples(g, cube_from_flat(g, j, q));
        double cube_best = 0;
        for (auto x : sites) {
            double best = 0;
            for (std::size_t y = 0; y < total; ++y)
                best = std::max(best, u[y] * decay[offset_site(g, x, y)]);
            star[x] = best;
            cube_best = std::max(cube_best, best);
        }
        for (auto x : sites) starstar[x] = cube_best;
    }
    return {std::move(star), std::move(starstar)};
}

}  // namespace

double norm_star_AQ(const SampledField& f, const ReducingFamily& family,
                    const SpaceParams& params, const AnalysisProfile& profile) {
    std::vector<RealField> v;
    for (int j = profile.j_min(); j <= profile.j_max(); ++j)
        v.push_back(star_fields_aq(lp_piece(f, profile, j), family, j, params.a).first);
    return lp_lq(v, profile.j_min(), params);
}

double norm_starstar_AQ(const SampledField& f, const ReducingFamily& family,
                        const SpaceParams& params, const AnalysisProfile& profile) {
    std::vector<RealField> v;
    for (int j = profile.j_min(); j <= profile.j_max(); ++j)
        v.push_back(star_fields_aq(lp_piece(f, profile, j), family, j, params.a).second);
    return lp_lq(v, profile.j_min(), params);
}

double norm_square(const SampledField& f, const MatrixWeightField& w,
                   const SpaceParams& params, const AnalysisProfile& profile) {
    const TorusGrid& g = f.grid();
    const auto& pos = w.power(1.0 / params.p);
    bool qinf = std::isinf(params.q);
    std::vector<RealField> v;
    for (int j = profile.j_min(); j <= profile.j_max(); ++j) {
        SampledField piece = lp_piece(f, profile, j);
        auto ball = ball_offsets(g, std::pow(2.0, -j));
        RealField field(g);
        for (std::size_t x = 0; x < g.total_samples(); ++x) {
            const Mat& b = pos[x];
            auto cx = g.site_coords(x);
            double acc = 0;
            for (auto off : ball) {
                auto co = g.site_coords(off);
                std::size_t y = g.site_index({cx[0] + co[0], cx[1] + co[1]});
                double t = apply_norm(b, piece, y);
                if (qinf)
                    acc = std::max(acc, t);
                else
                    acc += std::pow(t, params.q);
            }
            field[x] = qinf ? acc : std::pow(acc / static_cast<double>(ball.size()),
                                             1.0 / params.q);
        }
        v.push_back(std::move(field));
    }
    return lp_lq(v, profile.j_min(), params);
}

namespace {

/// g_lambda* inner value at base point z against precomputed |B piece| values.
double gstar_inner(const TorusGrid& g, const std::vector<double>& u, const RealField& decay,
                   std::size_t z, int j, double q) {
    std::size_t total = g.total_samples();
    if (std::isinf(q)) {
        double best = 0;
        for (std::size_t y = 0; y < total; ++y)
            best = std::max(best, u[y] * decay[offset_site(g, z, y)]);
        return best;
    }
    double acc = 0;
    for (std::size_t y = 0; y < total; ++y)
        acc += std::pow(u[y], q) * decay[offset_site(g, z, y)];
    double cell = 1.0 / static_cast<double>(total);  // N^{-n}
    return std::pow(std::pow(2.0, j * g.n) * cell * acc, 1.0 / q);
}

void check_tail(const TorusGrid& g, const SpaceParams& params) {
    if (!std::isinf(params.q) && params.lambda * g.n * params.q <= g.n)
        throw std::invalid_argument("tail divergence");
}

}  // namespace

double norm_gstar(const SampledField& f, const MatrixWeightField& w,
                  const SpaceParams& params, const AnalysisProfile& profile) {
    const TorusGrid& g = f.grid();
    check_tail(g, params);
    const auto& pos = w.power(1.0 / params.p);
    bool qinf = std::isinf(params.q);
    double decay_exp = qinf ? params.lambda * g.n : params.lambda * g.n * params.q;
    std::vector<RealField> v;
    std::vector<double> u(g.total_samples());
    for (int j = profile.j_min(); j <= profile.j_max(); ++j) {
        SampledField piece = lp_piece(f, profile, j);
        RealField decay = decay_table(g, j, decay_exp);
        RealField field(g);
        for (std::size_t x = 0; x < g.total_samples(); ++x) {
            const Mat& b = pos[x];
            for (std::size_t y = 0; y < g.total_samples(); ++y)
                u[y] = apply_norm(b, piece, y);
            field[x] = gstar_inner(g, u, decay, x, j, params.q);
        }
        v.push_back(std::move(field));
    }
    return lp_lq(v, profile.j_min(), params);
}

double norm_gstar_AQ(const SampledField& f, const ReducingFamily& family,
                     const SpaceParams& params, const AnalysisProfile& profile) {
    const TorusGrid& g = f.grid();
    check_tail(g, params);
    bool qinf = std::isinf(params.q);
    double decay_exp = qinf ? params.lambda * g.n : params.lambda * g.n * params.q;
    std::vector<RealField> v;
    std::vector<double> u(g.total_samples());
    for (int j = profile.j_min(); j <= profile.j_max(); ++j) {
        if (!family.covers(j)) throw std::invalid_argument("norm_gstar_AQ: level not covered");
        SampledField piece = lp_piece(f, profile, j);
        RealField decay = decay_table(g, j, decay_exp);
        RealField field(g);
        for (std::size_t q = 0; q < cube_count(g, j); ++q) {
            const Mat& aq = family.op(j, q);
            for (std::size_t y = 0; y < g.total_samples(); ++y)
                u[y] = apply_norm(aq, piece, y);
            auto sites = cube_samples(g, cube_from_flat(g, j, q));
            double cube_best = 0;
            for (auto z : sites)
                cube_best = std::max(cube_best, gstar_inner(g, u, decay, z, j, params.q));
            for (auto z : sites) field[z] = cube_best;
        }
        v.push_back(std::move(field));
    }
    return lp_lq(v, profile.j_min(), params);
}

double jcf_check(const RealField& h, int j, double eta) {
    const TorusGrid& g = h.grid();
    if (eta <= g.n) throw std::invalid_argument("jcf_check: eta must exceed n");
    RealField habs(g);
    for (std::size_t i = 0; i < h.size(); ++i) habs[i] = std::fabs(h[i]);
    std::size_t nq = cube_count(g, j);
    std::vector<double> means(nq);
    for (std::size_t q = 0; q < nq; ++q)
        means[q] = cube_mean(habs, cube_from_flat(g, j, q));
    int c = cubes_per_axis(j);
    auto idx_dist = [&](std::size_t qa, std::size_t qb) {
        auto split = [&](std::size_t q) {
            return g.n == 1 ? std::array<int, 2>{static_cast<int>(q), 0}
                            : std::array<int, 2>{static_cast<int>(q) / c,
                                                 static_cast<int>(q) % c};
        };
        auto A = split(qa), B = split(qb);
        double s = 0;
        for (int d = 0; d < g.n; ++d) {
            int t = std::abs(A[d] - B[d]);
            t = std::min(t, c - t);
            s += static_cast<double>(t) * t;
        }
        return std::sqrt(s);
    };
    std::vector<double> lhs(nq, 0.0);
    for (std::size_t qa = 0; qa < nq; ++qa)
        for (std::size_t qb = 0; qb < nq; ++qb)
            lhs[qa] += std::pow(1.0 + idx_dist(qa, qb), -eta) * means[qb];
    RealField maximal = hl_maximal(habs);
    double worst = 0;
    for (std::size_t q = 0; q < nq; ++q) {
        for (auto x : cube_samples(g, cube_from_flat(g, j, q))) {
            if (lhs[q] == 0.0) continue;
            worst = std::max(worst, lhs[q] / maximal[x]);
        }
    }
    return worst;
}

namespace {

double lplq_scalar(const std::vector<RealField>& fields, double p, double q) {
    if (fields.empty()) return 0.0;
    const TorusGrid& g = fields.front().grid();
    RealField agg(g);
    bool qinf = std::isinf(q);
    for (const auto& f : fields)
        for (std::size_t s = 0; s < agg.size(); ++s) {
            double t = std::fabs(f[s]);
            if (qinf)
                agg[s] = std::max(agg[s], t);
            else
                agg[s] += std::pow(t, q);
        }
    if (!qinf)
        for (std::size_t s = 0; s < agg.size(); ++s) agg[s] = std::pow(agg[s], 1.0 / q);
    return lp_norm(agg, p);
}

}  // namespace

double fs_check(const std::vector<RealField>& h, double p, double q) {
    if (p <= 1 || q <= 1) throw std::invalid_argument("fs_check: need p, q in (1, inf]");
    std::vector<RealField> maxed;
    maxed.reserve(h.size());
    for (const auto& f : h) {
        RealField habs(f.grid());
        for (std::size_t i = 0; i < f.size(); ++i) habs[i] = std::fabs(f[i]);
        maxed.push_back(hl_maximal(habs));
    }
    double den = lplq_scalar(h, p, q);
    if (den == 0.0) return 0.0;
    return lplq_scalar(maxed, p, q) / den;
}

double c38_check(const MatrixWeightField& w, const ReducingFamily& family, double p, double q,
                 const std::vector<RealField>& f_per_level) {
    const auto& levels = family.levels();
    if (f_per_level.size() != levels.size())
        throw std::invalid_argument("c38_check: one field per covered level expected");
    std::vector<RealField> ej, gej;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        RealField e = ej_average(f_per_level[i], levels[i]);
        RealField gam = gamma_field(w, family, p, levels[i]);
        RealField ge(e.grid());
        for (std::size_t s = 0; s < e.size(); ++s) ge[s] = gam[s] * e[s];
        ej.push_back(std::move(e));
        gej.push_back(std::move(ge));
    }
    double den = lplq_scalar(ej, p, q);
    if (den == 0.0) return 0.0;
    return lplq_scalar(gej, p, q) / den;
}

NormReport norm_report(const SampledField& f, const MatrixWeightField& w,
                       const ReducingFamily& family, const SpaceParams& params,
                       const AnalysisProfile& profile) {
    NormReport r;
    r.values["F"] = norm_F(f, w, params, profile);
    r.values["F_AQ"] = norm_F_AQ(f, family, params, profile);
    r.values["star"] = norm_star(f, w, params, profile);
    r.values["star_AQ"] = norm_star_AQ(f, family, params, profile);
    r.values["starstar_AQ"] = norm_starstar_AQ(f, family, params, profile);
    r.values["square"] = norm_square(f, w, params, profile);
    r.values["gstar"] = norm_gstar(f, w, params, profile);
    r.values["gstar_AQ"] = norm_gstar_AQ(f, family, params, profile);
    return r;
}

EquivalenceReport equivalence_report(const std::vector<SampledField>& corpus,
                                     const MatrixWeightField& w, const ReducingFamily& family,
                                     const SpaceParams& params, const AnalysisProfile& profile) {
    EquivalenceReport rep;
    for (const auto& f : corpus) rep.members.push_back(norm_report(f, w, family, params, profile));
    static const char* kinds[] = {"F",      "F_AQ",  "star",  "star_AQ",
                                  "starstar_AQ", "square", "gstar", "gstar_AQ"};
    for (const char* num : kinds) {
        for (const char* den : kinds) {
            if (std::string(num) == den) continue;
            PairSpread ps;
            ps.numerator = num;
            ps.denominator = den;
            ps.max_ratio = 0;
            ps.min_ratio = std::numeric_limits<double>::infinity();
            bool any = false;
            for (const auto& m : rep.members) {
                double a = m.values.at(num), b = m.values.at(den);
                if (a == 0.0 && b == 0.0) continue;  // zero member: ratio skipped
                double r = a / b;
                ps.max_ratio = std::max(ps.max_ratio, r);
                ps.min_ratio = std::min(ps.min_ratio, r);
                any = true;
            }
            if (any) rep.pairs.push_back(ps);
        }
    }
    return rep;
}

void EquivalenceReport::write_csv(std::ostream& os, const std::string& config_id) const {
    os << "config_id,member_id,norm_kind,value\n";
    os.precision(12);
    for (std::size_t i = 0; i < members.size(); ++i)
        for (const auto& [k, v] : members[i].values)
            os << config_id << ',' << i << ',' << k << ',' << v << '\n';
}

std::string EquivalenceReport::aggregate_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : pairs) {
        arr.push_back({{"pair", p.numerator + "/" + p.denominator},
                       {"max_ratio", p.max_ratio},
                       {"min_ratio", p.min_ratio},
                       {"spread", p.spread()}});
    }
    return arr.dump(2);
}

}  // namespace mwtl
