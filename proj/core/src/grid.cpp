#include "mwtl/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace mwtl {

TorusGrid::TorusGrid(int dim, int depth) : n(dim), level(depth) {
    if (n != 1 && n != 2) throw std::invalid_argument("TorusGrid: dimension must be 1 or 2");
    if (level < 3) throw std::invalid_argument("TorusGrid: dyadic depth must be >= 3");
}

std::size_t TorusGrid::total_samples() const {
    std::size_t N = samples_per_axis();
    return n == 1 ? N : N * N;
}

std::array<int, 2> TorusGrid::site_coords(std::size_t site) const {
    int N = samples_per_axis();
    if (n == 1) return {static_cast<int>(site), 0};
    return {static_cast<int>(site / N), static_cast<int>(site % N)};
}

std::size_t TorusGrid::site_index(std::array<int, 2> c) const {
    int N = samples_per_axis();
    auto wrap = [N](int i) { return ((i % N) + N) % N; };
    if (n == 1) return wrap(c[0]);
    return static_cast<std::size_t>(wrap(c[0])) * N + wrap(c[1]);
}

std::array<double, 2> TorusGrid::point(std::size_t site) const {
    auto c = site_coords(site);
    double h = spacing();
    return {c[0] * h, c[1] * h};
}

int TorusGrid::freq_of_bin(int i) const {
    int N = samples_per_axis();
    return i < N / 2 ? i : i - N;
}

std::array<int, 2> TorusGrid::freq_coords(std::size_t site) const {
    auto c = site_coords(site);
    return {freq_of_bin(c[0]), n == 2 ? freq_of_bin(c[1]) : 0};
}

double torus_distance(int n, const std::array<double, 2>& a, const std::array<double, 2>& b) {
    double s = 0;
    for (int d = 0; d < n; ++d) {
        double t = std::fabs(a[d] - b[d]);
        t = std::min(t, 1.0 - t);
        s += t * t;
    }
    return std::sqrt(s);
}

double torus_distance(const TorusGrid& g, std::size_t a, std::size_t b) {
    return torus_distance(g.n, g.point(a), g.point(b));
}

int cubes_per_axis(int level) { return 1 << level; }

std::size_t cube_count(const TorusGrid& g, int level) {
    std::size_t c = cubes_per_axis(level);
    return g.n == 1 ? c : c * c;
}

std::size_t cube_flat_index(const TorusGrid& g, const DyadicCube& q) {
    int c = cubes_per_axis(q.level);
    return g.n == 1 ? q.index[0] : static_cast<std::size_t>(q.index[0]) * c + q.index[1];
}

DyadicCube cube_from_flat(const TorusGrid& g, int level, std::size_t flat) {
    int c = cubes_per_axis(level);
    if (g.n == 1) return {level, {static_cast<int>(flat), 0}};
    return {level, {static_cast<int>(flat / c), static_cast<int>(flat % c)}};
}

std::vector<std::size_t> cube_samples(const TorusGrid& g, const DyadicCube& q) {
    if (q.level < 0 || q.level > g.level)
        throw std::invalid_argument("cube_samples: level outside grid depth");
    int s = g.samples_per_axis() >> q.level;
    std::vector<std::size_t> out;
    if (g.n == 1) {
        out.reserve(s);
        for (int i = 0; i < s; ++i) out.push_back(g.site_index({q.index[0] * s + i, 0}));
    } else {
        out.reserve(static_cast<std::size_t>(s) * s);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j)
                out.push_back(g.site_index({q.index[0] * s + i, q.index[1] * s + j}));
    }
    return out;
}

std::vector<std::size_t> double_cube_samples(const TorusGrid& g, const DyadicCube& q) {
    if (q.level < 1) throw std::invalid_argument("doubling exceeds domain");
    if (q.level > g.level - 1)
        throw std::invalid_argument("double_cube_samples: cube too fine to double");
    int s = g.samples_per_axis() >> q.level;
    int half = s / 2;
    std::vector<std::size_t> out;
    if (g.n == 1) {
        out.reserve(2 * s);
        for (int i = 0; i < 2 * s; ++i)
            out.push_back(g.site_index({q.index[0] * s - half + i, 0}));
    } else {
        out.reserve(4 * static_cast<std::size_t>(s) * s);
        for (int i = 0; i < 2 * s; ++i)
            for (int j = 0; j < 2 * s; ++j)
                out.push_back(g.site_index({q.index[0] * s - half + i, q.index[1] * s - half + j}));
    }
    return out;
}

DyadicCube cube_containing(const TorusGrid& g, int level, std::size_t site) {
    int s = g.samples_per_axis() >> level;
    auto c = g.site_coords(site);
    return {level, {c[0] / s, g.n == 2 ? c[1] / s : 0}};
}

SampledField::SampledField(TorusGrid grid, int m)
    : grid_(grid), m_(m), values_(grid.total_samples() * m, cplx{0, 0}) {
    if (m < 1) throw std::invalid_argument("SampledField: vector dimension must be >= 1");
}

bool SampledField::finite() const {
    return std::all_of(values_.begin(), values_.end(), [](const cplx& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

namespace {

SampledField fft_impl(const SampledField& f, int sign) {
    const TorusGrid& g = f.grid();
    int N = g.samples_per_axis();
    std::size_t total = g.total_samples();
    SampledField out(g, f.m());
    out.set_band_limit(f.band_limit());
    std::vector<cplx> buf(total);
    double scale = 1.0 / std::pow(static_cast<double>(N), g.n / 2.0);
    for (int c = 0; c < f.m(); ++c) {
        for (std::size_t s = 0; s < total; ++s) buf[s] = f.at(s, c);
        auto* data = reinterpret_cast<fftw_complex*>(buf.data());
        fftw_plan plan = g.n == 1
                             ? fftw_plan_dft_1d(N, data, data, sign, FFTW_ESTIMATE)
                             : fftw_plan_dft_2d(N, N, data, data, sign, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
        for (std::size_t s = 0; s < total; ++s) out.at(s, c) = buf[s] * scale;
    }
    return out;
}

}  // namespace

SampledField fft_forward(const SampledField& f) { return fft_impl(f, FFTW_FORWARD); }
SampledField fft_inverse(const SampledField& f) { return fft_impl(f, FFTW_BACKWARD); }

SampledField convolve_symbol(const SampledField& f,
                             const std::function<cplx(std::array<int, 2>)>& symbol) {
    SampledField spec = fft_forward(f);
    std::size_t total = f.grid().total_samples();
    for (std::size_t s = 0; s < total; ++s) {
        cplx sv = symbol(f.grid().freq_coords(s));
        for (int c = 0; c < f.m(); ++c) spec.at(s, c) *= sv;
    }
    return fft_inverse(spec);
}

cplx cube_mean(const SampledField& f, const DyadicCube& q, int comp) {
    auto sites = cube_samples(f.grid(), q);
    cplx acc{0, 0};
    for (auto s : sites) acc += f.at(s, comp);
    return acc / static_cast<double>(sites.size());
}

double cube_mean(const RealField& f, const DyadicCube& q) {
    auto sites = cube_samples(f.grid(), q);
    double acc = 0;
    for (auto s : sites) acc += f[s];
    return acc / static_cast<double>(sites.size());
}

SampledField dilate_by_two(const SampledField& f) {
    const TorusGrid& g = f.grid();
    SampledField out(g, f.m());
    std::size_t total = g.total_samples();
    for (std::size_t s = 0; s < total; ++s) {
        auto c = g.site_coords(s);
        std::size_t src = g.site_index({2 * c[0], g.n == 2 ? 2 * c[1] : 0});
        for (int k = 0; k < f.m(); ++k) out.at(s, k) = f.at(src, k);
    }
    if (f.band_limit()) out.set_band_limit(2 * *f.band_limit());
    return out;
}

void write_field_csv(std::ostream& os, const SampledField& f) {
    os << f.grid().n << ',' << f.grid().level << ',' << f.m() << ','
       << (f.band_limit() ? *f.band_limit() : -1) << '\n';
    os.precision(17);
    std::size_t total = f.grid().total_samples();
    for (std::size_t s = 0; s < total; ++s) {
        for (int c = 0; c < f.m(); ++c) {
            if (c) os << ',';
            os << f.at(s, c).real() << ',' << f.at(s, c).imag();
        }
        os << '\n';
    }
}

SampledField read_field_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("field csv: empty stream");
    std::istringstream hdr(line);
    int n, L, m, bl;
    char comma;
    hdr >> n >> comma >> L >> comma >> m >> comma >> bl;
    SampledField f(TorusGrid(n, L), m);
    if (bl >= 0) f.set_band_limit(bl);
    std::size_t total = f.grid().total_samples();
    for (std::size_t s = 0; s < total; ++s) {
        if (!std::getline(is, line)) throw std::runtime_error("field csv: truncated");
        std::istringstream row(line);
        for (int c = 0; c < m; ++c) {
            double re, im;
            row >> re >> comma >> im;
            if (c + 1 < m) row >> comma;
            f.at(s, c) = {re, im};
        }
    }
    return f;
}

BoxSums::BoxSums(const RealField& f) : n_(f.grid().n), N_(f.grid().samples_per_axis()) {
    if (n_ == 1) {
        pref_.assign(N_ + 1, 0.0);
        for (int i = 0; i < N_; ++i) pref_[i + 1] = pref_[i] + f[i];
    } else {
        pref_.assign(static_cast<std::size_t>(N_ + 1) * (N_ + 1), 0.0);
        auto P = [this](int i, int j) -> double& {
            return pref_[static_cast<std::size_t>(i) * (N_ + 1) + j];
        };
        for (int i = 0; i < N_; ++i)
            for (int j = 0; j < N_; ++j)
                P(i + 1, j + 1) = f[static_cast<std::size_t>(i) * N_ + j] + P(i, j + 1) +
                                  P(i + 1, j) - P(i, j);
    }
}

double BoxSums::axis_range_1d(int start, int len) const {
    // unwrapped [a,b) with 0 <= a < N, b <= N
    return pref_[start + len] - pref_[start];
}

double BoxSums::sum(std::array<int, 2> start, std::array<int, 2> len) const {
    auto wrap = [this](int i) { return ((i % N_) + N_) % N_; };
    // split each axis range into at most two unwrapped segments
    struct Seg { int a, l; };
    auto split = [&](int s, int l) {
        s = wrap(s);
        std::array<Seg, 2> segs{};
        int cnt = 0;
        if (s + l <= N_) {
            segs[cnt++] = {s, l};
        } else {
            segs[cnt++] = {s, N_ - s};
            segs[cnt++] = {0, l - (N_ - s)};
        }
        return std::pair{segs, cnt};
    };
    if (n_ == 1) {
        auto [segs, cnt] = split(start[0], len[0]);
        double acc = 0;
        for (int i = 0; i < cnt; ++i) acc += axis_range_1d(segs[i].a, segs[i].l);
        return acc;
    }
    auto P = [this](int i, int j) {
        return pref_[static_cast<std::size_t>(i) * (N_ + 1) + j];
    };
    auto rect = [&](int a0, int l0, int a1, int l1) {
        return P(a0 + l0, a1 + l1) - P(a0, a1 + l1) - P(a0 + l0, a1) + P(a0, a1);
    };
    auto [s0, c0] = split(start[0], len[0]);
    auto [s1, c1] = split(start[1], len[1]);
    double acc = 0;
    for (int i = 0; i < c0; ++i)
        for (int j = 0; j < c1; ++j) acc += rect(s0[i].a, s0[i].l, s1[j].a, s1[j].l);
    return acc;
}

}  // namespace mwtl
