#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

namespace mwtl {

using cplx = std::complex<double>;

/// Uniform periodic sampling lattice on [0,1)^n with N = 2^level samples
/// per axis. n is 1 or 2.
struct TorusGrid {
    int n = 1;
    int level = 3;

    TorusGrid() = default;
    TorusGrid(int dim, int depth);

    int samples_per_axis() const { return 1 << level; }
    double spacing() const { return 1.0 / samples_per_axis(); }
    std::size_t total_samples() const;

    std::array<int, 2> site_coords(std::size_t site) const;
    std::size_t site_index(std::array<int, 2> c) const;
    /// Physical coordinate of a sample (row-major axis order).
    std::array<double, 2> point(std::size_t site) const;

    /// Signed integer frequency of FFT bin i along one axis, in [-N/2, N/2).
    int freq_of_bin(int i) const;
    std::array<int, 2> freq_coords(std::size_t site) const;

    bool operator==(const TorusGrid&) const = default;
};

/// Shortest wrapped distance between two points of [0,1)^n.
double torus_distance(const TorusGrid& g, std::size_t a, std::size_t b);
/// Wrapped distance between physical points.
double torus_distance(int n, const std::array<double, 2>& a, const std::array<double, 2>& b);

/// Dyadic cube Q = prod 2^{-j}[k_i, k_i+1) on the torus.
struct DyadicCube {
    int level = 0;
    std::array<int, 2> index = {0, 0};
};

/// Sample indices of Q; (N/2^j)^n sites.
std::vector<std::size_t> cube_samples(const TorusGrid& g, const DyadicCube& q);
/// Sample indices of the concentric double 2Q, wrapped. Throws for level 0.
std::vector<std::size_t> double_cube_samples(const TorusGrid& g, const DyadicCube& q);
/// Level-j cube containing a sample.
DyadicCube cube_containing(const TorusGrid& g, int level, std::size_t site);
int cubes_per_axis(int level);
std::size_t cube_count(const TorusGrid& g, int level);
/// Flat cube id in [0, 2^{jn}) from per-axis indices.
std::size_t cube_flat_index(const TorusGrid& g, const DyadicCube& q);
DyadicCube cube_from_flat(const TorusGrid& g, int level, std::size_t flat);

/// Complex m-vector valued samples, site-major then component.
class SampledField {
public:
    SampledField() = default;
    SampledField(TorusGrid grid, int m);

    const TorusGrid& grid() const { return grid_; }
    int m() const { return m_; }
    std::optional<int> band_limit() const { return band_limit_; }
    void set_band_limit(std::optional<int> b) { band_limit_ = b; }

    cplx& at(std::size_t site, int comp) { return values_[site * m_ + comp]; }
    const cplx& at(std::size_t site, int comp) const { return values_[site * m_ + comp]; }
    std::vector<cplx>& raw() { return values_; }
    const std::vector<cplx>& raw() const { return values_; }

    bool finite() const;

private:
    TorusGrid grid_;
    int m_ = 1;
    std::optional<int> band_limit_;
    std::vector<cplx> values_;
};

/// Real scalar samples on the grid.
class RealField {
public:
    RealField() = default;
    RealField(TorusGrid grid, double fill = 0.0)
        : grid_(grid), values_(grid.total_samples(), fill) {}

    const TorusGrid& grid() const { return grid_; }
    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }
    std::vector<double>& raw() { return values_; }
    const std::vector<double>& raw() const { return values_; }

private:
    TorusGrid grid_;
    std::vector<double> values_;
};

/// Unitary DFT, component by component. Round trip is the identity to ~1e-12.
SampledField fft_forward(const SampledField& f);
SampledField fft_inverse(const SampledField& f);

/// Fourier-side multiplication by a scalar symbol evaluated on integer
/// frequencies; acts componentwise in the vector index.
SampledField convolve_symbol(const SampledField& f,
                             const std::function<cplx(std::array<int, 2>)>& symbol);

/// Arithmetic mean over the samples of Q (one component of f).
cplx cube_mean(const SampledField& f, const DyadicCube& q, int comp = 0);
double cube_mean(const RealField& f, const DyadicCube& q);

/// f(2x) on the same grid (samples map exactly; spectrum index doubles).
SampledField dilate_by_two(const SampledField& f);

/// Interleaved re/im CSV with header row n,L,m,band_limit.
void write_field_csv(std::ostream& os, const SampledField& f);
SampledField read_field_csv(std::istream& is);

/// Prefix-sum box sums over wrapped axis-aligned sample ranges.
class BoxSums {
public:
    explicit BoxSums(const RealField& f);
    /// Sum of f over the wrapped box prod_d [start_d, start_d + len_d).
    double sum(std::array<int, 2> start, std::array<int, 2> len) const;

private:
    double axis_range_1d(int start, int len) const;
    int n_, N_;
    std::vector<double> pref_;  // (N+1) or (N+1)^2 inclusive prefix table
};

}  // namespace mwtl
