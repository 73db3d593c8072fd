#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "mwtl/grid.hpp"
#include "mwtl/matrix.hpp"
#include "mwtl/weights.hpp"

namespace mwtl {

enum class ReducingMethod { gram2, john };

/// Minimum-volume origin-centered enclosing ellipsoid of a set of points in
/// C^m (circled-body convention): returns Hermitian PD E with z* E z <= 1
/// for every point, tight at the worst one. Khachiyan barycentric iteration
/// with away steps.
Mat mvee_shape(const std::vector<Vec>& points, double tol = 1e-7, int max_iter = 200000);

/// One positive definite A_Q per dyadic cube of each covered level.
class ReducingFamily {
public:
    ReducingFamily(double p, ReducingMethod method) : p_(p), method_(method) {}

    double p() const { return p_; }
    ReducingMethod method() const { return method_; }
    const std::vector<int>& levels() const { return levels_; }
    bool covers(int level) const { return ops_.count(level) > 0; }

    const Mat& op(int level, std::size_t cube) const { return ops_.at(level)[cube]; }
    const Mat& op_inverse(int level, std::size_t cube) const { return inv_.at(level)[cube]; }

    void set_level(int level, std::vector<Mat> ops);

    std::pair<double, double> constants() const { return {c1_, c2_}; }
    void set_constants(double c1, double c2) { c1_ = c1; c2_ = c2; }

    void write_csv(std::ostream& os) const;

private:
    double p_;
    ReducingMethod method_;
    std::vector<int> levels_;
    std::map<int, std::vector<Mat>> ops_;
    std::map<int, std::vector<Mat>> inv_;
    double c1_ = 0, c2_ = 0;
};

/// rho_Q(z) = ( mean_{x in Q} |W^{1/p}(x) z|^p )^{1/p}.
double rho_cube(const MatrixWeightField& w, double p, const std::vector<std::size_t>& sites,
                const Vec& z);

ReducingFamily build_reducing(const MatrixWeightField& w, double p, ReducingMethod method,
                              const std::vector<int>& levels, int john_directions = 128,
                              std::uint64_t seed = 0x0a11);

/// Extreme ratios rho_Q(z)/|A_Q z| over seeded unit directions and all cubes.
std::pair<double, double> verify_reducing(ReducingFamily& family, const MatrixWeightField& w,
                                          double p, int trials, std::uint64_t seed = 0x7e57);

/// max over same-level cube pairs of log ||A_Q A_P^{-1}|| / log(1+|k-l|).
double weak_doubling_order(const ReducingFamily& family, const TorusGrid& grid,
                           int pairs_per_level = 512, std::uint64_t seed = 0x0dd);

/// Empirical constant of the strong-doubling bound at exponent beta.
double strong_doubling_check(const ReducingFamily& family, const TorusGrid& grid, double beta,
                             double p, int pairs = 4096, std::uint64_t seed = 0x5d);

struct BoundScanEntry {
    double eta;  // NaN marks the esssup entry (p <= 1)
    double value;
};

/// sup_Q of cube-averaged ||A_Q W^{-1/p}(x)||^eta over an eta grid in (0, p']
/// for p > 1, or the esssup for p <= 1.
std::vector<BoundScanEntry> reducing_bound_scan(const ReducingFamily& family,
                                                const MatrixWeightField& w, double p,
                                                int eta_steps = 8);

}  // namespace mwtl
