#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "mwtl/grid.hpp"

namespace mwtl {

/// Radial frequency profile g supported in the annulus [c1, c2] (c2/c1 = 4),
/// square-normalized so that sum_j g(t/2^j)^2 = 1 for every t > 0.
/// Per-scale symbols are sigma_j(k) = g(|k|/2^j).
class AnalysisProfile {
public:
    AnalysisProfile(double c1, double c2, int j_min, int j_max);

    double c1() const { return c1_; }
    double c2() const { return c2_; }
    int j_min() const { return j_min_; }
    int j_max() const { return j_max_; }

    /// Normalized radial profile value.
    double g(double t) const;
    /// sigma_j at frequency magnitude |k|.
    double sigma(int j, double kmag) const;
    double sigma(int j, std::array<int, 2> k) const;

    /// True when every scale touching |k| lies inside the window, so the
    /// square tiling sums to 1 there.
    bool covered(double kmag) const;
    /// Fully covered frequency annulus [lo, hi].
    double covered_lo() const { return c2_ * std::pow(2.0, j_min_); }
    double covered_hi() const { return c1_ * std::pow(2.0, j_max_); }

    /// Checks the window against the grid Nyquist limit.
    void require_fits(const TorusGrid& grid) const;

    std::string to_json() const;
    static AnalysisProfile from_json(const std::string& text);

private:
    double raw_bump(double t) const;  // unnormalized bump on [c1, c2]
    double c1_, c2_;
    int j_min_, j_max_;
};

AnalysisProfile make_profile(double c1, double c2, int j_min, int j_max,
                             const TorusGrid& grid);

/// Partition pair (phi-hat, psi-hat). The square-tiled construction makes
/// psi = phi exact: sum_j g(t/2^j) * g(t/2^j) = 1 on covered frequencies.
struct AnalysisPair {
    AnalysisProfile phi;
    AnalysisProfile psi;
};

AnalysisPair make_pair(const AnalysisProfile& profile);

/// Littlewood-Paley piece phi_j * f (spectral band-pass).
SampledField lp_piece(const SampledField& f, const AnalysisProfile& profile, int j);

/// sup-norm residual of f - sum_j phi_j * psi_j * f over the window,
/// relative to ||f||_inf. Zero field maps to 0.
double calderon_check(const AnalysisPair& pair, const SampledField& f);

}  // namespace mwtl
