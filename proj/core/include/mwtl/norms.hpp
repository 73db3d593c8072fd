#pragma once

#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "mwtl/grid.hpp"
#include "mwtl/littlewood_paley.hpp"
#include "mwtl/matrix.hpp"
#include "mwtl/reducing.hpp"
#include "mwtl/weights.hpp"

namespace mwtl {

inline constexpr double q_infinity = std::numeric_limits<double>::infinity();

/// Quasi-norm parameters. a is the Peetre exponent, lambda the g_lambda*
/// exponent; both default from the doubling exponent via `with_defaults`.
struct SpaceParams {
    double alpha = 0.0;
    double p = 2.0;
    double q = 2.0;
    double a = 0.0;
    double lambda = 0.0;

    /// Thresholds below which the equivalence theorems do not apply.
    double a_threshold(int n, double beta) const;
    double lambda_threshold(int n, double beta) const;
    bool theorem_valid(int n, double beta) const;

    /// Fills a and lambda strictly inside the theorem ranges when unset (<= 0).
    static SpaceParams with_defaults(double alpha, double p, double q, int n, double beta);
};

/// Hardy-Littlewood maximal function, exact over all wrapped axis-aligned
/// cubes of side lengths 1..N samples.
RealField hl_maximal(const RealField& h);

/// Piecewise-constant level-j cube means.
RealField ej_average(const RealField& h, int j);

/// gamma_j(x) = ||W^{1/p}(x) A_{Q(x)}^{-1}|| at level j.
RealField gamma_field(const MatrixWeightField& w, const ReducingFamily& family, double p,
                      int j);

/// L^p norm with Lebesgue-consistent sample weighting N^{-n}.
double lp_norm(const RealField& v, double p);

double norm_F(const SampledField& f, const MatrixWeightField& w, const SpaceParams& params,
              const AnalysisProfile& profile);
double norm_F_AQ(const SampledField& f, const ReducingFamily& family,
                 const SpaceParams& params, const AnalysisProfile& profile);

/// Peetre maximal field at one scale: sup over grid y of
/// |W^{1/p}(x)(phi_j*f)(y)| / (1 + 2^j |x-y|)^a.
RealField peetre_field(const SampledField& f, const MatrixWeightField& w, double p, int j,
                       double a, const AnalysisProfile& profile);

double norm_star(const SampledField& f, const MatrixWeightField& w, const SpaceParams& params,
                 const AnalysisProfile& profile);
double norm_star_AQ(const SampledField& f, const ReducingFamily& family,
                    const SpaceParams& params, const AnalysisProfile& profile);
double norm_starstar_AQ(const SampledField& f, const ReducingFamily& family,
                        const SpaceParams& params, const AnalysisProfile& profile);
double norm_square(const SampledField& f, const MatrixWeightField& w,
                   const SpaceParams& params, const AnalysisProfile& profile);
double norm_gstar(const SampledField& f, const MatrixWeightField& w,
                  const SpaceParams& params, const AnalysisProfile& profile);
double norm_gstar_AQ(const SampledField& f, const ReducingFamily& family,
                     const SpaceParams& params, const AnalysisProfile& profile);

/// max_x LHS(x)/M(h)(x) of the lattice-decay cube-average bound (0/0 -> 0).
double jcf_check(const RealField& h, int j, double eta);

/// Fefferman-Stein empirical ratio for a family of scalar fields.
double fs_check(const std::vector<RealField>& h, double p, double q);

/// LHS/RHS of the gamma_j E_j bound for per-level fields f[j] (indexed by
/// position in the family's level list).
double c38_check(const MatrixWeightField& w, const ReducingFamily& family, double p, double q,
                 const std::vector<RealField>& f_per_level);

struct NormReport {
    std::map<std::string, double> values;  // F, F_AQ, star, star_AQ, starstar_AQ,
                                           // square, gstar, gstar_AQ
};

struct PairSpread {
    std::string numerator, denominator;
    double max_ratio = 0, min_ratio = 0;
    double spread() const { return max_ratio / min_ratio; }
};

struct EquivalenceReport {
    std::vector<NormReport> members;
    std::vector<PairSpread> pairs;

    void write_csv(std::ostream& os, const std::string& config_id) const;
    std::string aggregate_json() const;
};

NormReport norm_report(const SampledField& f, const MatrixWeightField& w,
                       const ReducingFamily& family, const SpaceParams& params,
                       const AnalysisProfile& profile);

EquivalenceReport equivalence_report(const std::vector<SampledField>& corpus,
                                     const MatrixWeightField& w, const ReducingFamily& family,
                                     const SpaceParams& params, const AnalysisProfile& profile);

}  // namespace mwtl
