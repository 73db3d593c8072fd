#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mwtl/grid.hpp"
#include "mwtl/littlewood_paley.hpp"
#include "mwtl/norms.hpp"

namespace mwtl {

/// Sum of terms c * xi^a * |xi|^e — closed under partial differentiation,
/// which covers every builtin symbol (identity, Riesz, |xi|^{-s}) exactly.
class RadialMonomialSum {
public:
    struct Term {
        cplx coef;
        std::array<int, 2> mono;  // per-axis monomial exponents
        double radial;            // power of |xi|
    };

    RadialMonomialSum() = default;
    explicit RadialMonomialSum(std::vector<Term> terms) : terms_(std::move(terms)) {}

    cplx eval(const std::array<double, 2>& xi, int n) const;
    RadialMonomialSum derivative(int axis) const;

    static RadialMonomialSum constant(cplx c);
    static RadialMonomialSum riesz(int axis);       // -i xi_d / |xi|
    static RadialMonomialSum radial_power(double e);  // |xi|^e

private:
    std::vector<Term> terms_;
};

/// Fourier multiplier symbol of order s with C^ell smoothness away from 0.
class MultiplierSymbol {
public:
    enum class Kind { identity, riesz, power, custom };

    static MultiplierSymbol identity();
    static MultiplierSymbol riesz(int axis);  // axis in {1..n}
    static MultiplierSymbol power(double s);  // |xi|^{-s}
    /// Custom rule; derivatives fall back to central finite differences with
    /// shell-relative step. smoothness is capped at 3.
    static MultiplierSymbol custom(std::function<cplx(std::array<double, 2>, int)> eval,
                                   double s, int ell);

    Kind kind() const { return kind_; }
    double order() const { return s_; }
    int smoothness() const { return ell_; }
    void set_smoothness(int ell);

    cplx eval(const std::array<double, 2>& xi, int n) const;
    /// partial^sigma m(xi); analytic for builtins, finite differences otherwise.
    cplx derivative(const std::array<int, 2>& sigma, const std::array<double, 2>& xi,
                    int n) const;

    std::string to_json() const;
    static MultiplierSymbol from_json(const std::string& text);

private:
    Kind kind_ = Kind::identity;
    double s_ = 0.0;
    int ell_ = 1;
    int riesz_axis_ = 1;
    RadialMonomialSum expr_;
    mutable std::vector<std::pair<std::array<int, 2>, RadialMonomialSum>> deriv_cache_;
    std::function<cplx(std::array<double, 2>, int)> custom_;
};

struct HormanderReport {
    struct Row {
        std::array<int, 2> sigma;
        int shell_t;  // R = 2^t
        double bracket;
    };
    std::vector<Row> table;
    /// A_sigma = max over shells, keyed by the flat sigma order it was seen in.
    std::vector<std::pair<std::array<int, 2>, double>> constants;

    double constant_for(const std::array<int, 2>& sigma) const;
    void write_csv(std::ostream& os) const;
};

/// Dyadic-shell lattice sums R^{-n+2s+2|sigma|} sum_{R<=|xi|<2R} |d^sigma m|^2
/// over integer frequencies, for all |sigma| <= ell and shells within the grid.
HormanderReport hormander_constants(const MultiplierSymbol& sym, const TorusGrid& grid);

/// Spectral application on the integer-frequency lattice: the coefficient at
/// frequency k is multiplied by m(k), matching the lattice used by the shell
/// sums above; m(0) := 0. With this normalization power(s) sends e^{2 pi i kx}
/// to |k|^{-s} e^{2 pi i kx}.
SampledField apply_multiplier(const SampledField& f, const MultiplierSymbol& sym);

struct BoundednessReport {
    std::vector<double> ratios;  // norm_F(T_m f; alpha+s) / norm_F(f; alpha)
    double max_ratio = 0;
};

BoundednessReport boundedness_report(const std::vector<SampledField>& corpus,
                                     const MatrixWeightField& w, const SpaceParams& params,
                                     const MultiplierSymbol& sym,
                                     const AnalysisProfile& profile);

}  // namespace mwtl
