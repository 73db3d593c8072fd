#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mwtl/grid.hpp"
#include "mwtl/matrix.hpp"

namespace mwtl {

/// Generator description for a matrix weight field.
struct WeightSpec {
    enum class Kind { identity, constant, diagonal_power, rotating, scalar_power };

    Kind kind = Kind::identity;
    Mat matrix;                     // constant
    std::vector<double> exponents;  // diagonal_power / rotating / scalar_power
    std::array<double, 2> center = {0.0, 0.0};
    double rate = 1.0;  // rotating: angular rate (turns per unit length)

    std::string to_json() const;
    static WeightSpec from_json(const std::string& text);
};

/// Pointwise Hermitian positive definite W(x) with cached fractional powers.
class MatrixWeightField {
public:
    MatrixWeightField(TorusGrid grid, int m, std::vector<Mat> values);

    const TorusGrid& grid() const { return grid_; }
    int m() const { return m_; }
    const Mat& value(std::size_t site) const { return values_[site]; }
    /// Cached per-site W(x)^alpha.
    const std::vector<Mat>& power(double alpha) const;

private:
    TorusGrid grid_;
    int m_;
    std::vector<Mat> values_;
    mutable std::map<double, std::vector<Mat>> power_cache_;
};

MatrixWeightField generate_weight(const WeightSpec& spec, const TorusGrid& grid, int m);

struct ApReport {
    double p = 0;
    double value = 0;
    DyadicCube argmax;
    struct Row {
        int level;
        std::size_t cube;
        double bracket;
    };
    std::vector<Row> table;  // per-level maxima

    void write_csv(std::ostream& os) const;
};

/// Matrix Muckenhoupt bracket, sup over dyadic cubes at levels j_min..L.
ApReport ap_characteristic(const MatrixWeightField& w, double p, int j_min = 0);

/// Classical scalar A_p bracket over the same dyadic cube family.
double scalar_ap_characteristic(const RealField& w, double p, int j_min = 0);

/// w_y(x) = |W^{1/p}(x) y|^p for a unit vector y.
RealField scalar_reduction(const MatrixWeightField& w, double p, const Vec& y);

/// ||W^{1/p}(x)||^p as a scalar field.
RealField norm_weight_field(const MatrixWeightField& w, double p);

/// (ap(W, p), ap(W^{-p'/p}, p')) for p > 1.
std::pair<double, double> duality_check(const MatrixWeightField& w, double p);

/// Empirical doubling exponent: max over all cube positions of dyadic side
/// lengths (levels 1..L-1) and a seeded direction set of
/// log2( sum_{2Q} |W^{1/p} z|^p / sum_Q |W^{1/p} z|^p ).
double doubling_exponent(const MatrixWeightField& w, double p,
                         int extra_directions = 64, std::uint64_t seed = 0x5eed);

}  // namespace mwtl
