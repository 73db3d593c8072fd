#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mwtl/corpus.hpp"
#include "mwtl/grid.hpp"
#include "mwtl/littlewood_paley.hpp"
#include "mwtl/multiplier.hpp"
#include "mwtl/norms.hpp"
#include "mwtl/reducing.hpp"
#include "mwtl/weights.hpp"

namespace mwtl {

/// Pass/fail thresholds for the checks; every value is echoed into the
/// summary so reports are self-contained.
struct Thresholds {
    double calderon_residual = 1e-8;
    double equiv_spread = 50.0;
    double john_ratio_slack = 1e-3;  // C2/C1 <= sqrt(m) * (1 + slack)
    double jcf_slack = 0.05;         // vs the lattice-sum constant
    double fs_ratio = 10.0;
    double c38_ratio = 20.0;
    double multiplier_ratio = 20.0;
};

struct RunConfig {
    TorusGrid grid{1, 8};
    int m = 2;
    WeightSpec weight;
    double p = 2.0, q = 2.0, alpha = 0.0;
    double a = 0.0, lambda = 0.0;  // <= 0 means: default from the doubling estimate
    int ell = 0;                   // <= 0 means: smallest integer in the valid range
    double c1 = 0.5, c2 = 2.0;
    int j_min = 1, j_max = 5;
    std::string method = "auto";  // gram2 | john | auto (gram2 iff p == 2)
    CorpusSpec corpus;
    std::string symbol_json;  // empty -> riesz(1)
    std::vector<std::string> checks;  // empty -> all, in dependency order
    Thresholds thresholds;

    static RunConfig from_json(const std::string& text);
    /// Full echo including every defaulted value resolved at run time.
    std::string to_json() const;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::map<std::string, double> metrics;
};

struct RunReport {
    std::vector<CheckResult> checks;
    bool all_pass = true;
    double beta = 0.0;      // doubling estimate used for defaults
    SpaceParams params;     // resolved a / lambda
    int ell = 0;            // resolved smoothness

    const CheckResult* find(const std::string& name) const;
    std::string summary_json(const RunConfig& cfg) const;
};

/// All recognized check names in dependency order.
const std::vector<std::string>& all_checks();

/// Executes the requested checks; when out_dir is nonempty, writes one CSV
/// per check plus summary.json there. Deterministic for a fixed config.
RunReport run(const RunConfig& cfg, const std::string& out_dir = "");

}  // namespace mwtl
