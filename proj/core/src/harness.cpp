#include "mwtl/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <stdexcept>

namespace mwtl {

namespace {

using nlohmann::json;

ReducingMethod resolve_method(const std::string& name, double p) {
    if (name == "gram2") return ReducingMethod::gram2;
    if (name == "john") return ReducingMethod::john;
    if (name == "auto") return p == 2.0 ? ReducingMethod::gram2 : ReducingMethod::john;
    throw std::invalid_argument("config field 'method': unknown value '" + name + "'");
}

json thresholds_json(const Thresholds& t) {
    return json{{"calderon_residual", t.calderon_residual},
                {"equiv_spread", t.equiv_spread},
                {"john_ratio_slack", t.john_ratio_slack},
                {"jcf_slack", t.jcf_slack},
                {"fs_ratio", t.fs_ratio},
                {"c38_ratio", t.c38_ratio},
                {"multiplier_ratio", t.multiplier_ratio}};
}

/// Max over base cubes of sum_l (1 + |k-l|)^{-eta} at one level (uniform in
/// k by periodicity, so computed once).
double lattice_decay_sum(const TorusGrid& grid, int j, double eta) {
    int per_axis = cubes_per_axis(j);
    double acc = 0;
    if (grid.n == 1) {
        for (int l = 0; l < per_axis; ++l) {
            int d = std::min(l, per_axis - l);
            acc += std::pow(1.0 + d, -eta);
        }
    } else {
        for (int l0 = 0; l0 < per_axis; ++l0)
            for (int l1 = 0; l1 < per_axis; ++l1) {
                int d0 = std::min(l0, per_axis - l0);
                int d1 = std::min(l1, per_axis - l1);
                acc += std::pow(1.0 + std::sqrt(double(d0) * d0 + double(d1) * d1), -eta);
            }
    }
    return acc;
}

RealField modulus_field(const SampledField& f, int comp = 0) {
    RealField out(f.grid());
    for (std::size_t s = 0; s < f.grid().total_samples(); ++s)
        out[s] = std::abs(f.at(s, comp));
    return out;
}

}  // namespace

const std::vector<std::string>& all_checks() {
    static const std::vector<std::string> order = {
        "apchar", "doubling", "reduce",    "calderon",   "norms",     "equiv",
        "jcf",    "fs",       "c38",       "hormander",  "multiplier"};
    return order;
}

RunConfig RunConfig::from_json(const std::string& text) {
    json j = json::parse(text);
    RunConfig c;
    if (j.contains("grid")) {
        c.grid = TorusGrid(j["grid"].value("n", 1), j["grid"].value("L", 8));
    }
    c.m = j.value("m", 2);
    if (j.contains("weight")) c.weight = WeightSpec::from_json(j["weight"].dump());
    c.p = j.value("p", 2.0);
    c.q = j.value("q", 2.0);
    c.alpha = j.value("alpha", 0.0);
    c.a = j.value("a", 0.0);
    c.lambda = j.value("lambda", 0.0);
    c.ell = j.value("ell", 0);
    if (j.contains("profile")) {
        const auto& pr = j["profile"];
        c.c1 = pr.value("c1", 0.5);
        c.c2 = pr.value("c2", 2.0);
        c.j_min = pr.value("jmin", 1);
        c.j_max = pr.value("jmax", 5);
    }
    c.method = j.value("method", std::string("auto"));
    if (j.contains("corpus")) c.corpus = CorpusSpec::from_json(j["corpus"].dump());
    if (j.contains("symbol")) c.symbol_json = j["symbol"].dump();
    if (j.contains("checks")) c.checks = j["checks"].get<std::vector<std::string>>();
    if (j.contains("thresholds")) {
        const auto& t = j["thresholds"];
        c.thresholds.calderon_residual =
            t.value("calderon_residual", c.thresholds.calderon_residual);
        c.thresholds.equiv_spread = t.value("equiv_spread", c.thresholds.equiv_spread);
        c.thresholds.john_ratio_slack =
            t.value("john_ratio_slack", c.thresholds.john_ratio_slack);
        c.thresholds.jcf_slack = t.value("jcf_slack", c.thresholds.jcf_slack);
        c.thresholds.fs_ratio = t.value("fs_ratio", c.thresholds.fs_ratio);
        c.thresholds.c38_ratio = t.value("c38_ratio", c.thresholds.c38_ratio);
        c.thresholds.multiplier_ratio =
            t.value("multiplier_ratio", c.thresholds.multiplier_ratio);
    }
    for (const auto& name : c.checks)
        if (std::find(all_checks().begin(), all_checks().end(), name) == all_checks().end())
            throw std::invalid_argument("config field 'checks': unknown check '" + name + "'");
    return c;
}

std::string RunConfig::to_json() const {
    json j{{"grid", {{"n", grid.n}, {"L", grid.level}}},
           {"m", m},
           {"weight", json::parse(weight.to_json())},
           {"p", p},
           {"q", q},
           {"alpha", alpha},
           {"a", a},
           {"lambda", lambda},
           {"ell", ell},
           {"profile", {{"c1", c1}, {"c2", c2}, {"jmin", j_min}, {"jmax", j_max}}},
           {"method", method},
           {"corpus", json::parse(corpus.to_json())},
           {"checks", checks.empty() ? all_checks() : checks},
           {"thresholds", thresholds_json(thresholds)}};
    if (!symbol_json.empty()) j["symbol"] = json::parse(symbol_json);
    return j.dump(2);
}

const CheckResult* RunReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string RunReport::summary_json(const RunConfig& cfg) const {
    json j;
    j["config"] = json::parse(cfg.to_json());
    j["resolved"] = {{"beta", beta},
                     {"a", params.a},
                     {"lambda", params.lambda},
                     {"ell", ell},
                     {"a_threshold", params.a_threshold(cfg.grid.n, beta)},
                     {"lambda_threshold", params.lambda_threshold(cfg.grid.n, beta)},
                     {"theorem_valid", params.theorem_valid(cfg.grid.n, beta)}};
    json body;
    for (const auto& c : checks) {
        json entry{{"pass", c.pass}};
        for (const auto& [k, v] : c.metrics) entry[k] = v;
        body[c.name] = entry;
    }
    j["checks"] = body;
    j["all_pass"] = all_pass;
    return j.dump(2);
}

RunReport run(const RunConfig& cfg, const std::string& out_dir) {
    std::vector<std::string> requested = cfg.checks.empty() ? all_checks() : cfg.checks;
    // dependency order regardless of config order
    std::vector<std::string> ordered;
    for (const auto& name : all_checks())
        if (std::find(requested.begin(), requested.end(), name) != requested.end())
            ordered.push_back(name);

    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
    auto open_csv = [&](const std::string& name) {
        std::ofstream os;
        if (!out_dir.empty()) os.open(out_dir + "/" + name + ".csv");
        return os;
    };

    MatrixWeightField w = generate_weight(cfg.weight, cfg.grid, cfg.m);
    RunReport rep;
    rep.beta = doubling_exponent(w, cfg.p);

    SpaceParams params = SpaceParams::with_defaults(cfg.alpha, cfg.p, cfg.q, cfg.grid.n, rep.beta);
    if (cfg.a > 0) params.a = cfg.a;
    if (cfg.lambda > 0) params.lambda = cfg.lambda;
    rep.params = params;
    double ell_threshold = cfg.grid.n / std::min({1.0, cfg.p, cfg.q}) + rep.beta / cfg.p +
                           cfg.grid.n / 2.0;
    rep.ell = cfg.ell > 0 ? cfg.ell : static_cast<int>(std::floor(ell_threshold)) + 1;

    AnalysisProfile profile = make_profile(cfg.c1, cfg.c2, cfg.j_min, cfg.j_max, cfg.grid);
    std::vector<int> levels;
    for (int j = std::max(0, cfg.j_min); j <= std::min(cfg.grid.level, cfg.j_max); ++j)
        levels.push_back(j);

    bool needs_family = false, needs_corpus = false;
    for (const auto& name : ordered) {
        needs_family |= name == "reduce" || name == "norms" || name == "equiv" || name == "c38";
        needs_corpus |= name == "calderon" || name == "norms" || name == "equiv" ||
                        name == "jcf" || name == "fs" || name == "c38" || name == "multiplier";
    }

    ReducingMethod method = resolve_method(cfg.method, cfg.p);
    std::optional<ReducingFamily> family;
    if (needs_family) {
        family.emplace(build_reducing(w, cfg.p, method, levels));
        verify_reducing(*family, w, cfg.p, 100);
    }
    std::vector<SampledField> corpus;
    if (needs_corpus) corpus = make_corpus(cfg.grid, cfg.m, cfg.corpus);

    MultiplierSymbol sym = cfg.symbol_json.empty() ? MultiplierSymbol::riesz(1)
                                                   : MultiplierSymbol::from_json(cfg.symbol_json);
    sym.set_smoothness(rep.ell);

    for (const auto& name : ordered) {
        CheckResult res;
        res.name = name;
        if (name == "apchar") {
            ApReport ap = ap_characteristic(w, cfg.p);
            res.metrics["value"] = ap.value;
            res.pass = std::isfinite(ap.value) && ap.value >= 1.0 - 1e-9;
            if (auto os = open_csv(name)) ap.write_csv(os);
        } else if (name == "doubling") {
            res.metrics["beta"] = rep.beta;
            res.pass = std::isfinite(rep.beta) && rep.beta >= 0.0;
        } else if (name == "reduce") {
            auto [lo, hi] = family->constants();
            double ratio = hi / lo;
            res.metrics["C1"] = lo;
            res.metrics["C2"] = hi;
            res.metrics["ratio"] = ratio;
            res.metrics["weak_doubling_order"] = weak_doubling_order(*family, cfg.grid);
            double bound = method == ReducingMethod::john
                               ? std::sqrt(double(cfg.m)) * (1.0 + cfg.thresholds.john_ratio_slack)
                               : std::numeric_limits<double>::infinity();
            res.pass = lo > 0 && std::isfinite(hi) && ratio <= bound;
            if (auto os = open_csv(name)) family->write_csv(os);
        } else if (name == "calderon") {
            AnalysisPair pair = make_pair(profile);
            double worst = 0;
            for (const auto& f : corpus) worst = std::max(worst, calderon_check(pair, f));
            res.metrics["residual"] = worst;
            res.pass = worst < cfg.thresholds.calderon_residual;
        } else if (name == "norms") {
            auto os = open_csv(name);
            if (os) os << "config_id,member_id,norm_kind,value\n";
            bool ok = true;
            for (std::size_t i = 0; i < corpus.size(); ++i) {
                NormReport nr = norm_report(corpus[i], w, *family, params, profile);
                for (const auto& [kind, value] : nr.values) {
                    ok = ok && std::isfinite(value);
                    if (i == 0) res.metrics[kind] = value;
                    if (os) os << "run," << i << ',' << kind << ',' << value << '\n';
                }
            }
            res.pass = ok;
        } else if (name == "equiv") {
            EquivalenceReport er = equivalence_report(corpus, w, *family, params, profile);
            double worst = 0;
            for (const auto& pr : er.pairs) worst = std::max(worst, pr.spread());
            res.metrics["max_spread"] = worst;
            res.pass = std::isfinite(worst) && worst <= cfg.thresholds.equiv_spread;
            if (auto os = open_csv(name)) er.write_csv(os, "run");
            if (!out_dir.empty()) {
                std::ofstream js(out_dir + "/equiv_aggregate.json");
                js << er.aggregate_json();
            }
        } else if (name == "jcf") {
            double eta = cfg.grid.n + 1.0;
            int j = levels.front();
            double ratio = jcf_check(modulus_field(corpus.front()), j, eta);
            double lattice = lattice_decay_sum(cfg.grid, j, eta);
            res.metrics["ratio"] = ratio;
            res.metrics["lattice_sum"] = lattice;
            res.pass = std::isfinite(ratio) && ratio <= lattice * (1.0 + cfg.thresholds.jcf_slack);
        } else if (name == "fs") {
            double pf = cfg.p > 1 ? cfg.p : 2.0;
            double qf = cfg.q > 1 ? cfg.q : 2.0;
            std::vector<RealField> fam;
            for (const auto& f : corpus) fam.push_back(modulus_field(f));
            double ratio = fs_check(fam, pf, qf);
            res.metrics["ratio"] = ratio;
            res.metrics["p"] = pf;
            res.metrics["q"] = qf;
            res.pass = std::isfinite(ratio) && ratio <= cfg.thresholds.fs_ratio;
        } else if (name == "c38") {
            std::vector<RealField> per_level;
            for (std::size_t i = 0; i < levels.size(); ++i)
                per_level.push_back(modulus_field(corpus[i % corpus.size()]));
            double ratio = c38_check(w, *family, cfg.p, cfg.q, per_level);
            res.metrics["ratio"] = ratio;
            res.pass = std::isfinite(ratio) && ratio <= cfg.thresholds.c38_ratio;
        } else if (name == "hormander") {
            HormanderReport hr = hormander_constants(sym, cfg.grid);
            double worst = 0;
            bool ok = true;
            for (const auto& [sg, v] : hr.constants) {
                ok = ok && std::isfinite(v);
                worst = std::max(worst, v);
            }
            res.metrics["max_A_sigma"] = worst;
            res.pass = ok;
            if (auto os = open_csv(name)) hr.write_csv(os);
        } else if (name == "multiplier") {
            BoundednessReport br = boundedness_report(corpus, w, params, sym, profile);
            res.metrics["max_ratio"] = br.max_ratio;
            res.pass = std::isfinite(br.max_ratio) &&
                       br.max_ratio <= cfg.thresholds.multiplier_ratio;
            if (!out_dir.empty()) {
                std::ofstream os(out_dir + "/multiplier.csv");
                os << "member_id,ratio\n";
                os.precision(12);
                for (std::size_t i = 0; i < br.ratios.size(); ++i)
                    os << i << ',' << br.ratios[i] << '\n';
            }
        }
        rep.all_pass = rep.all_pass && res.pass;
        rep.checks.push_back(std::move(res));
    }

    if (!out_dir.empty()) {
        std::ofstream js(out_dir + "/summary.json");
        js << rep.summary_json(cfg) << '\n';
    }
    return rep;
}

}  // namespace mwtl
