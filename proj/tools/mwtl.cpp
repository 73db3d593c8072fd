#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mwtl/harness.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw CLI::ValidationError("--config", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

mwtl::RunConfig load_config(const std::string& path, std::uint64_t seed, bool seed_set) {
    mwtl::RunConfig cfg =
        path.empty() ? mwtl::RunConfig{} : mwtl::RunConfig::from_json(slurp(path));
    if (seed_set) cfg.corpus.seed = seed;
    return cfg;
}

int execute(mwtl::RunConfig cfg, const std::string& out_dir) {
    mwtl::RunReport rep = mwtl::run(cfg, out_dir);
    std::cout << rep.summary_json(cfg) << '\n';
    if (!rep.all_pass) {
        for (const auto& c : rep.checks)
            if (!c.pass) std::cerr << "check failed: " << c.name << '\n';
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"matrix-weighted Triebel-Lizorkin toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir, check_name;
    std::uint64_t seed = 0;
    bool seed_set = false;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", config_path, "run configuration JSON");
        if (config_required) opt->required();
        sub->add_option("--out", out_dir, "output directory for reports");
        sub->add_option("--seed", seed, "corpus seed override")
            ->each([&](const std::string&) { seed_set = true; });
    };

    auto* run_cmd = app.add_subcommand("run", "execute the configured check list");
    add_common(run_cmd, true);

    // single-check subcommands map 1:1 to check names
    struct Alias {
        const char* cmd;
        const char* check;
    };
    const std::vector<Alias> aliases = {{"apchar", "apchar"},   {"reduce", "reduce"},
                                        {"norms", "norms"},     {"equiv", "equiv"},
                                        {"multiplier", "multiplier"}};
    std::vector<CLI::App*> alias_cmds;
    for (const auto& a : aliases) {
        auto* sub = app.add_subcommand(a.cmd, std::string("run the ") + a.check + " check");
        add_common(sub, false);
        alias_cmds.push_back(sub);
    }

    auto* gen_cmd = app.add_subcommand("gen-weight", "generate a weight field and dump it");
    add_common(gen_cmd, false);

    auto* check_cmd = app.add_subcommand("check", "run one named check");
    check_cmd->add_option("--name", check_name, "check name")
        ->required()
        ->check(CLI::IsMember(mwtl::all_checks()));
    add_common(check_cmd, false);

    CLI11_PARSE(app, argc, argv);

    try {
        mwtl::RunConfig cfg = load_config(config_path, seed, seed_set);
        if (run_cmd->parsed()) return execute(cfg, out_dir);
        for (std::size_t i = 0; i < aliases.size(); ++i)
            if (alias_cmds[i]->parsed()) {
                cfg.checks = {aliases[i].check};
                return execute(cfg, out_dir);
            }
        if (check_cmd->parsed()) {
            cfg.checks = {check_name};
            return execute(cfg, out_dir);
        }
        if (gen_cmd->parsed()) {
            mwtl::MatrixWeightField w = mwtl::generate_weight(cfg.weight, cfg.grid, cfg.m);
            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                file.open(out_dir + "/weight.csv");
                os = &file;
            }
            *os << "site,row,col,re,im\n";
            os->precision(12);
            for (std::size_t s = 0; s < cfg.grid.total_samples(); ++s) {
                const mwtl::Mat& v = w.value(s);
                for (int r = 0; r < cfg.m; ++r)
                    for (int c = 0; c < cfg.m; ++c)
                        *os << s << ',' << r << ',' << c << ',' << v(r, c).real() << ','
                            << v(r, c).imag() << '\n';
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
