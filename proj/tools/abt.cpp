// Experiment runner. Every module is exposed as a subcommand producing a
// structured report; exit codes: 0 all verdicts pass, 1 some verdict failed,
// 2 usage error, 3 I/O failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abt/experiments.hpp"
#include "abt/report.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::vector<std::string> tol_overrides;
    abt::ExperimentConfig cfg;
    bool grid_set = false, extent_set = false, seed_set = false, out_set = false,
         format_set = false;
};

int apply_overrides(CliOptions& opt, CLI::App* sub) {
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) {
            std::cerr << "cannot read config file: " << opt.config_path << "\n";
            return 3;
        }
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        abt::ExperimentConfig from_file = abt::config_from_text(text);
        // flags beat the file; the file beats defaults
        abt::ExperimentConfig merged = from_file;
        if (opt.grid_set) merged.grid = opt.cfg.grid;
        if (opt.extent_set) merged.extent = opt.cfg.extent;
        if (opt.seed_set) merged.seed = opt.cfg.seed;
        if (opt.out_set) merged.out = opt.cfg.out;
        if (opt.format_set) merged.format = opt.cfg.format;
        for (const auto& [k, v] : opt.cfg.tolerances) merged.tolerances[k] = v;
        for (const auto& [k, v] : opt.cfg.params) merged.params[k] = v;
        opt.cfg = merged;
    }
    for (const std::string& s : opt.tol_overrides) {
        auto eq = s.find('=');
        if (eq == std::string::npos) {
            std::cerr << "bad --tol override (want NAME=VALUE): " << s << "\n";
            return 2;
        }
        opt.cfg.tolerances[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
    }
    (void)sub;
    return 0;
}

int run_one(const std::string& name, abt::ExperimentConfig cfg) {
    cfg.experiment = name;
    abt::ExperimentReport rep;
    try {
        rep = abt::run_experiment(name, cfg);
    } catch (const std::exception& e) {
        std::cerr << name << ": " << e.what() << "\n";
        return 1;
    }
    std::string out = cfg.out.empty() ? name + ".report." +
                                            (cfg.format == "csv" ? "csv" : "json")
                                      : cfg.out;
    if (!abt::emit_report(rep, out, cfg.format)) {
        std::cerr << "cannot write report: " << out << "\n";
        return 3;
    }
    int fails = 0;
    for (const auto& row : rep.rows)
        if (row.verdict == abt::Verdict::Fail) ++fails;
    std::cout << name << ": " << rep.rows.size() << " rows, " << fails
              << " failed, report " << out << "\n";
    return fails == 0 ? 0 : 1;
}

int run_all(const abt::ExperimentConfig& base) {
    namespace fs = std::filesystem;
    std::string dir = base.out.empty() ? "reports" : base.out;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        std::cerr << "cannot create report directory: " << dir << "\n";
        return 3;
    }
    int worst = 0;
    for (const std::string& name : abt::experiment_names()) {
        abt::ExperimentConfig cfg = base;
        cfg.out = (fs::path(dir) / (name + ".report." +
                                    (cfg.format == "csv" ? "csv" : "json")))
                      .string();
        worst = std::max(worst, run_one(name, cfg));
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for the Beurling transform and friends"};
    app.require_subcommand(1);

    CliOptions opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--grid", opt.cfg.grid, "samples per side (power of two)")
            ->each([&](const std::string&) { opt.grid_set = true; });
        sub->add_option("--extent", opt.cfg.extent, "torus side length")
            ->each([&](const std::string&) { opt.extent_set = true; });
        sub->add_option("--seed", opt.cfg.seed, "seed for randomized sweeps")
            ->each([&](const std::string&) { opt.seed_set = true; });
        sub->add_option("--out", opt.cfg.out, "report path (directory for `all`)")
            ->each([&](const std::string&) { opt.out_set = true; });
        sub->add_option("--format", opt.cfg.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}))
            ->each([&](const std::string&) { opt.format_set = true; });
        sub->add_option("--tol", opt.tol_overrides, "tolerance override NAME=VALUE");
        sub->add_option("--config", opt.config_path, "flat key=value config file");
        sub->add_option("--n", opt.cfg.params["n"], "order parameter");
        sub->add_option("--p", opt.cfg.params["p"], "Lebesgue exponent");
        sub->add_option("--alpha", opt.cfg.params["alpha"], "family exponent");
        sub->add_option("--K", opt.cfg.params["K"], "quasiconformal constant");
        sub->add_option("--depth", opt.cfg.params["depth"], "dyadic depth");
    };

    std::vector<std::string> names = abt::experiment_names();
    names.push_back("all");
    for (const std::string& name : names) add_common(app.add_subcommand(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    // drop params the user never set so experiment defaults apply
    for (auto it = opt.cfg.params.begin(); it != opt.cfg.params.end();)
        it = it->second == 0.0 ? opt.cfg.params.erase(it) : std::next(it);

    CLI::App* sub = app.get_subcommands().front();
    if (int rc = apply_overrides(opt, sub); rc != 0) return rc;

    try {
        if (sub->get_name() == "all") return run_all(opt.cfg);
        return run_one(sub->get_name(), opt.cfg);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
