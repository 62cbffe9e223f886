// Command-line front end: `run` executes a batch of gossip trials and writes
// the per-iteration CSV and the summary JSON; `properties` runs the seeded
// inequality suites.

#include "catgossip/engine.hpp"
#include "catgossip/errors.hpp"
#include "catgossip/experiment.hpp"
#include "catgossip/properties.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

using namespace catgossip;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct RunOptions {
    std::string space = "spd";
    std::string graph = "complete";
    std::string algo = "midpoint";
    std::size_t iters = 0;
    double kappa = 0.0;
    std::string csv;
    std::string json;
    std::string out = "catgossip";
};

GraphKind parse_graph(const std::string& text, std::string& file) {
    if (text == "complete") return GraphKind::complete;
    if (text == "path") return GraphKind::path;
    if (text.rfind("file:", 0) == 0) {
        file = text.substr(5);
        return GraphKind::file;
    }
    throw ConfigError("graph", "expected complete, path or file:PATH, got '" + text + "'");
}

template <class F>
auto as_config_error(const char* field, F parse) {
    try {
        return parse();
    } catch (const DomainError& e) {
        throw ConfigError(field, e.what());
    }
}

int run_command(ExperimentConfig cfg, const RunOptions& opt, bool iters_set, bool kappa_set) {
    try {
        cfg.space = as_config_error("space", [&] { return parse_space_tag(opt.space); });
        cfg.algo = as_config_error("algo", [&] { return parse_algorithm(opt.algo); });
        cfg.graph = parse_graph(opt.graph, cfg.graph_file);
        if (iters_set) cfg.iters = opt.iters;
        if (kappa_set) cfg.kappa = opt.kappa;
        const Graph g = validate_config(cfg);

        const std::string csv_path = opt.csv.empty() ? opt.out + ".csv" : opt.csv;
        const std::string json_path = opt.json.empty() ? opt.out + ".json" : opt.json;
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) throw ConfigError("csv", "cannot open " + csv_path + " for writing");
        std::ofstream json(json_path, std::ios::binary);
        if (!json) throw ConfigError("json", "cannot open " + json_path + " for writing");

        const auto trials = run_trials(cfg, g);
        const Summary summary = summarize(cfg, trials);
        write_csv(csv, cfg, trials);
        write_summary_json(json, cfg, summary);
        if (!csv || !json) {
            std::cerr << "error: failed writing output files\n";
            return kExitRuntime;
        }
        if (summary.mean_fit) {
            std::printf("%s: slope %.6g per iteration, r2 %.4f over iterations [%.0f, %zu]\n",
                        summary.fit_metric.c_str(), summary.mean_fit->slope, summary.mean_fit->r2,
                        cfg.window * static_cast<double>(summary.fit_horizon), summary.fit_horizon);
        } else {
            std::printf("%s: slope undefined (%s)\n", summary.fit_metric.c_str(), summary.mean_status.c_str());
        }
        std::printf("wrote %s and %s\n", csv_path.c_str(), json_path.c_str());
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const TrialFailure& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const Error& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Randomized pairwise gossip on geodesic metric spaces"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    RunOptions opt;
    auto* run = app.add_subcommand("run", "Run a batch of trials and export CSV and JSON");
    // Config files are read by the root app; fallthrough lets `run --config FILE` reach it.
    app.set_config("--config", "", "TOML/INI file with a [run] section; command-line flags win");
    run->fallthrough();
    run->add_option("--space", opt.space, "euclidean, spd, sphere, so3 or tree")->capture_default_str();
    run->add_option("--dim", cfg.dim, "Dimension of the euclidean space")->capture_default_str();
    run->add_option("--graph", opt.graph, "complete, path or file:PATH (edge list)")->capture_default_str();
    run->add_option("--agents", cfg.agents, "Number of agents N")->capture_default_str();
    auto* iters = run->add_option("--iters", opt.iters, "Iterations per trial (default 3000 for spd, else 500)");
    run->add_option("--trials", cfg.trials, "Number of trials")->capture_default_str();
    run->add_option("--seed", cfg.seed, "Base seed; trial t uses seed + t")->capture_default_str();
    run->add_option("--algo", opt.algo, "midpoint, arithmetic or rsgd")->capture_default_str();
    auto* kappa = run->add_option("--kappa", opt.kappa, "Curvature bound (default: 1 sphere, 0.25 so3, else 0)");
    run->add_option("--record-every", cfg.record_every, "Record metrics every r iterations")->capture_default_str();
    run->add_option("--window", cfg.window, "Fit the last (1 - window) fraction of the horizon")
        ->capture_default_str();
    run->add_option("--coverage", cfg.coverage, "Envelope coverage")->capture_default_str();
    run->add_option("--jobs", cfg.jobs, "Worker threads (0: available parallelism)")->capture_default_str();
    run->add_option("--max-len", cfg.max_len, "Maximal word length for tree initialization")
        ->capture_default_str();
    run->add_flag("--rsgd-symmetric", cfg.rsgd_symmetric, "Move both agents in rsgd");
    run->add_flag("--ambient", cfg.ambient, "Also record the ambient-norm variance (euclidean, spd)");
    run->add_option("--csv", opt.csv, "CSV output path (default PREFIX.csv)");
    run->add_option("--json", opt.json, "JSON output path (default PREFIX.json)");
    run->add_option("--out", opt.out, "Output prefix")->capture_default_str();

    std::string suite = "all";
    std::uint64_t suite_seed = 1;
    auto* props = app.add_subcommand("properties", "Run the seeded inequality suites");
    props->add_option("--suite", suite, "cat0, catk or all")->capture_default_str();
    props->add_option("--seed", suite_seed, "Seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    if (run->parsed()) return run_command(cfg, opt, iters->count() > 0, kappa->count() > 0);

    try {
        const bool ok = run_property_suite(parse_property_suite(suite), suite_seed, std::cout);
        return ok ? kExitOk : kExitViolation;
    } catch (const DomainError& e) {
        std::cerr << "config error: suite: " << e.what() << '\n';
        return kExitConfig;
    }
}
