#include "catgossip/experiment.hpp"

#include "catgossip/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <thread>

namespace catgossip {

namespace {

std::string graph_name(const ExperimentConfig& cfg) {
    switch (cfg.graph) {
        case GraphKind::complete: return "complete";
        case GraphKind::path: return "path";
        case GraphKind::file: return "file:" + cfg.graph_file;
    }
    return "?";
}

void put(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

void put(std::ostream& out, const std::optional<double>& v) {
    if (v) put(out, *v);
}

nlohmann::ordered_json fit_json(const std::optional<FitResult>& fit, const std::string& status) {
    nlohmann::ordered_json j;
    if (fit) {
        j["slope"] = fit->slope;
        j["intercept"] = fit->intercept;
        j["r2"] = fit->r2;
        j["points"] = fit->points;
    } else {
        j["slope"] = nullptr;
        j["intercept"] = nullptr;
        j["r2"] = nullptr;
        j["points"] = 0;
    }
    j["status"] = status;
    return j;
}

std::string status_of(const DegenerateSeries& e) { return e.consensus_reached ? "consensus" : "too_few_points"; }

}  // namespace

Graph validate_config(const ExperimentConfig& cfg) {
    if (cfg.agents < 2) throw ConfigError("agents", "at least 2 agents are required");
    if (cfg.trials < 1) throw ConfigError("trials", "at least 1 trial is required");
    if (cfg.record_every < 1) throw ConfigError("record-every", "must be at least 1");
    if (!(cfg.window >= 0.0 && cfg.window < 1.0)) throw ConfigError("window", "must lie in [0, 1)");
    if (!(cfg.coverage > 0.0 && cfg.coverage < 1.0)) throw ConfigError("coverage", "must lie in (0, 1)");
    if (cfg.space == SpaceTag::euclidean && cfg.dim < 1) throw ConfigError("dim", "must be at least 1");
    if (cfg.space == SpaceTag::tree && cfg.max_len < 1) throw ConfigError("max-len", "must be at least 1");
    if (!algorithm_supports(cfg.algo, cfg.space)) {
        throw ConfigError("algo", std::string(to_string(cfg.algo)) + " is not available on " +
                                      std::string(to_string(cfg.space)));
    }
    const double kappa = cfg.curvature();
    if (!std::isfinite(kappa) || kappa < default_kappa(cfg.space)) {
        throw ConfigError("kappa", "must be finite and at least the curvature bound of " +
                                       std::string(to_string(cfg.space)));
    }
    if (cfg.ambient && cfg.space != SpaceTag::euclidean && cfg.space != SpaceTag::spd) {
        throw ConfigError("ambient", "only euclidean and spd have an ambient vector space");
    }
    if (cfg.graph == GraphKind::file && cfg.graph_file.empty()) throw ConfigError("graph", "empty file name");
    try {
        return make_graph(cfg);
    } catch (const Error& e) {
        throw ConfigError("graph", e.what());
    }
}

std::vector<TrialSeries> run_trials(const ExperimentConfig& cfg, const Graph& g) {
    std::vector<TrialSeries> results(cfg.trials);
    std::vector<std::exception_ptr> errors(cfg.trials);
    std::size_t jobs = cfg.jobs ? cfg.jobs : std::max(1U, std::thread::hardware_concurrency());
    jobs = std::min(jobs, cfg.trials);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < cfg.trials; t = next++) {
            try {
                results[t] = run_trial(cfg, g, t);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

double fit_value(const MetricsRecord& r, double kappa) {
    return kappa > 0.0 ? r.sigma2_kappa.value_or(0.0) : r.sigma2;
}

std::size_t consensus_horizon(const std::vector<TrialSeries>& trials, std::size_t iters) {
    std::size_t h = iters;
    for (const auto& t : trials) {
        if (t.consensus_iter) h = std::min(h, *t.consensus_iter);
    }
    return h;
}

namespace {

FitResult fit_trial(const TrialSeries& t, double kappa, std::size_t horizon, double window) {
    std::vector<double> xs, ys;
    for (const auto& r : t.records) {
        if (r.iter > horizon) break;
        xs.push_back(static_cast<double>(r.iter));
        ys.push_back(fit_value(r, kappa));
    }
    return fit_log_slope(xs, ys, window);
}

}  // namespace

FitResult fit_mean_log_curve(const std::vector<TrialSeries>& trials, double kappa, std::size_t horizon,
                             double window) {
    if (trials.empty()) throw DegenerateSeries("fit_mean_log_curve: no trials", false);
    std::vector<double> xs, ys;
    const auto& first = trials.front().records;
    for (std::size_t i = 0; i < first.size() && first[i].iter <= horizon; ++i) {
        double mean_log = 0.0;
        for (const auto& t : trials) mean_log += std::log(fit_value(t.records.at(i), kappa));
        mean_log /= static_cast<double>(trials.size());
        xs.push_back(static_cast<double>(first[i].iter));
        ys.push_back(std::exp(mean_log));
    }
    return fit_log_slope(xs, ys, window);
}

Summary summarize(const ExperimentConfig& cfg, const std::vector<TrialSeries>& trials) {
    const double kappa = cfg.curvature();
    Summary s;
    s.fit_metric = kappa > 0.0 ? "sigma2_kappa" : "sigma2";
    s.fit_horizon = consensus_horizon(trials, cfg.iterations());

    for (const auto& t : trials) {
        TrialFit tf;
        tf.seed = t.seed;
        tf.final_sigma2 = t.records.back().sigma2;
        try {
            tf.fit = fit_trial(t, kappa, t.consensus_iter.value_or(cfg.iterations()), cfg.window);
        } catch (const DegenerateSeries& e) {
            tf.status = status_of(e);
        }
        s.per_trial.push_back(tf);
    }
    try {
        s.mean_fit = fit_mean_log_curve(trials, kappa, s.fit_horizon, cfg.window);
    } catch (const DegenerateSeries& e) {
        s.mean_status = status_of(e);
    }
    if (trials.size() >= 2) {
        std::vector<std::vector<double>> curves;
        for (const auto& t : trials) {
            std::vector<double> c;
            for (const auto& r : t.records) c.push_back(fit_value(r, kappa));
            curves.push_back(std::move(c));
        }
        s.envelope = envelope(curves, cfg.coverage);
    }
    return s;
}

void write_csv(std::ostream& out, const ExperimentConfig& cfg, const std::vector<TrialSeries>& trials) {
    out << "trial,iter,sigma2,delta,sigma2_kappa,delta_kappa,diameter";
    if (cfg.ambient) out << ",sigma2_ambient";
    out << '\n';
    for (std::size_t t = 0; t < trials.size(); ++t) {
        for (const auto& r : trials[t].records) {
            out << t << ',' << r.iter << ',';
            put(out, r.sigma2);
            out << ',';
            put(out, r.delta);
            out << ',';
            put(out, r.sigma2_kappa);
            out << ',';
            put(out, r.delta_kappa);
            out << ',';
            put(out, r.diameter);
            if (cfg.ambient) {
                out << ',';
                put(out, r.sigma2_ambient);
            }
            out << '\n';
        }
    }
}

void write_summary_json(std::ostream& out, const ExperimentConfig& cfg, const Summary& summary) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json c;
    c["space"] = std::string(to_string(cfg.space));
    if (cfg.space == SpaceTag::euclidean) c["dim"] = cfg.dim;
    if (cfg.space == SpaceTag::tree) c["max_len"] = cfg.max_len;
    c["graph"] = graph_name(cfg);
    c["agents"] = cfg.agents;
    c["iters"] = cfg.iterations();
    c["trials"] = cfg.trials;
    c["seed"] = cfg.seed;
    c["algo"] = std::string(to_string(cfg.algo));
    if (cfg.algo == Algorithm::rsgd) c["rsgd_symmetric"] = cfg.rsgd_symmetric;
    c["kappa"] = cfg.curvature();
    c["record_every"] = cfg.record_every;
    c["window"] = cfg.window;
    c["coverage"] = cfg.coverage;
    c["ambient"] = cfg.ambient;
    j["config"] = c;

    j["fit_metric"] = summary.fit_metric;
    j["fit_horizon"] = summary.fit_horizon;
    auto per_trial = nlohmann::ordered_json::array();
    for (const auto& t : summary.per_trial) {
        nlohmann::ordered_json e;
        e["seed"] = t.seed;
        e["slope"] = t.fit ? nlohmann::ordered_json(t.fit->slope) : nlohmann::ordered_json(nullptr);
        e["r2"] = t.fit ? nlohmann::ordered_json(t.fit->r2) : nlohmann::ordered_json(nullptr);
        e["final_sigma2"] = t.final_sigma2;
        e["status"] = t.status;
        per_trial.push_back(e);
    }
    j["per_trial"] = per_trial;
    j["mean_curve_fit"] = fit_json(summary.mean_fit, summary.mean_status);
    if (summary.envelope) {
        nlohmann::ordered_json e;
        e["coverage"] = summary.envelope->coverage;
        e["lower"] = summary.envelope->lower;
        e["median"] = summary.envelope->median;
        e["upper"] = summary.envelope->upper;
        j["envelope"] = e;
    } else {
        j["envelope"] = nullptr;
    }
    out << j.dump(2) << '\n';
}

}  // namespace catgossip
