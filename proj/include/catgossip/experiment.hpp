#pragma once

// Batch execution of trials and the CSV / JSON exporters.

#include "catgossip/engine.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace catgossip {

/// Checks every field and builds the graph. Throws ConfigError naming the field.
Graph validate_config(const ExperimentConfig& cfg);

/// Runs all trials on cfg.jobs workers; results are in trial order. The first
/// failing trial (by index) is rethrown as TrialFailure.
std::vector<TrialSeries> run_trials(const ExperimentConfig& cfg, const Graph& g);

struct TrialFit {
    std::uint64_t seed = 0;
    std::optional<FitResult> fit;
    /// "ok", "consensus" or "too_few_points".
    std::string status = "ok";
    double final_sigma2 = 0.0;
};

struct Summary {
    /// "sigma2" for kappa = 0, "sigma2_kappa" otherwise.
    std::string fit_metric;
    /// Last iteration included in the fits: the earliest consensus iteration
    /// over all trials, or the iteration count when no trial reached consensus.
    std::size_t fit_horizon = 0;
    std::vector<TrialFit> per_trial;
    std::optional<FitResult> mean_fit;
    std::string mean_status = "ok";
    /// Absent with a single trial.
    std::optional<Envelope> envelope;
};

/// The value fitted for `r`: sigma2_kappa when kappa > 0, sigma2 otherwise.
double fit_value(const MetricsRecord& r, double kappa);

/// Fit of the cross-trial mean of log(fit_value) over records with
/// iter <= horizon, on the tail selected by `window`.
FitResult fit_mean_log_curve(const std::vector<TrialSeries>& trials, double kappa, std::size_t horizon,
                             double window);

/// Earliest consensus iteration over `trials`, or `iters` if none.
std::size_t consensus_horizon(const std::vector<TrialSeries>& trials, std::size_t iters);

Summary summarize(const ExperimentConfig& cfg, const std::vector<TrialSeries>& trials);

/// Header `trial,iter,sigma2,delta,sigma2_kappa,delta_kappa,diameter`, plus
/// `sigma2_ambient` when cfg.ambient. Floats with 17 significant digits.
void write_csv(std::ostream& out, const ExperimentConfig& cfg, const std::vector<TrialSeries>& trials);
void write_summary_json(std::ostream& out, const ExperimentConfig& cfg, const Summary& summary);

}  // namespace catgossip
