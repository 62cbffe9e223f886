#pragma once

// Disagreement and variance functionals, their curvature-corrected variants,
// the exact one-step expectation, log-slope fits and cross-trial envelopes.

#include "catgossip/geodesic.hpp"
#include "catgossip/network.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace catgossip {

/// The state X_k of the network: one point per agent, all in `tag`.
struct Configuration {
    SpaceTag tag = SpaceTag::euclidean;
    std::vector<SpacePoint> points;

    std::size_t size() const { return points.size(); }
};

/// Symmetric matrix of pairwise distances with a zero diagonal.
class PairwiseDistances {
public:
    PairwiseDistances() = default;
    explicit PairwiseDistances(const Configuration& c);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    /// Recompute every entry involving agent `v`.
    void refresh(const Configuration& c, std::size_t v);
    double max() const;

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

/// Diameter below which a configuration counts as consensus.
inline constexpr double kConsensusDiameter = 1e-10;

struct MetricsRecord {
    std::size_t iter = 0;
    double sigma2 = 0.0;
    double delta = 0.0;
    std::optional<double> sigma2_kappa;
    std::optional<double> delta_kappa;
    double diameter = 0.0;
    /// Variance under the ambient (Euclidean / Frobenius) norm, when requested.
    std::optional<double> sigma2_ambient;
};

/// (1/N) sum over unordered pairs of d^2.
double variance(const Configuration& c);
double variance(const PairwiseDistances& d);
/// sum over edges of (1/deg v + 1/deg w) d^2. SizeMismatch if g and c disagree.
double disagreement(const Configuration& c, const Graph& g);
double disagreement(const PairwiseDistances& d, const Graph& g);
/// (2/N) sum over unordered pairs of chi_k(d). DomainError when some d > pi/(2 sqrt k).
double variance_kappa(const Configuration& c, double kappa);
double variance_kappa(const PairwiseDistances& d, double kappa);
/// (1/2) sum over edges of (1/deg v + 1/deg w) chi_k(d).
double disagreement_kappa(const Configuration& c, const Graph& g, double kappa);
double disagreement_kappa(const PairwiseDistances& d, const Graph& g, double kappa);

/// All functionals at once; kappa-variants only for kappa > 0.
MetricsRecord compute_metrics(const PairwiseDistances& d, const Graph& g, double kappa);

/// (1/N) sum over pairs of ||x_v - x_w||^2 in the ambient vector space
/// (Frobenius for SPD). UnsupportedSpace for the other spaces.
double ambient_variance(const Configuration& c);

/// Exact E[sigma^2(X_{k+1}) - sigma^2(X_k) | X_k = c] under one midpoint step,
/// enumerating ordered pairs (v, w) with weight (1/N)(1/deg v). N <= 64.
double expected_one_step_change(const Configuration& c, const Graph& g);
/// Same for sigma^2_kappa.
double expected_one_step_change_kappa(const Configuration& c, const Graph& g, double kappa);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t points = 0;
};

/// Ordinary least squares of log(values) against iters over the tail
/// iters >= window * iters.back(). Throws DegenerateSeries when the window has
/// fewer than 10 points or a non-positive value.
FitResult fit_log_slope(std::span<const double> iters, std::span<const double> values, double window = 0.5);

struct Envelope {
    double coverage = 0.95;
    std::vector<double> lower, median, upper;
};

/// Nearest-rank quantile: the ceil(p n)-th order statistic (1-based), clamped to [1, n].
double nearest_rank_quantile(std::vector<double> sample, double p);

/// Per-iteration quantiles of log(value) across trials at (1-coverage)/2,
/// 1/2 and 1-(1-coverage)/2. Each inner vector is one trial's curve.
Envelope envelope(std::span<const std::vector<double>> curves, double coverage);

}  // namespace catgossip
