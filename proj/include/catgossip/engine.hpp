#pragma once

// Gossip steps, initial-configuration samplers and single-trial execution.

#include "catgossip/geodesic.hpp"
#include "catgossip/network.hpp"
#include "catgossip/stats.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace catgossip {

enum class Algorithm { midpoint, arithmetic, rsgd };

std::string_view to_string(Algorithm a);
/// Throws DomainError for unknown names.
Algorithm parse_algorithm(std::string_view name);

/// Whether `a` can run on `space` (arithmetic: euclidean, spd; rsgd: spd).
bool algorithm_supports(Algorithm a, SpaceTag space);

struct GossipEvent {
    std::size_t iter = 0;
    std::size_t v = 0;
    std::size_t w = 0;
    double pre_distance = 0.0;
};

// Steps update `c` in place. `iter` is the 1-based index of the step.

/// Both woken agents move to the midpoint of their current positions.
GossipEvent gossip_step_midpoint(Configuration& c, const Graph& g, Rng& rng, std::size_t iter);
/// Both woken agents move to the entrywise average. UnsupportedSpace unless
/// euclidean or spd.
GossipEvent gossip_step_arithmetic(Configuration& c, const Graph& g, Rng& rng, std::size_t iter);
/// V moves by the fraction 1/k along the geodesic toward W. With `symmetric`,
/// W also moves toward V by min(1/k, 1/2). SPD only.
GossipEvent gossip_step_rsgd(Configuration& c, const Graph& g, Rng& rng, std::size_t k, bool symmetric = false);

/// Midpoint update of the pair (v, w) without sampling. Returns d(x_v, x_w) before the update.
double apply_midpoint(Configuration& c, std::size_t v, std::size_t w);

/// Sum of q outer products z z^T of standard Gaussian vectors. q must be 3.
Configuration init_wishart(std::size_t n_agents, std::size_t q, Rng& rng);
/// Uniform on the open positive octant of S^2 (normalized absolute Gaussians).
Configuration init_sphere_quarter(std::size_t n_agents, Rng& rng);
/// Haar-uniform rotations with angle below pi/4, i.e. the ball of diameter pi/2 around I.
Configuration init_so3_ball(std::size_t n_agents, Rng& rng);
/// Random reduced words of length uniform on {1..max_len}, lambda uniform on (0,1].
Configuration init_tree_words(std::size_t n_agents, std::size_t max_len, Rng& rng);
/// Standard normal vectors in R^dim.
Configuration init_euclidean(std::size_t n_agents, std::size_t dim, Rng& rng);

enum class GraphKind { complete, path, file };

struct ExperimentConfig {
    SpaceTag space = SpaceTag::spd;
    std::size_t dim = 2;
    GraphKind graph = GraphKind::complete;
    std::string graph_file;
    std::size_t agents = 30;
    /// Defaults to default_iters(space).
    std::optional<std::size_t> iters;
    std::size_t trials = 50;
    std::uint64_t seed = 1;
    Algorithm algo = Algorithm::midpoint;
    /// Defaults to default_kappa(space).
    std::optional<double> kappa;
    std::size_t record_every = 1;
    double window = 0.5;
    double coverage = 0.95;
    /// 0 means available parallelism.
    std::size_t jobs = 0;
    std::size_t max_len = 30;
    bool rsgd_symmetric = false;
    /// Also record the ambient (Euclidean / Frobenius) variance.
    bool ambient = false;

    std::size_t iterations() const;
    double curvature() const;
};

/// 3000 for spd, 500 otherwise.
std::size_t default_iters(SpaceTag space);

Graph make_graph(const ExperimentConfig& cfg);

/// Initial configuration for cfg.space. For kappa > 0 the sample is redrawn
/// (up to 100 times) until its diameter is below r_kappa.
Configuration initialize(const ExperimentConfig& cfg, Rng& rng);

struct TrialSeries {
    std::uint64_t seed = 0;
    Algorithm algo = Algorithm::midpoint;
    /// Iteration 0 and every record_every-th iteration.
    std::vector<MetricsRecord> records;
    double peak_diameter = 0.0;
    /// First iteration whose diameter fell below kConsensusDiameter.
    std::optional<std::size_t> consensus_iter;
};

/// Runs trial `trial_index` with seed cfg.seed + trial_index. Any error is
/// rethrown as TrialFailure carrying the trial and iteration. For kappa > 0 a
/// diameter reaching r_kappa is an error.
TrialSeries run_trial(const ExperimentConfig& cfg, const Graph& g, std::size_t trial_index);

}  // namespace catgossip
