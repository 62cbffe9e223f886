#include "catgossip/engine.hpp"

#include "catgossip/errors.hpp"
#include "catgossip/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace catgossip {

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::midpoint: return "midpoint";
        case Algorithm::arithmetic: return "arithmetic";
        case Algorithm::rsgd: return "rsgd";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "midpoint") return Algorithm::midpoint;
    if (name == "arithmetic") return Algorithm::arithmetic;
    if (name == "rsgd") return Algorithm::rsgd;
    throw DomainError("unknown algorithm '" + std::string(name) + "'");
}

bool algorithm_supports(Algorithm a, SpaceTag space) {
    switch (a) {
        case Algorithm::midpoint: return true;
        case Algorithm::arithmetic: return space == SpaceTag::euclidean || space == SpaceTag::spd;
        case Algorithm::rsgd: return space == SpaceTag::spd;
    }
    return false;
}

double apply_midpoint(Configuration& c, std::size_t v, std::size_t w) {
    const double d = distance(c.tag, c.points[v], c.points[w]);
    SpacePoint m = midpoint(c.tag, c.points[v], c.points[w]);
    c.points[v] = m;
    c.points[w] = std::move(m);
    return d;
}

GossipEvent gossip_step_midpoint(Configuration& c, const Graph& g, Rng& rng, std::size_t iter) {
    const auto [v, w] = sample_pair(g, rng);
    const double d = apply_midpoint(c, v, w);
    return {iter, v, w, d};
}

GossipEvent gossip_step_arithmetic(Configuration& c, const Graph& g, Rng& rng, std::size_t iter) {
    if (!algorithm_supports(Algorithm::arithmetic, c.tag)) {
        throw UnsupportedSpace("arithmetic averaging needs a linear ambient space, got " +
                               std::string(to_string(c.tag)));
    }
    const auto [v, w] = sample_pair(g, rng);
    const double d = distance(c.tag, c.points[v], c.points[w]);
    SpacePoint avg;
    if (c.tag == SpaceTag::euclidean) {
        const auto& x = std::get<EuclideanVec>(c.points[v]).x;
        const auto& y = std::get<EuclideanVec>(c.points[w]).x;
        EuclideanVec r{std::vector<double>(x.size())};
        for (std::size_t i = 0; i < x.size(); ++i) r.x[i] = 0.5 * (x[i] + y[i]);
        avg = std::move(r);
    } else {
        const Mat3& x = std::get<SpdMatrix>(c.points[v]).m;
        const Mat3& y = std::get<SpdMatrix>(c.points[w]).m;
        avg = SpdMatrix{symmetrize(0.5 * (x + y))};
    }
    c.points[v] = avg;
    c.points[w] = std::move(avg);
    return {iter, v, w, d};
}

GossipEvent gossip_step_rsgd(Configuration& c, const Graph& g, Rng& rng, std::size_t k, bool symmetric) {
    if (!algorithm_supports(Algorithm::rsgd, c.tag)) {
        throw UnsupportedSpace("rsgd is only available on spd, got " + std::string(to_string(c.tag)));
    }
    if (k == 0) throw DomainError("rsgd: step index must be at least 1");
    const auto [v, w] = sample_pair(g, rng);
    const double d = distance(c.tag, c.points[v], c.points[w]);
    const double gamma = 1.0 / static_cast<double>(k);
    const SpacePoint xv = c.points[v];
    const SpacePoint xw = c.points[w];
    c.points[v] = geodesic_point(c.tag, xv, xw, gamma);
    if (symmetric) c.points[w] = geodesic_point(c.tag, xw, xv, std::min(gamma, 0.5));
    return {k, v, w, d};
}

Configuration init_wishart(std::size_t n_agents, std::size_t q, Rng& rng) {
    if (q != 3) throw DomainError("init_wishart: only q = 3 is supported");
    std::normal_distribution<double> normal;
    Configuration c{SpaceTag::spd, {}};
    c.points.reserve(n_agents);
    for (std::size_t i = 0; i < n_agents; ++i) {
        Mat3 m;
        bool ok = false;
        for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
            m = Mat3::zero();
            for (std::size_t k = 0; k < q; ++k) {
                const Vec3 z{normal(rng), normal(rng), normal(rng)};
                for (int r = 0; r < 3; ++r) {
                    for (int s = 0; s < 3; ++s) m(r, s) += z[r] * z[s];
                }
            }
            m = symmetrize(m);
            ok = sym_eigen(m).values[0] >= 1e-10;
        }
        if (!ok) throw InitializationError("init_wishart: no well-conditioned sample after 100 draws");
        c.points.emplace_back(SpdMatrix{m});
    }
    return c;
}

Configuration init_sphere_quarter(std::size_t n_agents, Rng& rng) {
    std::normal_distribution<double> normal;
    Configuration c{SpaceTag::sphere, {}};
    c.points.reserve(n_agents);
    while (c.points.size() < n_agents) {
        Vec3 x{std::abs(normal(rng)), std::abs(normal(rng)), std::abs(normal(rng))};
        const double n = norm(x);
        if (x[0] == 0.0 || x[1] == 0.0 || x[2] == 0.0) continue;
        for (double& xi : x) xi /= n;
        c.points.emplace_back(SpherePoint{x});
    }
    return c;
}

Configuration init_so3_ball(std::size_t n_agents, Rng& rng) {
    constexpr double radius = std::numbers::pi / 4.0;
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit;
    const double density_max = 1.0 - std::cos(radius);
    Configuration c{SpaceTag::so3, {}};
    c.points.reserve(n_agents);
    while (c.points.size() < n_agents) {
        Vec3 axis{normal(rng), normal(rng), normal(rng)};
        const double n = norm(axis);
        if (n == 0.0) continue;
        // Haar measure puts density proportional to 1 - cos(theta) on the angle.
        double theta = 0.0;
        do {
            theta = radius * unit(rng);
        } while (unit(rng) * density_max > 1.0 - std::cos(theta));
        for (double& a : axis) a *= theta / n;
        c.points.emplace_back(so3_exp(axis));
    }
    return c;
}

Configuration init_tree_words(std::size_t n_agents, std::size_t max_len, Rng& rng) {
    if (max_len < 1) throw DomainError("init_tree_words: max_len must be at least 1");
    std::uniform_int_distribution<std::size_t> length(1, max_len);
    std::uniform_int_distribution<int> letter(0, 3);
    std::uniform_real_distribution<double> unit;
    Configuration c{SpaceTag::tree, {}};
    c.points.reserve(n_agents);
    for (std::size_t i = 0; i < n_agents; ++i) {
        const std::size_t len = length(rng);
        std::vector<Letter> letters;
        letters.reserve(len);
        while (letters.size() < len) {
            const auto l = static_cast<Letter>(letter(rng));
            if (!letters.empty() && l == inverse(letters.back())) continue;
            letters.push_back(l);
        }
        c.points.emplace_back(TreePoint{Word(std::move(letters)), 1.0 - unit(rng)});
    }
    return c;
}

Configuration init_euclidean(std::size_t n_agents, std::size_t dim, Rng& rng) {
    if (dim < 1) throw DomainError("init_euclidean: dim must be at least 1");
    std::normal_distribution<double> normal;
    Configuration c{SpaceTag::euclidean, {}};
    c.points.reserve(n_agents);
    for (std::size_t i = 0; i < n_agents; ++i) {
        EuclideanVec p{std::vector<double>(dim)};
        for (double& x : p.x) x = normal(rng);
        c.points.emplace_back(std::move(p));
    }
    return c;
}

std::size_t default_iters(SpaceTag space) { return space == SpaceTag::spd ? 3000 : 500; }

std::size_t ExperimentConfig::iterations() const { return iters.value_or(default_iters(space)); }

double ExperimentConfig::curvature() const { return kappa.value_or(default_kappa(space)); }

Graph make_graph(const ExperimentConfig& cfg) {
    switch (cfg.graph) {
        case GraphKind::complete: return Graph::complete(cfg.agents);
        case GraphKind::path: return Graph::path(cfg.agents);
        case GraphKind::file: return load_edge_list(cfg.graph_file, cfg.agents);
    }
    throw GraphError("unknown graph kind");
}

namespace {

Configuration sample_once(const ExperimentConfig& cfg, Rng& rng) {
    switch (cfg.space) {
        case SpaceTag::euclidean: return init_euclidean(cfg.agents, cfg.dim, rng);
        case SpaceTag::spd: return init_wishart(cfg.agents, 3, rng);
        case SpaceTag::sphere: return init_sphere_quarter(cfg.agents, rng);
        case SpaceTag::so3: return init_so3_ball(cfg.agents, rng);
        case SpaceTag::tree: return init_tree_words(cfg.agents, cfg.max_len, rng);
    }
    throw UnsupportedSpace("unknown space");
}

}  // namespace

Configuration initialize(const ExperimentConfig& cfg, Rng& rng) {
    const double kappa = cfg.curvature();
    if (!(kappa > 0.0)) return sample_once(cfg, rng);
    const double r_kappa = CurvatureBound::of(kappa).r_kappa;
    for (int attempt = 0; attempt < 100; ++attempt) {
        Configuration c = sample_once(cfg, rng);
        if (PairwiseDistances(c).max() < r_kappa) return c;
    }
    throw InitializationError("initial diameter not below r_kappa after 100 draws");
}

TrialSeries run_trial(const ExperimentConfig& cfg, const Graph& g, std::size_t trial_index) {
    TrialSeries series;
    series.seed = cfg.seed + trial_index;
    series.algo = cfg.algo;
    const std::size_t iters = cfg.iterations();
    const double kappa = cfg.curvature();
    const double r_kappa = CurvatureBound::of(kappa).r_kappa;
    const std::size_t every = std::max<std::size_t>(cfg.record_every, 1);

    std::size_t k = 0;
    try {
        Rng rng(series.seed);
        Configuration c = initialize(cfg, rng);
        if (c.size() != g.size()) throw SizeMismatch("graph size differs from the agent count");
        PairwiseDistances d(c);

        auto observe = [&] {
            const double diam = d.max();
            series.peak_diameter = std::max(series.peak_diameter, diam);
            if (kappa > 0.0 && diam >= r_kappa) {
                throw DomainError("locality violated: diameter " + std::to_string(diam) + " reached r_kappa");
            }
            if (!series.consensus_iter && diam < kConsensusDiameter) series.consensus_iter = k;
            if (k % every == 0) {
                MetricsRecord r = compute_metrics(d, g, kappa);
                r.iter = k;
                if (cfg.ambient) r.sigma2_ambient = ambient_variance(c);
                series.records.push_back(r);
            }
        };

        series.records.reserve(iters / every + 1);
        observe();
        for (k = 1; k <= iters; ++k) {
            GossipEvent ev;
            switch (cfg.algo) {
                case Algorithm::midpoint: ev = gossip_step_midpoint(c, g, rng, k); break;
                case Algorithm::arithmetic: ev = gossip_step_arithmetic(c, g, rng, k); break;
                case Algorithm::rsgd: ev = gossip_step_rsgd(c, g, rng, k, cfg.rsgd_symmetric); break;
            }
            d.refresh(c, ev.v);
            d.refresh(c, ev.w);
            observe();
        }
    } catch (const TrialFailure&) {
        throw;
    } catch (const std::exception& e) {
        throw TrialFailure(trial_index, std::min(k, iters), e.what());
    }
    return series;
}

}  // namespace catgossip
