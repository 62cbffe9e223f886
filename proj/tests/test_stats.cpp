#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catgossip/engine.hpp"
#include "catgossip/errors.hpp"
#include "catgossip/model_kappa.hpp"
#include "catgossip/stats.hpp"
#include "oracles.hpp"

#include <numbers>

using namespace catgossip;

namespace {

constexpr double pi = std::numbers::pi;

Configuration line(std::initializer_list<double> xs) {
    Configuration c{SpaceTag::euclidean, {}};
    for (double x : xs) c.points.emplace_back(EuclideanVec{{x}});
    return c;
}

std::vector<Graph> graphs8() {
    std::vector<Graph> gs{Graph::complete(8), Graph::path(8)};
    gs.push_back(Graph::from_edge_list(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 0}}));
    gs.push_back(Graph::from_edge_list(8, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}, {0, 7}}));
    gs.push_back(Graph::from_edge_list(8, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {6, 7}, {0, 4}, {3, 7}, {1, 5}}));
    return gs;
}

Configuration sample(SpaceTag tag, std::size_t n, Rng& rng) {
    switch (tag) {
        case SpaceTag::euclidean: return init_euclidean(n, 3, rng);
        case SpaceTag::spd: return init_wishart(n, 3, rng);
        case SpaceTag::sphere: return init_sphere_quarter(n, rng);
        case SpaceTag::so3: return init_so3_ball(n, rng);
        case SpaceTag::tree: return init_tree_words(n, 30, rng);
    }
    return {};
}

// Expected one-step change by copying the configuration for every ordered
// pair and recomputing the functional from scratch.
template <class F>
double brute_force_expectation(const Configuration& c, const Graph& g, F functional) {
    const double n = static_cast<double>(c.size());
    const double before = functional(c);
    double e = 0.0;
    for (std::size_t v = 0; v < c.size(); ++v) {
        for (std::size_t w : g.neighbors(v)) {
            Configuration next = c;
            apply_midpoint(next, v, w);
            e += (functional(next) - before) / (n * static_cast<double>(g.degree(v)));
        }
    }
    return e;
}

}  // namespace

TEST_CASE("variance examples") {
    CHECK(variance(line({0, 2})) == 2.0);
    CHECK(variance(line({1.5, 1.5, 1.5})) == 0.0);
    const Configuration c = line({0, 1, 2});
    CHECK(variance(c) == doctest::Approx(2.0));
}

TEST_CASE("euclidean variance equals the sum of squared deviations from the mean") {
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const Configuration c = init_euclidean(7, 3, rng);
        std::vector<double> mean(3, 0.0);
        for (const auto& p : c.points) {
            for (int k = 0; k < 3; ++k) mean[k] += std::get<EuclideanVec>(p).x[k] / 7.0;
        }
        double s = 0.0;
        for (const auto& p : c.points) s += std::pow(oracle::euclid_dist(std::get<EuclideanVec>(p).x, mean), 2);
        CHECK(variance(c) == doctest::Approx(s).epsilon(1e-12));
    }
}

TEST_CASE("disagreement examples") {
    CHECK(disagreement(line({0, 2}), Graph::complete(2)) == 8.0);
    CHECK(disagreement(line({3, 3, 3}), Graph::path(3)) == 0.0);
    CHECK_THROWS_AS(disagreement(line({0, 1, 2}), Graph::complete(2)), SizeMismatch);
}

TEST_CASE("complete graph: delta = 2N/(N-1) sigma^2") {
    Rng rng(2);
    for (SpaceTag tag : {SpaceTag::euclidean, SpaceTag::spd, SpaceTag::tree}) {
        for (int i = 0; i < 50; ++i) {
            const Configuration c = sample(tag, 6, rng);
            const double lhs = disagreement(c, Graph::complete(6));
            const double rhs = 2.0 / 5.0 * 6.0 * variance(c);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, rhs));
        }
    }
}

TEST_CASE("kappa functionals") {
    Configuration same{SpaceTag::sphere, {SpherePoint{{1, 0, 0}}, SpherePoint{{1, 0, 0}}}};
    CHECK(variance_kappa(same, 1.0) == 0.0);
    CHECK(disagreement_kappa(same, Graph::complete(2), 1.0) == 0.0);
    Configuration quarter{SpaceTag::sphere, {SpherePoint{{1, 0, 0}}, SpherePoint{{0, 1, 0}}}};
    CHECK(variance_kappa(quarter, 1.0) == doctest::Approx(1.0));
    CHECK(disagreement_kappa(quarter, Graph::complete(2), 1.0) == doctest::Approx(1.0));
    Configuration wide{SpaceTag::sphere, {SpherePoint{{1, 0, 0}}, SpherePoint{{-0.2, std::sqrt(0.96), 0}}}};
    CHECK_THROWS_AS(variance_kappa(wide, 1.0), DomainError);
}

TEST_CASE("consensus is detected by every functional") {
    Rng rng(3);
    const Graph g = Graph::path(5);
    for (SpaceTag tag : {SpaceTag::euclidean, SpaceTag::spd, SpaceTag::tree, SpaceTag::sphere, SpaceTag::so3}) {
        Configuration c = sample(tag, 5, rng);
        for (auto& p : c.points) p = c.points[0];
        const PairwiseDistances d(c);
        const MetricsRecord r = compute_metrics(d, g, default_kappa(tag));
        CHECK(r.sigma2 == 0.0);
        CHECK(r.delta == 0.0);
        CHECK(r.diameter == 0.0);
        if (default_kappa(tag) > 0) {
            CHECK(*r.sigma2_kappa == 0.0);
            CHECK(*r.delta_kappa == 0.0);
        }
    }
}

TEST_CASE("pairwise cache refresh matches a full recompute") {
    Rng rng(4);
    Configuration c = init_wishart(6, 3, rng);
    PairwiseDistances d(c);
    apply_midpoint(c, 1, 4);
    d.refresh(c, 1);
    d.refresh(c, 4);
    const PairwiseDistances fresh(c);
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) CHECK(d(i, j) == fresh(i, j));
    }
}

TEST_CASE("prop 4 sandwich on five graphs") {
    Rng rng(5);
    const SpaceTag tags[] = {SpaceTag::euclidean, SpaceTag::spd, SpaceTag::tree};
    for (const Graph& g : graphs8()) {
        const double c_g = c_g_constant(g);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const Configuration c = sample(tags[i % 3], 8, rng);
            const double s2 = variance(c);
            const double delta = disagreement(c, g);
            worst = std::min({worst, s2 - delta / 16.0, c_g * delta - s2});
        }
        CHECK(worst >= -1e-10);
    }
}

TEST_CASE("kappa sandwich on five graphs") {
    Rng rng(6);
    for (const Graph& g : graphs8()) {
        const double c_k = pi * pi * c_g_constant(g);
        double worst = 0.0;
        for (int i = 0; i < 500; ++i) {
            const SpaceTag tag = i % 2 ? SpaceTag::so3 : SpaceTag::sphere;
            const double kappa = default_kappa(tag);
            const Configuration c = sample(tag, 8, rng);
            const double s2 = variance_kappa(c, kappa);
            const double delta = disagreement_kappa(c, g, kappa);
            worst = std::min({worst, s2 - kappa / (8.0 * pi * pi) * delta, c_k * delta - s2});
        }
        CHECK(worst >= -1e-10);
    }
}

TEST_CASE("one-step expectation: small cases") {
    CHECK(expected_one_step_change(line({0, 2}), Graph::complete(2)) == doctest::Approx(-2.0));
    CHECK(expected_one_step_change(line({1, 1, 1}), Graph::path(3)) == 0.0);
    Configuration same{SpaceTag::sphere, {SpherePoint{{0, 0, 1}}, SpherePoint{{0, 0, 1}}, SpherePoint{{0, 0, 1}}}};
    CHECK(expected_one_step_change_kappa(same, Graph::complete(3), 1.0) == 0.0);
}

TEST_CASE("one-step expectation agrees with brute force and obeys -delta/(2N)") {
    Rng rng(7);
    for (SpaceTag tag : {SpaceTag::euclidean, SpaceTag::spd, SpaceTag::tree}) {
        for (const Graph& g : {Graph::complete(6), Graph::path(6), Graph::path(4)}) {
            for (int i = 0; i < 10; ++i) {
                const Configuration c = sample(tag, g.size(), rng);
                const double e = expected_one_step_change(c, g);
                const double brute = brute_force_expectation(c, g, [](const Configuration& x) { return variance(x); });
                CHECK(std::abs(e - brute) <= 1e-9 * std::max(1.0, std::abs(brute)));
                const double bound = -disagreement(c, g) / (2.0 * static_cast<double>(g.size()));
                CHECK(e <= bound + 1e-9);
                if (tag == SpaceTag::euclidean) CHECK(std::abs(e - bound) <= 1e-9);
            }
        }
    }
}

TEST_CASE("kappa one-step expectation is negative and below -4 delta_k / N^2") {
    Rng rng(8);
    for (SpaceTag tag : {SpaceTag::sphere, SpaceTag::so3}) {
        const double kappa = default_kappa(tag);
        for (const Graph& g : {Graph::complete(3), Graph::path(3), Graph::complete(7)}) {
            for (int i = 0; i < 10; ++i) {
                const Configuration c = sample(tag, g.size(), rng);
                const double e = expected_one_step_change_kappa(c, g, kappa);
                const double brute =
                    brute_force_expectation(c, g, [kappa](const Configuration& x) { return variance_kappa(x, kappa); });
                CHECK(std::abs(e - brute) <= 1e-12);
                CHECK(e < 0.0);
                const double n = static_cast<double>(g.size());
                CHECK(e <= -4.0 * disagreement_kappa(c, g, kappa) / (n * n) + 1e-12);
            }
        }
    }
}

TEST_CASE("pathwise per-step bounds along midpoint trajectories") {
    for (SpaceTag tag : {SpaceTag::euclidean, SpaceTag::spd, SpaceTag::tree, SpaceTag::sphere, SpaceTag::so3}) {
        CAPTURE(to_string(tag));
        Rng rng(9);
        const Graph g = Graph::path(10);
        const double kappa = default_kappa(tag);
        Configuration c = sample(tag, 10, rng);
        double s2 = variance(c);
        double diam = PairwiseDistances(c).max();
        double s2k = kappa > 0 ? variance_kappa(c, kappa) : 0.0;
        for (std::size_t k = 1; k <= 300; ++k) {
            const GossipEvent ev = gossip_step_midpoint(c, g, rng, k);
            const double next = variance(c);
            if (kappa == 0.0) {
                CHECK(10.0 * (next - s2) <= -5.0 * ev.pre_distance * ev.pre_distance + 1e-9);
                CHECK(next <= s2 + 1e-12);
                const double d = PairwiseDistances(c).max();
                CHECK(d <= diam + 1e-9);
                diam = d;
            } else {
                const double nk = variance_kappa(c, kappa);
                CHECK(10.0 * (nk - s2k) <= -2.0 * chi_kappa(kappa, ev.pre_distance) + 1e-9);
                s2k = nk;
            }
            s2 = next;
        }
    }
}

TEST_CASE("log-slope fit") {
    std::vector<double> k, v;
    for (int i = 0; i <= 200; ++i) {
        k.push_back(i);
        v.push_back(4.0 * std::exp(-0.01 * i));
    }
    const FitResult f = fit_log_slope(k, v);
    CHECK(std::abs(f.slope + 0.01) <= 1e-12);
    CHECK(std::abs(f.r2 - 1.0) <= 1e-12);
    CHECK(f.points == 101);

    const std::vector<double> flat(k.size(), 3.0);
    const FitResult c = fit_log_slope(k, flat);
    CHECK(c.slope == 0.0);
    CHECK(c.r2 == 1.0);

    v[150] = 0.0;
    try {
        fit_log_slope(k, v);
        FAIL("expected DegenerateSeries");
    } catch (const DegenerateSeries& e) {
        CHECK(e.consensus_reached);
    }
    const std::vector<double> short_k{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, short_v(10, 1.0);
    CHECK_THROWS_AS(fit_log_slope(short_k, short_v), DegenerateSeries);
    CHECK_THROWS_AS(fit_log_slope(short_k, flat), LengthMismatch);
}

TEST_CASE("nearest-rank quantiles") {
    std::vector<double> xs;
    for (int i = 1; i <= 50; ++i) xs.push_back(i);
    CHECK(nearest_rank_quantile(xs, 0.025) == 2.0);
    CHECK(nearest_rank_quantile(xs, 0.975) == 49.0);
    CHECK(nearest_rank_quantile(xs, 0.5) == 25.0);
    CHECK(nearest_rank_quantile({7.0, 3.0}, 0.025) == 3.0);
    CHECK(nearest_rank_quantile({7.0, 3.0}, 0.975) == 7.0);
    CHECK(nearest_rank_quantile({5.0}, 0.0) == 5.0);
}

TEST_CASE("envelopes") {
    const std::vector<std::vector<double>> same(4, std::vector<double>{1.0, 0.5, 0.25});
    const Envelope e = envelope(same, 0.95);
    CHECK(e.lower == e.median);
    CHECK(e.median == e.upper);
    CHECK(e.lower[1] == doctest::Approx(std::log(0.5)));

    std::vector<std::vector<double>> fifty;
    for (int t = 1; t <= 50; ++t) fifty.push_back({std::exp(static_cast<double>(t))});
    const Envelope f = envelope(fifty, 0.95);
    CHECK(f.lower[0] == doctest::Approx(2.0));
    CHECK(f.upper[0] == doctest::Approx(49.0));

    const std::vector<std::vector<double>> two{{1.0, 2.0}, {4.0, 0.5}};
    const Envelope g = envelope(two, 0.95);
    CHECK(g.lower[0] == 0.0);
    CHECK(g.upper[0] == doctest::Approx(std::log(4.0)));
    CHECK(g.lower[1] == doctest::Approx(std::log(0.5)));

    const std::vector<std::vector<double>> ragged{{1.0, 2.0}, {1.0}};
    CHECK_THROWS_AS(envelope(ragged, 0.95), LengthMismatch);
    CHECK_THROWS_AS(envelope(std::vector<std::vector<double>>{{1.0}}, 0.95), LengthMismatch);
}
