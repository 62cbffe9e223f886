#include "catgossip/properties.hpp"

#include "catgossip/engine.hpp"
#include "catgossip/errors.hpp"
#include "catgossip/model_kappa.hpp"
#include "catgossip/network.hpp"
#include "catgossip/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

namespace catgossip {

PropertySuite parse_property_suite(std::string_view name) {
    if (name == "cat0") return PropertySuite::cat0;
    if (name == "catk") return PropertySuite::catk;
    if (name == "all") return PropertySuite::all;
    throw DomainError("unknown property suite '" + std::string(name) + "'");
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string points_text(const std::vector<SpacePoint>& pts) {
    std::string s;
    for (const auto& p : pts) s += (s.empty() ? "" : " | ") + describe(p);
    return s;
}

class Check {
public:
    Check(std::string name, double tolerance) : name_(std::move(name)), tol_(tolerance) {}

    void add(double slack, const std::function<std::string()>& witness) {
        ++samples_;
        if (slack < worst_) {
            worst_ = slack;
            if (slack < -tol_) witness_ = witness();
        }
    }

    bool passed() const { return !(worst_ < -tol_); }

    void print(std::ostream& out) const {
        out << (passed() ? "PASS " : "FAIL ") << name_ << " samples=" << samples_ << " worst_slack=" << fmt(worst_)
            << " tolerance=" << fmt(tol_) << '\n';
        if (!passed()) out << "  witness: " << witness_ << '\n';
    }

private:
    std::string name_;
    double tol_;
    std::size_t samples_ = 0;
    double worst_ = std::numeric_limits<double>::infinity();
    std::string witness_;
};

Configuration sample(SpaceTag tag, std::size_t n, Rng& rng) {
    switch (tag) {
        case SpaceTag::euclidean: return init_euclidean(n, 3, rng);
        case SpaceTag::spd: return init_wishart(n, 3, rng);
        case SpaceTag::sphere: return init_sphere_quarter(n, rng);
        case SpaceTag::so3: return init_so3_ball(n, rng);
        case SpaceTag::tree: return init_tree_words(n, 30, rng);
    }
    throw UnsupportedSpace("sample: unknown space");
}

std::vector<std::pair<std::string, Graph>> test_graphs(std::size_t n) {
    std::vector<Edge> cycle, star, lollipop;
    for (std::size_t v = 0; v < n; ++v) cycle.emplace_back(v, (v + 1) % n);
    for (std::size_t v = 1; v < n; ++v) star.emplace_back(0, v);
    for (std::size_t v = 0; v < 4; ++v) {
        for (std::size_t w = v + 1; w < 4; ++w) lollipop.emplace_back(v, w);
    }
    for (std::size_t v = 3; v + 1 < n; ++v) lollipop.emplace_back(v, v + 1);
    std::vector<std::pair<std::string, Graph>> graphs;
    graphs.emplace_back("complete", Graph::complete(n));
    graphs.emplace_back("path", Graph::path(n));
    graphs.emplace_back("cycle", Graph::from_edge_list(n, cycle));
    graphs.emplace_back("star", Graph::from_edge_list(n, star));
    graphs.emplace_back("lollipop", Graph::from_edge_list(n, lollipop));
    return graphs;
}

void run_cat0(std::uint64_t seed, std::vector<Check>& checks) {
    for (SpaceTag tag : {SpaceTag::euclidean, SpaceTag::spd, SpaceTag::tree}) {
        Rng rng(seed);
        // Slack relative to max(1, d(p,q)^2 + d(p,r)^2): tree words of length 30 give d^2 in the thousands.
        Check bt("bruhat_tits_relative/" + std::string(to_string(tag)), tag == SpaceTag::spd ? 1e-9 : 1e-12);
        for (int i = 0; i < 1000; ++i) {
            const Configuration c = sample(tag, 3, rng);
            const double dpq = distance(tag, c.points[0], c.points[1]);
            const double dpr = distance(tag, c.points[0], c.points[2]);
            const double scale = std::max(1.0, dpq * dpq + dpr * dpr);
            const double slack = check_bruhat_tits(tag, c.points[0], c.points[1], c.points[2]);
            bt.add(slack / scale, [&] { return points_text(c.points); });
        }
        checks.push_back(bt);
    }
    for (SpaceTag tag : {SpaceTag::spd, SpaceTag::tree}) {
        Rng rng(seed + 1);
        Check cat("cat_inequality/" + std::string(to_string(tag)), tol::matrix_geodesic);
        for (int i = 0; i < 100; ++i) {
            const Configuration c = sample(tag, 3, rng);
            const double slack = check_cat_inequality(tag, 0.0, c.points[0], c.points[1], c.points[2], 25);
            cat.add(slack, [&] { return points_text(c.points); });
        }
        checks.push_back(cat);
    }

    constexpr std::size_t n = 8;
    Check lower("sandwich/lower", 1e-10);
    Check upper("sandwich/upper", 1e-10);
    {
        Rng rng(seed + 2);
        const SpaceTag tags[] = {SpaceTag::euclidean, SpaceTag::spd, SpaceTag::tree};
        for (const auto& [name, g] : test_graphs(n)) {
            const double c_g = c_g_constant(g);
            for (int i = 0; i < 200; ++i) {
                const Configuration c = sample(tags[i % 3], n, rng);
                const PairwiseDistances d(c);
                const double s2 = variance(d);
                const double delta = disagreement(d, g);
                auto witness = [&, &name = name] { return name + ": " + points_text(c.points); };
                lower.add(s2 - delta / (2.0 * n), witness);
                upper.add(c_g * delta - s2, witness);
            }
        }
    }
    checks.push_back(lower);
    checks.push_back(upper);

    for (SpaceTag tag : {SpaceTag::euclidean, SpaceTag::spd, SpaceTag::tree}) {
        Rng rng(seed + 3);
        Check bound("one_step/" + std::string(to_string(tag)), 1e-9);
        Check equality("one_step_equality/euclidean", 1e-9);
        for (const Graph& g : {Graph::complete(n), Graph::path(n)}) {
            for (int i = 0; i < 20; ++i) {
                const Configuration c = sample(tag, n, rng);
                const double expected = expected_one_step_change(c, g);
                const double target = -disagreement(c, g) / (2.0 * n);
                auto witness = [&] { return points_text(c.points); };
                bound.add(target - expected, witness);
                if (tag == SpaceTag::euclidean) equality.add(-std::abs(target - expected), witness);
            }
        }
        checks.push_back(bound);
        if (tag == SpaceTag::euclidean) checks.push_back(equality);
    }
}

void run_catk(std::uint64_t seed, std::vector<Check>& checks) {
    for (SpaceTag tag : {SpaceTag::sphere, SpaceTag::so3}) {
        const double kappa = default_kappa(tag);
        const std::string suffix = "/" + std::string(to_string(tag));
        Rng rng(seed);
        Check cosine("midpoint_cosine" + suffix, 1e-9);
        for (int i = 0; i < 1000; ++i) {
            const Configuration c = sample(tag, 3, rng);
            const double slack = check_midpoint_cosine(tag, kappa, c.points[0], c.points[1], c.points[2]);
            cosine.add(slack, [&] { return points_text(c.points); });
        }
        checks.push_back(cosine);

        Check cat("cat_inequality" + suffix, tol::matrix_geodesic);
        for (int i = 0; i < 100; ++i) {
            const Configuration c = sample(tag, 3, rng);
            const double slack = check_cat_inequality(tag, kappa, c.points[0], c.points[1], c.points[2], 25);
            cat.add(slack, [&] { return points_text(c.points); });
        }
        checks.push_back(cat);
    }

    for (double kappa : {1.0, 0.25}) {
        Rng rng(seed + 1);
        std::uniform_real_distribution<double> unit;
        const double limit = std::numbers::pi / (2.0 * std::sqrt(kappa));
        const std::string suffix = "/kappa=" + fmt(kappa);
        Check lower("chi_envelope/lower" + suffix, 0.0);
        Check upper("chi_envelope/upper" + suffix, 0.0);
        for (int i = 0; i < 10000; ++i) {
            const double x = limit * unit(rng);
            const double chi = chi_kappa(kappa, x);
            auto witness = [x] { return "x=" + fmt(x); };
            lower.add(chi - 2.0 * kappa / (std::numbers::pi * std::numbers::pi) * x * x, witness);
            upper.add(0.5 * kappa * x * x - chi, witness);
        }
        checks.push_back(lower);
        checks.push_back(upper);
    }

    constexpr std::size_t n = 8;
    const double pi2 = std::numbers::pi * std::numbers::pi;
    Check lower("sandwich_kappa/lower", 1e-10);
    Check upper("sandwich_kappa/upper", 1e-10);
    {
        Rng rng(seed + 2);
        for (const auto& [name, g] : test_graphs(n)) {
            const double c_kappa_const = pi2 * c_g_constant(g);
            for (int i = 0; i < 200; ++i) {
                const SpaceTag tag = i % 2 ? SpaceTag::so3 : SpaceTag::sphere;
                const double kappa = default_kappa(tag);
                const Configuration c = sample(tag, n, rng);
                const PairwiseDistances d(c);
                const double s2 = variance_kappa(d, kappa);
                const double delta = disagreement_kappa(d, g, kappa);
                auto witness = [&, &name = name] { return name + ": " + points_text(c.points); };
                lower.add(s2 - kappa / (n * pi2) * delta, witness);
                upper.add(c_kappa_const * delta - s2, witness);
            }
        }
    }
    checks.push_back(lower);
    checks.push_back(upper);

    for (SpaceTag tag : {SpaceTag::sphere, SpaceTag::so3}) {
        const double kappa = default_kappa(tag);
        Rng rng(seed + 3);
        Check bound("one_step_kappa/" + std::string(to_string(tag)), 1e-12);
        for (const Graph& g : {Graph::complete(n), Graph::path(n)}) {
            for (int i = 0; i < 20; ++i) {
                const Configuration c = sample(tag, n, rng);
                const double expected = expected_one_step_change_kappa(c, g, kappa);
                const double target = -4.0 * disagreement_kappa(c, g, kappa) / static_cast<double>(n * n);
                bound.add(target - expected, [&] { return points_text(c.points); });
            }
        }
        checks.push_back(bound);
    }
}

}  // namespace

bool run_property_suite(PropertySuite suite, std::uint64_t seed, std::ostream& report) {
    std::vector<Check> checks;
    if (suite != PropertySuite::catk) run_cat0(seed, checks);
    if (suite != PropertySuite::cat0) run_catk(seed, checks);
    std::size_t failed = 0;
    for (const auto& c : checks) {
        c.print(report);
        failed += c.passed() ? 0 : 1;
    }
    report << (failed == 0 ? "all " + std::to_string(checks.size()) + " checks passed"
                           : std::to_string(failed) + " of " + std::to_string(checks.size()) + " checks failed")
           << '\n';
    return failed == 0;
}

}  // namespace catgossip
