#include "catgossip/stats.hpp"

#include "catgossip/errors.hpp"
#include "catgossip/model_kappa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace catgossip {

namespace {

void require_same_size(std::size_t n, const Graph& g) {
    if (n != g.size()) {
        throw SizeMismatch("configuration has " + std::to_string(n) + " agents, graph has " +
                           std::to_string(g.size()));
    }
}

double chi_checked(double kappa, double d) {
    const double limit = std::numbers::pi / (2.0 * std::sqrt(kappa));
    if (d > limit + tol::domain) {
        throw DomainError("kappa functional: distance exceeds pi/(2 sqrt(kappa))");
    }
    return chi_kappa(kappa, d);
}

double edge_weight(const Graph& g, std::size_t v, std::size_t w) {
    return 1.0 / static_cast<double>(g.degree(v)) + 1.0 / static_cast<double>(g.degree(w));
}

}  // namespace

PairwiseDistances::PairwiseDistances(const Configuration& c) : n_(c.size()), d_(n_ * n_, 0.0) {
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            const double v = distance(c.tag, c.points[i], c.points[j]);
            d_[i * n_ + j] = v;
            d_[j * n_ + i] = v;
        }
    }
}

void PairwiseDistances::refresh(const Configuration& c, std::size_t v) {
    for (std::size_t j = 0; j < n_; ++j) {
        if (j == v) continue;
        const double x = distance(c.tag, c.points[v], c.points[j]);
        d_[v * n_ + j] = x;
        d_[j * n_ + v] = x;
    }
}

double PairwiseDistances::max() const {
    double m = 0.0;
    for (double x : d_) m = std::max(m, x);
    return m;
}

double variance(const PairwiseDistances& d) {
    const std::size_t n = d.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) s += d(i, j) * d(i, j);
    }
    return s / static_cast<double>(n);
}

double variance(const Configuration& c) { return variance(PairwiseDistances(c)); }

double disagreement(const PairwiseDistances& d, const Graph& g) {
    require_same_size(d.size(), g);
    double s = 0.0;
    for (const auto& [v, w] : g.edges()) s += edge_weight(g, v, w) * d(v, w) * d(v, w);
    return s;
}

double disagreement(const Configuration& c, const Graph& g) {
    require_same_size(c.size(), g);
    return disagreement(PairwiseDistances(c), g);
}

double variance_kappa(const PairwiseDistances& d, double kappa) {
    const std::size_t n = d.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) s += chi_checked(kappa, d(i, j));
    }
    return 2.0 * s / static_cast<double>(n);
}

double variance_kappa(const Configuration& c, double kappa) {
    return variance_kappa(PairwiseDistances(c), kappa);
}

double disagreement_kappa(const PairwiseDistances& d, const Graph& g, double kappa) {
    require_same_size(d.size(), g);
    double s = 0.0;
    for (const auto& [v, w] : g.edges()) s += edge_weight(g, v, w) * chi_checked(kappa, d(v, w));
    return 0.5 * s;
}

double disagreement_kappa(const Configuration& c, const Graph& g, double kappa) {
    require_same_size(c.size(), g);
    return disagreement_kappa(PairwiseDistances(c), g, kappa);
}

MetricsRecord compute_metrics(const PairwiseDistances& d, const Graph& g, double kappa) {
    MetricsRecord r;
    r.sigma2 = variance(d);
    r.delta = disagreement(d, g);
    r.diameter = d.max();
    if (kappa > 0.0) {
        r.sigma2_kappa = variance_kappa(d, kappa);
        r.delta_kappa = disagreement_kappa(d, g, kappa);
    }
    return r;
}

double ambient_variance(const Configuration& c) {
    const std::size_t n = c.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (c.tag == SpaceTag::spd) {
                const double f = frobenius_norm(std::get<SpdMatrix>(c.points[i]).m - std::get<SpdMatrix>(c.points[j]).m);
                s += f * f;
            } else if (c.tag == SpaceTag::euclidean) {
                const double e = distance(c.tag, c.points[i], c.points[j]);
                s += e * e;
            } else {
                throw UnsupportedSpace("ambient_variance: space has no ambient vector structure");
            }
        }
    }
    return s / static_cast<double>(n);
}

namespace {

// Exact expectation of the change of sum_{pairs} f(d) under one midpoint
// step, enumerating ordered wake-ups (v, w) with probability (1/N)(1/deg v).
template <class F>
double expected_pair_sum_change(const Configuration& c, const Graph& g, F f) {
    require_same_size(c.size(), g);
    const std::size_t n = c.size();
    if (n > 64) throw DomainError("expected_one_step_change: enumeration limited to 64 agents");
    const PairwiseDistances d(c);
    double expectation = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t w : g.neighbors(v)) {
            const SpacePoint m = midpoint(c.tag, c.points[v], c.points[w]);
            double change = -f(d(v, w));
            for (std::size_t u = 0; u < n; ++u) {
                if (u == v || u == w) continue;
                change += 2.0 * f(distance(c.tag, c.points[u], m)) - f(d(u, v)) - f(d(u, w));
            }
            const double prob = 1.0 / (static_cast<double>(n) * static_cast<double>(g.degree(v)));
            expectation += prob * change;
        }
    }
    return expectation;
}

}  // namespace

double expected_one_step_change(const Configuration& c, const Graph& g) {
    const double n = static_cast<double>(c.size());
    return expected_pair_sum_change(c, g, [](double x) { return x * x; }) / n;
}

double expected_one_step_change_kappa(const Configuration& c, const Graph& g, double kappa) {
    const double n = static_cast<double>(c.size());
    return 2.0 * expected_pair_sum_change(c, g, [kappa](double x) { return chi_checked(kappa, x); }) / n;
}

FitResult fit_log_slope(std::span<const double> iters, std::span<const double> values, double window) {
    if (iters.size() != values.size()) throw LengthMismatch("fit_log_slope: iters and values differ in length");
    if (iters.empty()) throw DegenerateSeries("fit_log_slope: empty series", false);
    const double start = window * iters.back();

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < iters.size(); ++i) {
        if (iters[i] < start) continue;
        if (!(values[i] > 0.0)) {
            throw DegenerateSeries("fit_log_slope: non-positive value in the fit window (consensus reached)", true);
        }
        xs.push_back(iters[i]);
        ys.push_back(std::log(values[i]));
    }
    if (xs.size() < 10) throw DegenerateSeries("fit_log_slope: fewer than 10 points in the fit window", false);

    FitResult r;
    r.points = xs.size();
    if (std::all_of(ys.begin(), ys.end(), [&](double y) { return y == ys.front(); })) {
        // The centred sums below would pick up rounding noise from the mean.
        r.intercept = ys.front();
        r.r2 = 1.0;
        return r;
    }

    const double m = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    r.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    r.intercept = my - r.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (r.intercept + r.slope * xs[i]);
        ss_res += e * e;
    }
    r.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return r;
}

double nearest_rank_quantile(std::vector<double> sample, double p) {
    if (sample.empty()) throw LengthMismatch("quantile of an empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    auto rank = static_cast<long>(std::ceil(p * n - 1e-9));
    rank = std::clamp<long>(rank, 1, static_cast<long>(sample.size()));
    return sample[static_cast<std::size_t>(rank - 1)];
}

Envelope envelope(std::span<const std::vector<double>> curves, double coverage) {
    if (curves.size() < 2) throw LengthMismatch("envelope: at least 2 trials are required");
    if (!(coverage > 0.0 && coverage < 1.0)) throw DomainError("envelope: coverage must lie in (0,1)");
    const std::size_t len = curves.front().size();
    for (const auto& c : curves) {
        if (c.size() != len) throw LengthMismatch("envelope: trials differ in length");
    }
    Envelope env;
    env.coverage = coverage;
    const double lo = 0.5 * (1.0 - coverage);
    std::vector<double> column(curves.size());
    for (std::size_t k = 0; k < len; ++k) {
        for (std::size_t t = 0; t < curves.size(); ++t) column[t] = std::log(curves[t][k]);
        env.lower.push_back(nearest_rank_quantile(column, lo));
        env.median.push_back(nearest_rank_quantile(column, 0.5));
        env.upper.push_back(nearest_rank_quantile(column, 1.0 - lo));
    }
    return env;
}

}  // namespace catgossip
