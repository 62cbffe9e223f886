#include "catgossip/model_kappa.hpp"

#include "catgossip/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace catgossip {

namespace {

double minkowski(const std::vector<double>& x, const std::vector<double>& y) {
    return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

double dot3(const std::vector<double>& x, const std::vector<double>& y) {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

double cross_norm3(const std::vector<double>& x, const std::vector<double>& y) {
    const double c0 = x[1] * y[2] - x[2] * y[1];
    const double c1 = x[2] * y[0] - x[0] * y[2];
    const double c2 = x[0] * y[1] - x[1] * y[0];
    return std::sqrt(c0 * c0 + c1 * c1 + c2 * c2);
}

std::size_t dim_for(double kappa) { return kappa == 0.0 ? 2 : 3; }

// Unscaled angle (sphere) or hyperbolic distance between embedded points.
double unit_distance(const ModelPoint2& p, const ModelPoint2& q) {
    if (p.kappa > 0.0) return std::atan2(cross_norm3(p.coords, q.coords), dot3(p.coords, q.coords));
    // 2 asinh(|p - q|_M / 2) avoids the cancellation of acosh near 1.
    const double d0 = p.coords[0] - q.coords[0];
    const double d1 = p.coords[1] - q.coords[1];
    const double d2 = p.coords[2] - q.coords[2];
    const double chord2 = std::max(0.0, -d0 * d0 + d1 * d1 + d2 * d2);
    return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
}

// sin^2(alpha/2) at the vertex between sides a and b opposite side c
// (half-angle forms, stable for thin triangles).
double half_angle_sin2(double kappa, double a, double b, double c) {
    if (kappa == 0.0) return (c - a + b) * (c + a - b) / (4.0 * a * b);
    const double k = std::sqrt(std::abs(kappa));
    const double A = k * a;
    const double B = k * b;
    const double C = k * c;
    if (kappa > 0.0) {
        return std::sin(0.5 * (C - A + B)) * std::sin(0.5 * (C + A - B)) / (std::sin(A) * std::sin(B));
    }
    return std::sinh(0.5 * (C - A + B)) * std::sinh(0.5 * (C + A - B)) / (std::sinh(A) * std::sinh(B));
}

ModelPoint2 place(double kappa, double dist, double angle) {
    if (kappa == 0.0) return {kappa, {dist * std::cos(angle), dist * std::sin(angle)}};
    const double s = std::sqrt(std::abs(kappa)) * dist;
    if (kappa > 0.0) return {kappa, {std::cos(s), std::sin(s) * std::cos(angle), std::sin(s) * std::sin(angle)}};
    return {kappa, {std::cosh(s), std::sinh(s) * std::cos(angle), std::sinh(s) * std::sin(angle)}};
}

}  // namespace

double c_kappa(double kappa, double t) {
    if (kappa > 0.0) return std::cos(std::sqrt(kappa) * t);
    if (kappa < 0.0) return std::cosh(std::sqrt(-kappa) * t);
    return 1.0;
}

double s_kappa(double kappa, double t) {
    if (kappa > 0.0) {
        const double k = std::sqrt(kappa);
        return std::sin(k * t) / k;
    }
    if (kappa < 0.0) {
        const double k = std::sqrt(-kappa);
        return std::sinh(k * t) / k;
    }
    return t;
}

double chi_kappa(double kappa, double t) {
    if (!(kappa > 0.0)) throw DomainError("chi_kappa: only defined for kappa > 0");
    if (t < 0.0) throw DomainError("chi_kappa: negative argument");
    // 1 - cos(x) = 2 sin^2(x/2), without cancellation near 0.
    const double h = std::sin(0.5 * std::sqrt(kappa) * t);
    return 2.0 * h * h;
}

void validate_model_point(const ModelPoint2& p) {
    if (p.coords.size() != dim_for(p.kappa)) throw DomainError("model point: wrong coordinate count");
    if (p.kappa > 0.0 && std::abs(std::sqrt(dot3(p.coords, p.coords)) - 1.0) > tol::invariant) {
        throw DomainError("model point: not on the unit sphere");
    }
    if (p.kappa < 0.0) {
        if (std::abs(minkowski(p.coords, p.coords) + 1.0) > 1e-10 * std::max(1.0, p.coords[0] * p.coords[0])) {
            throw DomainError("model point: not on the hyperboloid");
        }
        if (!(p.coords[0] > 0.0)) throw DomainError("model point: lower hyperboloid sheet");
    }
}

double model_distance(const ModelPoint2& p, const ModelPoint2& q) {
    if (p.kappa != q.kappa) throw TagMismatch("model_distance: curvature mismatch");
    if (p.coords.size() != dim_for(p.kappa) || q.coords.size() != dim_for(q.kappa)) {
        throw DomainError("model_distance: wrong coordinate count");
    }
    if (p.kappa == 0.0) return std::hypot(p.coords[0] - q.coords[0], p.coords[1] - q.coords[1]);
    return unit_distance(p, q) / std::sqrt(std::abs(p.kappa));
}

ModelPoint2 model_geodesic_point(const ModelPoint2& p, const ModelPoint2& q, double t) {
    if (p.kappa != q.kappa) throw TagMismatch("model_geodesic_point: curvature mismatch");
    if (t <= 0.0) return p;
    if (t >= 1.0) return q;
    ModelPoint2 r{p.kappa, std::vector<double>(p.coords.size())};
    if (p.kappa == 0.0) {
        for (std::size_t i = 0; i < 2; ++i) r.coords[i] = p.coords[i] + t * (q.coords[i] - p.coords[i]);
        return r;
    }
    const double theta = unit_distance(p, q);
    if (theta < tol::invariant) return p;
    double wp = 0.0;
    double wq = 0.0;
    if (p.kappa > 0.0) {
        if (theta >= std::numbers::pi - tol::domain) throw DomainError("model geodesic: antipodal points");
        wp = std::sin((1.0 - t) * theta) / std::sin(theta);
        wq = std::sin(t * theta) / std::sin(theta);
    } else {
        wp = std::sinh((1.0 - t) * theta) / std::sinh(theta);
        wq = std::sinh(t * theta) / std::sinh(theta);
    }
    for (std::size_t i = 0; i < 3; ++i) r.coords[i] = wp * p.coords[i] + wq * q.coords[i];
    return r;
}

double model_vertex_angle(const ModelPoint2& p, const ModelPoint2& q, const ModelPoint2& r) {
    if (p.kappa != q.kappa || p.kappa != r.kappa) throw TagMismatch("model_vertex_angle: curvature mismatch");
    const double k = p.kappa;
    if (k == 0.0) {
        const double ux = p.coords[0] - r.coords[0], uy = p.coords[1] - r.coords[1];
        const double vx = q.coords[0] - r.coords[0], vy = q.coords[1] - r.coords[1];
        if ((ux == 0.0 && uy == 0.0) || (vx == 0.0 && vy == 0.0)) return 0.0;
        return std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
    }
    std::vector<double> u(3), v(3);
    if (k > 0.0) {
        const double pr = dot3(p.coords, r.coords);
        const double qr = dot3(q.coords, r.coords);
        for (std::size_t i = 0; i < 3; ++i) {
            u[i] = p.coords[i] - pr * r.coords[i];
            v[i] = q.coords[i] - qr * r.coords[i];
        }
        const double nu = std::sqrt(dot3(u, u));
        const double nv = std::sqrt(dot3(v, v));
        if (nu == 0.0 || nv == 0.0) return 0.0;
        return std::atan2(cross_norm3(u, v), dot3(u, v));
    }
    const double pr = minkowski(p.coords, r.coords);
    const double qr = minkowski(q.coords, r.coords);
    for (std::size_t i = 0; i < 3; ++i) {
        u[i] = p.coords[i] + pr * r.coords[i];
        v[i] = q.coords[i] + qr * r.coords[i];
    }
    const double uu = minkowski(u, u);
    const double vv = minkowski(v, v);
    if (!(uu > 0.0) || !(vv > 0.0)) return 0.0;
    return std::acos(std::clamp(minkowski(u, v) / std::sqrt(uu * vv), -1.0, 1.0));
}

ModelTriangle comparison_triangle(double kappa, const TriangleSides& s) {
    const double a = s.a, b = s.b, c = s.c;
    if (!(a >= 0.0 && b >= 0.0 && c >= 0.0) || !std::isfinite(a + b + c)) {
        throw InfeasibleTriangle("comparison_triangle: side lengths must be finite and nonnegative");
    }
    const double slack = 1e-12 * std::max(1.0, a + b + c);
    if (a > b + c + slack || b > a + c + slack || c > a + b + slack) {
        throw InfeasibleTriangle("comparison_triangle: triangle inequality violated");
    }
    const CurvatureBound bound = CurvatureBound::of(kappa);
    if (kappa > 0.0 && (!(a + b + c < 2.0 * bound.d_kappa) || std::max({a, b, c}) > bound.d_kappa)) {
        throw InfeasibleTriangle("comparison_triangle: perimeter or side exceeds the model diameter");
    }

    double alpha = 0.0;
    if (a > 0.0 && b > 0.0) {
        alpha = 2.0 * std::asin(std::sqrt(std::clamp(half_angle_sin2(kappa, a, b, c), 0.0, 1.0)));
    }
    return {place(kappa, 0.0, 0.0), place(kappa, a, 0.0), place(kappa, b, alpha)};
}

double law_of_cosines_residual(double kappa, const ModelPoint2& p, const ModelPoint2& q,
                               const ModelPoint2& r, double alpha) {
    const double dpq = model_distance(p, q);
    const double dpr = model_distance(p, r);
    const double dqr = model_distance(q, r);
    if (kappa == 0.0) return dpq * dpq - (dpr * dpr + dqr * dqr - 2.0 * dpr * dqr * std::cos(alpha));
    return c_kappa(kappa, dpq) -
           (c_kappa(kappa, dpr) * c_kappa(kappa, dqr) +
            kappa * s_kappa(kappa, dpr) * s_kappa(kappa, dqr) * std::cos(alpha));
}

double check_midpoint_cosine(SpaceTag tag, double kappa, const SpacePoint& p, const SpacePoint& q,
                             const SpacePoint& r) {
    if (!(kappa > 0.0)) throw DomainError("check_midpoint_cosine: requires kappa > 0");
    const double r_kappa = CurvatureBound::of(kappa).r_kappa;
    const double dpq = distance(tag, p, q);
    const double dpr = distance(tag, p, r);
    const double dqr = distance(tag, q, r);
    if (dpq >= r_kappa || dpr >= r_kappa || dqr >= r_kappa) {
        throw DomainError("check_midpoint_cosine: pairwise distance not below r_kappa");
    }
    const SpacePoint m = midpoint(tag, p, q);
    const double dmr = distance(tag, m, r);
    return 2.0 * c_kappa(kappa, dmr) * c_kappa(kappa, 0.5 * dpq) - c_kappa(kappa, dpr) - c_kappa(kappa, dqr);
}

double check_bruhat_tits(SpaceTag tag, const SpacePoint& p, const SpacePoint& q, const SpacePoint& r) {
    if (tag != SpaceTag::euclidean && tag != SpaceTag::spd && tag != SpaceTag::tree) {
        throw UnsupportedSpace("check_bruhat_tits: space is not CAT(0)");
    }
    const SpacePoint m = midpoint(tag, q, r);
    const double dpq = distance(tag, p, q);
    const double dpr = distance(tag, p, r);
    const double dqr = distance(tag, q, r);
    const double dpm = distance(tag, p, m);
    return dpq * dpq + dpr * dpr - 0.5 * dqr * dqr - 2.0 * dpm * dpm;
}

double check_cat_inequality(SpaceTag tag, double kappa, const SpacePoint& p, const SpacePoint& q,
                            const SpacePoint& r, std::size_t samples) {
    const TriangleSides sides{distance(tag, p, q), distance(tag, p, r), distance(tag, q, r)};
    const ModelTriangle model = comparison_triangle(kappa, sides);

    // Row-major walk over an n x n grid of (t, t') in [0,1]^2, endpoints included.
    std::size_t n = 2;
    while (n * n < samples) ++n;
    double worst = std::numeric_limits<double>::infinity();
    std::size_t taken = 0;
    for (std::size_t i = 0; i < n && taken < samples; ++i) {
        for (std::size_t j = 0; j < n && taken < samples; ++j, ++taken) {
            const double t = static_cast<double>(i) / static_cast<double>(n - 1);
            const double u = static_cast<double>(j) / static_cast<double>(n - 1);
            const double actual = distance(tag, geodesic_point(tag, p, q, t), geodesic_point(tag, p, r, u));
            const double bar = model_distance(model_geodesic_point(model.p, model.q, t),
                                              model_geodesic_point(model.p, model.r, u));
            worst = std::min(worst, bar - actual);
        }
    }
    return worst;
}

}  // namespace catgossip
