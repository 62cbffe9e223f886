#pragma once

// Constant-curvature model planes and the comparison-geometry checkers built
// on them. Every checker returns a signed slack (>= 0 when the inequality
// holds) rather than a boolean.

#include "catgossip/geodesic.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace catgossip {

/// cos(sqrt(k) t), 1, or cosh(sqrt(-k) t) depending on the sign of k.
double c_kappa(double kappa, double t);
/// sin(sqrt(k) t)/sqrt(k), t, or sinh(sqrt(-k) t)/sqrt(-k).
double s_kappa(double kappa, double t);
/// 1 - C_k(t). Defined for k > 0 and t >= 0 only (DomainError otherwise).
double chi_kappa(double kappa, double t);

/// A point of the model plane M_k^2: (x, y) for k = 0, a unit 3-vector for
/// k > 0, a point of the upper hyperboloid sheet for k < 0.
struct ModelPoint2 {
    double kappa = 0.0;
    std::vector<double> coords;
};

void validate_model_point(const ModelPoint2& p);
double model_distance(const ModelPoint2& p, const ModelPoint2& q);
ModelPoint2 model_geodesic_point(const ModelPoint2& p, const ModelPoint2& q, double t);
/// Angle at r between the geodesics r->p and r->q; 0 for degenerate sides.
double model_vertex_angle(const ModelPoint2& p, const ModelPoint2& q, const ModelPoint2& r);

/// a = d(p,q), b = d(p,r), c = d(q,r).
struct TriangleSides {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

struct ModelTriangle {
    ModelPoint2 p, q, r;
};

/// Canonical placement: p at the origin (or the base point (1,0,0) of the
/// sphere / hyperboloid), q along the first axis, r in the upper half plane.
/// Throws InfeasibleTriangle on triangle-inequality or diameter violations.
ModelTriangle comparison_triangle(double kappa, const TriangleSides& sides);

/// C_k(d(p,q)) - [C_k(d(p,r)) C_k(d(q,r)) + k S_k(d(p,r)) S_k(d(q,r)) cos(alpha)]
/// for k != 0, and the Euclidean law of cosines residual for k = 0.
double law_of_cosines_residual(double kappa, const ModelPoint2& p, const ModelPoint2& q,
                               const ModelPoint2& r, double alpha);

/// 2 C_k(d(m,r)) C_k(d(p,q)/2) - C_k(d(p,r)) - C_k(d(q,r)) with m the midpoint of p, q.
/// Requires k > 0 and all pairwise distances < r_k.
double check_midpoint_cosine(SpaceTag tag, double kappa, const SpacePoint& p, const SpacePoint& q,
                             const SpacePoint& r);

/// d(p,q)^2 + d(p,r)^2 - d(q,r)^2/2 - 2 d(p,m)^2 with m the midpoint of q, r.
/// Only for the CAT(0) spaces (UnsupportedSpace otherwise).
double check_bruhat_tits(SpaceTag tag, const SpacePoint& p, const SpacePoint& q, const SpacePoint& r);

/// Minimum over `samples` parameter pairs (t, t') of
/// d_model(gamma_pq(t), gamma_pr(t')) - d(gamma_pq(t), gamma_pr(t')).
double check_cat_inequality(SpaceTag tag, double kappa, const SpacePoint& p, const SpacePoint& q,
                            const SpacePoint& r, std::size_t samples);

}  // namespace catgossip
