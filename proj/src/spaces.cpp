#include "catgossip/spaces.hpp"

#include "catgossip/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace catgossip {

namespace {

constexpr double kMinEigen = 1e-12;

void require_positive(const SymEigen& e, const char* where) {
    for (double v : e.values) {
        if (!(v > kMinEigen)) throw NumericalError(std::string(where) + ": eigenvalue <= 1e-12");
    }
}

Vec3 vee_skew(const Mat3& r) {
    return {0.5 * (r(2, 1) - r(1, 2)), 0.5 * (r(0, 2) - r(2, 0)), 0.5 * (r(1, 0) - r(0, 1))};
}

}  // namespace

// ---------------------------------------------------------------- Euclidean

double euclidean_distance(const EuclideanVec& p, const EuclideanVec& q) {
    if (p.x.size() != q.x.size()) throw DomainError("euclidean: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.x.size(); ++i) {
        const double d = p.x[i] - q.x[i];
        s += d * d;
    }
    return std::sqrt(s);
}

EuclideanVec euclidean_geodesic(const EuclideanVec& p, const EuclideanVec& q, double t) {
    if (p.x.size() != q.x.size()) throw DomainError("euclidean: dimension mismatch");
    if (t <= 0.0) return p;
    if (t >= 1.0) return q;
    EuclideanVec r;
    r.x.resize(p.x.size());
    for (std::size_t i = 0; i < p.x.size(); ++i) r.x[i] = p.x[i] + t * (q.x[i] - p.x[i]);
    return r;
}

// ---------------------------------------------------------------- SPD

void validate_spd(const Mat3& m) {
    const double scale = std::max(1.0, frobenius_norm(m));
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (std::abs(m(i, j) - m(j, i)) > tol::invariant * scale) {
                throw DomainError("spd: matrix is not symmetric");
            }
        }
    }
    const SymEigen e = sym_eigen(m);
    for (double v : e.values) {
        if (!(v > tol::invariant)) throw DomainError("spd: matrix is not positive definite");
    }
}

SpdMatrix spd_sqrt(const SpdMatrix& m) {
    const SymEigen e = sym_eigen(m.m);
    require_positive(e, "spd_sqrt");
    return {sym_apply(e, [](double v) { return std::sqrt(v); })};
}

Mat3 spd_log(const SpdMatrix& m) {
    const SymEigen e = sym_eigen(m.m);
    require_positive(e, "spd_log");
    return sym_apply(e, [](double v) { return std::log(v); });
}

namespace {

// With X = Lx Lx^T and Y = Ly Ly^T, B = Lx^-1 Ly satisfies
// Lx^-1 Y Lx^-T = B B^T, so the singular values of B are the square roots of
// the eigenvalues of X^-1/2 Y X^-1/2. Working with B rather than the product
// keeps relative accuracy when X or Y is badly conditioned.
struct SpdPencil {
    Mat3 lx;
    ColumnSvd svd;
};

SpdPencil spd_pencil(const Mat3& x, const Mat3& y) {
    SpdPencil p;
    p.lx = cholesky(x);
    p.svd = one_sided_svd(lower_solve(p.lx, cholesky(y)));
    return p;
}

double pencil_distance(const SpdPencil& p) {
    double s = 0.0;
    for (double v : p.svd.values) {
        const double l = 2.0 * std::log(v);
        s += l * l;
    }
    return std::sqrt(s);
}

}  // namespace

double spd_distance(const SpdMatrix& m, const SpdMatrix& n) {
    // Canonical argument order keeps the computed value exactly symmetric.
    const bool swap = n.m.a < m.m.a;
    const Mat3& x = swap ? n.m : m.m;
    const Mat3& y = swap ? m.m : n.m;
    if (x == y) return 0.0;
    return pencil_distance(spd_pencil(x, y));
}

SpdMatrix spd_geodesic(const SpdMatrix& m, const SpdMatrix& n, double t) {
    if (t <= 0.0 || m == n) return m;
    if (t >= 1.0) return n;

    // gamma(t) = Lm (B B^T)^t Lm^T = G G^T with G = Lm U diag(s^t).
    const SpdPencil p = spd_pencil(m.m, n.m);
    if (pencil_distance(p) < tol::invariant) return m;
    Mat3 us = p.svd.left;
    for (int j = 0; j < 3; ++j) {
        const double scale = std::pow(p.svd.values[static_cast<std::size_t>(j)], t);
        for (int k = 0; k < 3; ++k) us(k, j) *= scale;
    }
    const Mat3 g = p.lx * us;
    return {symmetrize(g * transpose(g))};
}

// ---------------------------------------------------------------- sphere

double sphere_distance(const SpherePoint& p, const SpherePoint& q) {
    const double c = dot(p.x, q.x);
    if (!(c > -1.0 + tol::invariant)) throw DomainError("sphere: antipodal points have no unique geodesic");
    return std::atan2(norm(cross(p.x, q.x)), c);
}

SpherePoint sphere_geodesic(const SpherePoint& p, const SpherePoint& q, double t) {
    const double theta = sphere_distance(p, q);
    if (t <= 0.0 || theta < tol::invariant) return p;
    if (t >= 1.0) return q;

    const double c = dot(p.x, q.x);
    Vec3 u = {q.x[0] - c * p.x[0], q.x[1] - c * p.x[1], q.x[2] - c * p.x[2]};
    const double un = norm(u);
    for (double& ui : u) ui /= un;

    const double ct = std::cos(t * theta);
    const double st = std::sin(t * theta);
    Vec3 r = {ct * p.x[0] + st * u[0], ct * p.x[1] + st * u[1], ct * p.x[2] + st * u[2]};
    const double rn = norm(r);
    for (double& ri : r) ri /= rn;
    return {r};
}

// ---------------------------------------------------------------- SO(3)

void validate_rotation(const Mat3& r) {
    if (frobenius_norm(transpose(r) * r - Mat3::identity()) > tol::rotation_orthogonality) {
        throw DomainError("so3: matrix is not orthogonal");
    }
    if (!(determinant(r) > 0.0)) throw DomainError("so3: determinant is not positive");
}

double so3_angle(const Mat3& r) {
    return std::atan2(norm(vee_skew(r)), 0.5 * (trace(r) - 1.0));
}

Vec3 so3_log(const RotationMatrix& r) {
    const Vec3 v = vee_skew(r.m);  // sin(theta) * axis
    const double s = norm(v);
    const double c = 0.5 * (trace(r.m) - 1.0);
    const double theta = std::atan2(s, c);
    if (theta >= std::numbers::pi - tol::domain) {
        throw DomainError("so3_log: rotation angle too close to pi, principal logarithm undefined");
    }
    if (theta < 1e-4) {
        const double k = 1.0 + theta * theta / 6.0;
        return {k * v[0], k * v[1], k * v[2]};
    }
    if (c >= 0.0) {
        const double k = theta / s;
        return {k * v[0], k * v[1], k * v[2]};
    }
    // Large angles: read the axis from the symmetric part, (1 - c) u u^T.
    const Mat3 b = symmetrize(r.m) - c * Mat3::identity();
    int i = 0;
    if (b(1, 1) > b(i, i)) i = 1;
    if (b(2, 2) > b(i, i)) i = 2;
    Vec3 u = {b(0, i), b(1, i), b(2, i)};
    const double un = norm(u);
    for (double& ui : u) ui /= un;
    if (dot(u, v) < 0.0) {
        for (double& ui : u) ui = -ui;
    }
    return {theta * u[0], theta * u[1], theta * u[2]};
}

RotationMatrix so3_exp(const Vec3& v) {
    const double theta = norm(v);
    const Mat3 k = hat(v);
    if (theta < 1e-8) {
        return {Mat3::identity() + k + 0.5 * (k * k)};
    }
    const double a = std::sin(theta) / theta;
    const double b = (1.0 - std::cos(theta)) / (theta * theta);
    return {Mat3::identity() + a * k + b * (k * k)};
}

Mat3 reorthonormalize(const Mat3& r) {
    if (frobenius_norm(transpose(r) * r - Mat3::identity()) <= tol::invariant) return r;
    return 0.5 * (r + transpose(inverse(r)));
}

double so3_distance(const RotationMatrix& p, const RotationMatrix& q) {
    const double theta = so3_angle(transpose(p.m) * q.m);
    if (theta >= std::numbers::pi - tol::domain) {
        throw DomainError("so3: antipodal rotations have no unique geodesic");
    }
    return theta;
}

RotationMatrix so3_geodesic(const RotationMatrix& p, const RotationMatrix& q, double t) {
    if (t <= 0.0) return p;
    if (t >= 1.0) return q;
    const Vec3 w = so3_log({transpose(p.m) * q.m});
    if (norm(w) < tol::invariant) return p;
    const RotationMatrix step = so3_exp({t * w[0], t * w[1], t * w[2]});
    return {reorthonormalize(p.m * step.m)};
}

}  // namespace catgossip
