#pragma once

// Concrete space kernels behind the geodesic contract.

#include "catgossip/geodesic.hpp"

namespace catgossip {

// Euclidean R^n.
double euclidean_distance(const EuclideanVec& p, const EuclideanVec& q);
EuclideanVec euclidean_geodesic(const EuclideanVec& p, const EuclideanVec& q, double t);

// 3x3 SPD matrices, affine-invariant metric.
void validate_spd(const Mat3& m);
double spd_distance(const SpdMatrix& m, const SpdMatrix& n);
/// M^{1/2} (M^{-1/2} N M^{-1/2})^t M^{1/2}
SpdMatrix spd_geodesic(const SpdMatrix& m, const SpdMatrix& n, double t);
SpdMatrix spd_sqrt(const SpdMatrix& m);
Mat3 spd_log(const SpdMatrix& m);

// Unit sphere S^2, great-circle distance.
double sphere_distance(const SpherePoint& p, const SpherePoint& q);
SpherePoint sphere_geodesic(const SpherePoint& p, const SpherePoint& q, double t);

// SO(3) with the bi-invariant metric for which d(I, R) is the rotation angle.
void validate_rotation(const Mat3& r);
/// Rotation angle in [0, pi].
double so3_angle(const Mat3& r);
/// Principal logarithm as an axis-angle vector; DomainError near angle pi.
Vec3 so3_log(const RotationMatrix& r);
/// Rodrigues formula.
RotationMatrix so3_exp(const Vec3& v);
/// One Newton polar step (R + R^{-T}) / 2 when ||R^T R - I||_F > 1e-12.
Mat3 reorthonormalize(const Mat3& r);
double so3_distance(const RotationMatrix& p, const RotationMatrix& q);
/// R1 exp(t log(R1^T R2))
RotationMatrix so3_geodesic(const RotationMatrix& p, const RotationMatrix& q, double t);

}  // namespace catgossip
