#pragma once

// Uniform contract over the supported geodesic spaces: tagged points,
// distance, geodesic evaluation, midpoint, and curvature metadata.

#include "catgossip/mat3.hpp"
#include "catgossip/tree.hpp"

#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace catgossip {

namespace tol {
inline constexpr double invariant = 1e-12;  // type invariants, "p == q"
inline constexpr double domain = 1e-9;      // antipodality guards
inline constexpr double geodesic = 1e-8;    // geodesic identities, vector spaces
inline constexpr double matrix_geodesic = 1e-7;
inline constexpr double rotation_orthogonality = 1e-10;
}  // namespace tol

enum class SpaceTag { euclidean, spd, sphere, so3, tree };

std::string_view to_string(SpaceTag tag);
/// Throws DomainError for unknown names.
SpaceTag parse_space_tag(std::string_view name);

struct EuclideanVec {
    std::vector<double> x;
    friend bool operator==(const EuclideanVec&, const EuclideanVec&) = default;
};

struct SpdMatrix {
    Mat3 m;
    friend bool operator==(const SpdMatrix&, const SpdMatrix&) = default;
};

struct SpherePoint {
    Vec3 x;
    friend bool operator==(const SpherePoint&, const SpherePoint&) = default;
};

struct RotationMatrix {
    Mat3 m;
    friend bool operator==(const RotationMatrix&, const RotationMatrix&) = default;
};

/// Alternative index order matches SpaceTag.
using SpacePoint = std::variant<EuclideanVec, SpdMatrix, SpherePoint, RotationMatrix, TreePoint>;

SpaceTag tag_of(const SpacePoint& p);

struct CurvatureBound {
    double kappa = 0.0;
    double d_kappa = std::numeric_limits<double>::infinity();
    double r_kappa = std::numeric_limits<double>::infinity();

    static CurvatureBound of(double kappa);
};

/// Upper curvature bound of the space: 1 for the sphere, 1/4 for SO(3) with
/// the angle metric, 0 otherwise.
double default_kappa(SpaceTag tag);

/// Throws DomainError (or TagMismatch) if `p` violates the invariants of `tag`.
void validate(SpaceTag tag, const SpacePoint& p);

double distance(SpaceTag tag, const SpacePoint& p, const SpacePoint& q);
SpacePoint geodesic_point(SpaceTag tag, const SpacePoint& p, const SpacePoint& q, double t);
SpacePoint midpoint(SpaceTag tag, const SpacePoint& p, const SpacePoint& q);

/// Tolerance for geodesic identities in this space.
double geodesic_tolerance(SpaceTag tag);

std::string describe(const SpacePoint& p);

}  // namespace catgossip
