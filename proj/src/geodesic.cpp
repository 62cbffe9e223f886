#include "catgossip/geodesic.hpp"

#include "catgossip/errors.hpp"
#include "catgossip/spaces.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace catgossip {

namespace {

void require_tag(SpaceTag tag, const SpacePoint& p) {
    if (tag_of(p) != tag) {
        throw TagMismatch("point of space '" + std::string(to_string(tag_of(p))) +
                          "' used where '" + std::string(to_string(tag)) + "' was expected");
    }
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_mat(const Mat3& m) {
    std::string s = "[";
    for (int i = 0; i < 3; ++i) {
        s += i ? ";" : "";
        for (int j = 0; j < 3; ++j) s += (j ? "," : "") + fmt(m(i, j));
    }
    return s + "]";
}

}  // namespace

std::string_view to_string(SpaceTag tag) {
    switch (tag) {
        case SpaceTag::euclidean: return "euclidean";
        case SpaceTag::spd: return "spd";
        case SpaceTag::sphere: return "sphere";
        case SpaceTag::so3: return "so3";
        case SpaceTag::tree: return "tree";
    }
    return "?";
}

SpaceTag parse_space_tag(std::string_view name) {
    for (SpaceTag t : {SpaceTag::euclidean, SpaceTag::spd, SpaceTag::sphere, SpaceTag::so3, SpaceTag::tree}) {
        if (to_string(t) == name) return t;
    }
    throw DomainError("unknown space '" + std::string(name) + "'");
}

SpaceTag tag_of(const SpacePoint& p) { return static_cast<SpaceTag>(p.index()); }

CurvatureBound CurvatureBound::of(double kappa) {
    CurvatureBound b;
    b.kappa = kappa;
    if (kappa > 0.0) {
        b.d_kappa = std::numbers::pi / std::sqrt(kappa);
        b.r_kappa = b.d_kappa / 2.0;
    }
    return b;
}

double default_kappa(SpaceTag tag) {
    switch (tag) {
        case SpaceTag::sphere: return 1.0;
        case SpaceTag::so3: return 0.25;
        default: return 0.0;
    }
}

void validate(SpaceTag tag, const SpacePoint& p) {
    require_tag(tag, p);
    switch (tag) {
        case SpaceTag::euclidean: return;
        case SpaceTag::spd: validate_spd(std::get<SpdMatrix>(p).m); return;
        case SpaceTag::sphere:
            if (std::abs(norm(std::get<SpherePoint>(p).x) - 1.0) > tol::invariant) {
                throw DomainError("sphere: point is not of unit norm");
            }
            return;
        case SpaceTag::so3: validate_rotation(std::get<RotationMatrix>(p).m); return;
        case SpaceTag::tree: validate_tree_point(std::get<TreePoint>(p)); return;
    }
}

double distance(SpaceTag tag, const SpacePoint& p, const SpacePoint& q) {
    require_tag(tag, p);
    require_tag(tag, q);
    switch (tag) {
        case SpaceTag::euclidean: return euclidean_distance(std::get<EuclideanVec>(p), std::get<EuclideanVec>(q));
        case SpaceTag::spd: return spd_distance(std::get<SpdMatrix>(p), std::get<SpdMatrix>(q));
        case SpaceTag::sphere: return sphere_distance(std::get<SpherePoint>(p), std::get<SpherePoint>(q));
        case SpaceTag::so3: return so3_distance(std::get<RotationMatrix>(p), std::get<RotationMatrix>(q));
        case SpaceTag::tree: return tree_distance(std::get<TreePoint>(p), std::get<TreePoint>(q));
    }
    return 0.0;
}

SpacePoint geodesic_point(SpaceTag tag, const SpacePoint& p, const SpacePoint& q, double t) {
    require_tag(tag, p);
    require_tag(tag, q);
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("geodesic_point: t outside [0,1]");
    switch (tag) {
        case SpaceTag::euclidean:
            return euclidean_geodesic(std::get<EuclideanVec>(p), std::get<EuclideanVec>(q), t);
        case SpaceTag::spd: return spd_geodesic(std::get<SpdMatrix>(p), std::get<SpdMatrix>(q), t);
        case SpaceTag::sphere: return sphere_geodesic(std::get<SpherePoint>(p), std::get<SpherePoint>(q), t);
        case SpaceTag::so3: return so3_geodesic(std::get<RotationMatrix>(p), std::get<RotationMatrix>(q), t);
        case SpaceTag::tree: return tree_geodesic_point(std::get<TreePoint>(p), std::get<TreePoint>(q), t);
    }
    return p;
}

SpacePoint midpoint(SpaceTag tag, const SpacePoint& p, const SpacePoint& q) {
    return geodesic_point(tag, p, q, 0.5);
}

double geodesic_tolerance(SpaceTag tag) {
    return (tag == SpaceTag::spd || tag == SpaceTag::so3) ? tol::matrix_geodesic : tol::geodesic;
}

std::string describe(const SpacePoint& p) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, EuclideanVec>) {
                std::string s = "(";
                for (std::size_t i = 0; i < v.x.size(); ++i) s += (i ? "," : "") + fmt(v.x[i]);
                return s + ")";
            } else if constexpr (std::is_same_v<T, SpdMatrix> || std::is_same_v<T, RotationMatrix>) {
                return fmt_mat(v.m);
            } else if constexpr (std::is_same_v<T, SpherePoint>) {
                return "(" + fmt(v.x[0]) + "," + fmt(v.x[1]) + "," + fmt(v.x[2]) + ")";
            } else {
                return v.to_string();
            }
        },
        p);
}

}  // namespace catgossip
