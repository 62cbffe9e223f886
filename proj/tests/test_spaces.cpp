#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catgossip/engine.hpp"
#include "catgossip/errors.hpp"
#include "catgossip/geodesic.hpp"
#include "catgossip/spaces.hpp"
#include "oracles.hpp"

#include <numbers>
#include <random>

using namespace catgossip;

namespace {

constexpr SpaceTag kAllSpaces[] = {SpaceTag::euclidean, SpaceTag::spd, SpaceTag::sphere, SpaceTag::so3,
                                   SpaceTag::tree};

RotationMatrix random_rotation(Rng& rng, double max_angle) {
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> u;
    Vec3 axis{n(rng), n(rng), n(rng)};
    const double s = max_angle * u(rng) / norm(axis);
    for (double& a : axis) a *= s;
    return so3_exp(axis);
}

// Random pairs that satisfy every space's preconditions.
std::vector<SpacePoint> random_points(SpaceTag tag, std::size_t n, Rng& rng) {
    switch (tag) {
        case SpaceTag::euclidean: return init_euclidean(n, 4, rng).points;
        case SpaceTag::spd: return init_wishart(n, 3, rng).points;
        case SpaceTag::tree: return init_tree_words(n, 12, rng).points;
        case SpaceTag::sphere: {
            // Open hemisphere around (0,0,1): no antipodal pairs.
            std::normal_distribution<double> g;
            std::vector<SpacePoint> pts;
            while (pts.size() < n) {
                Vec3 x{g(rng), g(rng), std::abs(g(rng)) + 0.05};
                const double r = norm(x);
                for (double& xi : x) xi /= r;
                pts.emplace_back(SpherePoint{x});
            }
            return pts;
        }
        case SpaceTag::so3: {
            std::vector<SpacePoint> pts;
            while (pts.size() < n) pts.emplace_back(random_rotation(rng, 1.5));
            return pts;
        }
    }
    return {};
}

double max_abs_diff(const Mat3& x, const Mat3& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < 9; ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
    return m;
}

}  // namespace

TEST_CASE("curvature bounds") {
    const auto flat = CurvatureBound::of(0.0);
    CHECK(std::isinf(flat.d_kappa));
    CHECK(std::isinf(flat.r_kappa));
    const auto sphere = CurvatureBound::of(1.0);
    CHECK(sphere.d_kappa == std::numbers::pi);
    CHECK(sphere.r_kappa == sphere.d_kappa / 2.0);
    CHECK(CurvatureBound::of(0.25).r_kappa == std::numbers::pi);
    CHECK(default_kappa(SpaceTag::sphere) == 1.0);
    CHECK(default_kappa(SpaceTag::so3) == 0.25);
    CHECK(default_kappa(SpaceTag::spd) == 0.0);
}

TEST_CASE("space names round-trip") {
    for (SpaceTag t : kAllSpaces) CHECK(parse_space_tag(to_string(t)) == t);
    CHECK_THROWS_AS(parse_space_tag("torus"), DomainError);
}

TEST_CASE("distance examples") {
    CHECK(distance(SpaceTag::euclidean, EuclideanVec{{0, 0}}, EuclideanVec{{3, 4}}) == doctest::Approx(5.0));
    CHECK(distance(SpaceTag::so3, RotationMatrix{Mat3::identity()}, RotationMatrix{oracle::rotation_z(0.7)}) ==
          doctest::Approx(0.7).epsilon(1e-14));
    CHECK(distance(SpaceTag::tree, TreePoint{Word::parse("B"), 1.0}, TreePoint{Word::parse("ba"), 1.0}) == 3.0);
    CHECK(distance(SpaceTag::sphere, SpherePoint{{1, 0, 0}}, SpherePoint{{0, 1, 0}}) ==
          doctest::Approx(std::numbers::pi / 2));
    CHECK(distance(SpaceTag::spd, SpdMatrix{Mat3::identity()}, SpdMatrix{std::numbers::e * Mat3::identity()}) ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
    CHECK(spd_distance(SpdMatrix{Mat3::identity()}, SpdMatrix{Mat3::identity()}) == doctest::Approx(0.0));
    CHECK(spd_distance(SpdMatrix{Mat3::identity()}, SpdMatrix{Mat3::diag(std::exp(2.0), 1, 1)}) ==
          doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("geodesic examples") {
    const SpacePoint e1 = SpherePoint{{1, 0, 0}};
    const SpacePoint e2 = SpherePoint{{0, 1, 0}};
    const auto m = std::get<SpherePoint>(midpoint(SpaceTag::sphere, e1, e2)).x;
    CHECK(m[0] == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(m[1] == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(m[2] == doctest::Approx(0.0));

    const auto s = std::get<SpdMatrix>(
        geodesic_point(SpaceTag::spd, SpdMatrix{Mat3::identity()}, SpdMatrix{Mat3::diag(4, 1, 1)}, 0.5));
    CHECK(max_abs_diff(s.m, Mat3::diag(2, 1, 1)) <= 1e-12);

    const auto e = std::get<EuclideanVec>(midpoint(SpaceTag::euclidean, EuclideanVec{{0, 0}}, EuclideanVec{{2, 0}}));
    CHECK(e.x == std::vector<double>{1.0, 0.0});
}

TEST_CASE("geodesic endpoints in every space") {
    Rng rng(21);
    for (SpaceTag tag : kAllSpaces) {
        CAPTURE(to_string(tag));
        const auto pts = random_points(tag, 2, rng);
        CHECK(distance(tag, geodesic_point(tag, pts[0], pts[1], 0.0), pts[0]) <= 1e-10);
        CHECK(distance(tag, geodesic_point(tag, pts[0], pts[1], 1.0), pts[1]) <= 1e-7);
        CHECK_THROWS_AS(geodesic_point(tag, pts[0], pts[1], 1.5), DomainError);
        CHECK_THROWS_AS(geodesic_point(tag, pts[0], pts[1], -0.1), DomainError);
    }
}

TEST_CASE("metric and geodesic invariants on random samples") {
    Rng rng(22);
    std::uniform_real_distribution<double> unit;
    for (SpaceTag tag : kAllSpaces) {
        CAPTURE(to_string(tag));
        const double tol = geodesic_tolerance(tag);
        double worst_mid = 0.0, worst_add = 0.0, worst_tri = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const auto pts = random_points(tag, 3, rng);
            const auto& p = pts[0];
            const auto& q = pts[1];
            const double d = distance(tag, p, q);
            REQUIRE(d == distance(tag, q, p));

            const SpacePoint m = midpoint(tag, p, q);
            CHECK_NOTHROW(validate(tag, m));
            worst_mid = std::max({worst_mid, std::abs(distance(tag, p, m) - d / 2), std::abs(distance(tag, q, m) - d / 2)});

            double t1 = unit(rng), t2 = unit(rng);
            if (t1 > t2) std::swap(t1, t2);
            const double g = distance(tag, geodesic_point(tag, p, q, t1), geodesic_point(tag, p, q, t2));
            worst_add = std::max(worst_add, std::abs(g - (t2 - t1) * d));

            worst_tri = std::min(worst_tri, d + distance(tag, q, pts[2]) - distance(tag, p, pts[2]));
        }
        CHECK(worst_mid <= 1e-7);
        CHECK(worst_mid <= tol);
        CHECK(worst_add <= 1e-7);
        CHECK(worst_tri >= -1e-9);
    }
}

TEST_CASE("p == q gives p for all t") {
    Rng rng(23);
    for (SpaceTag tag : kAllSpaces) {
        const auto pts = random_points(tag, 1, rng);
        for (double t : {0.0, 0.3, 1.0}) CHECK(geodesic_point(tag, pts[0], pts[0], t) == pts[0]);
    }
}

TEST_CASE("mixing spaces is a tag mismatch") {
    CHECK_THROWS_AS(distance(SpaceTag::sphere, SpherePoint{{1, 0, 0}}, EuclideanVec{{1, 0, 0}}), TagMismatch);
    CHECK_THROWS_AS(distance(SpaceTag::spd, SpherePoint{{1, 0, 0}}, SpherePoint{{1, 0, 0}}), TagMismatch);
}

TEST_CASE("validation of point invariants") {
    CHECK_THROWS_AS(validate(SpaceTag::sphere, SpherePoint{{1, 1, 0}}), DomainError);
    CHECK_THROWS_AS(validate(SpaceTag::spd, SpdMatrix{Mat3::diag(1, -1, 1)}), DomainError);
    Mat3 asym = Mat3::identity();
    asym(0, 1) = 0.5;
    CHECK_THROWS_AS(validate(SpaceTag::spd, SpdMatrix{asym}), DomainError);
    CHECK_THROWS_AS(validate(SpaceTag::so3, RotationMatrix{Mat3::diag(1, 1, -1)}), DomainError);
    CHECK_THROWS_AS(validate(SpaceTag::so3, RotationMatrix{Mat3::diag(1, 1, 1.01)}), DomainError);
}

TEST_CASE("antipodal pairs are rejected") {
    CHECK_THROWS_AS(distance(SpaceTag::sphere, SpherePoint{{1, 0, 0}}, SpherePoint{{-1, 0, 0}}), DomainError);
    CHECK_THROWS_AS(
        distance(SpaceTag::so3, RotationMatrix{Mat3::identity()}, RotationMatrix{oracle::rotation_z(std::numbers::pi)}),
        DomainError);
    CHECK_THROWS_AS(so3_log(RotationMatrix{oracle::rotation_z(std::numbers::pi)}), DomainError);
}

TEST_CASE("spd geodesic special cases") {
    const SpdMatrix m{Mat3::diag(1, 2, 3)};
    for (double t : {0.0, 0.4, 1.0}) CHECK(spd_geodesic(m, m, t) == m);
    const auto end = spd_geodesic(SpdMatrix{Mat3::identity()}, SpdMatrix{Mat3::diag(4, 1, 1)}, 1.0);
    CHECK(max_abs_diff(end.m, Mat3::diag(4, 1, 1)) <= 1e-10);
    const auto half = spd_geodesic(m, SpdMatrix{Mat3::diag(2, 2, 3)}, 0.5);
    CHECK(max_abs_diff(half.m, Mat3::diag(std::sqrt(2.0), 2, 3)) <= 1e-12);
}

TEST_CASE("spd distance matches the generalized-eigenvalue oracle") {
    Rng rng(24);
    for (int i = 0; i < 100; ++i) {
        const auto c = init_wishart(2, 3, rng);
        const auto& m = std::get<SpdMatrix>(c.points[0]);
        const auto& n = std::get<SpdMatrix>(c.points[1]);
        const double d = spd_distance(m, n);
        CHECK(d == doctest::Approx(oracle::spd_distance_cubic(m.m, n.m)).epsilon(1e-7));
        CHECK(d == spd_distance(n, m));
    }
}

TEST_CASE("spd distance is congruence invariant") {
    Rng rng(25);
    std::normal_distribution<double> g;
    for (int i = 0; i < 100; ++i) {
        const auto c = init_wishart(2, 3, rng);
        const Mat3& m = std::get<SpdMatrix>(c.points[0]).m;
        const Mat3& n = std::get<SpdMatrix>(c.points[1]).m;
        Mat3 a;
        for (double& x : a.a) x = g(rng);
        if (std::abs(determinant(a)) < 0.1) continue;
        const SpdMatrix ma{symmetrize(transpose(a) * m * a)};
        const SpdMatrix na{symmetrize(transpose(a) * n * a)};
        CHECK(std::abs(spd_distance(ma, na) - spd_distance(SpdMatrix{m}, SpdMatrix{n})) <= 1e-7);
    }
}

TEST_CASE("so3 log and exp") {
    const Vec3 zero = so3_log(RotationMatrix{Mat3::identity()});
    CHECK(norm(zero) == 0.0);
    const Vec3 v = so3_log(RotationMatrix{oracle::rotation_z(0.3)});
    CHECK(v[0] == doctest::Approx(0.0));
    CHECK(v[1] == doctest::Approx(0.0));
    CHECK(v[2] == doctest::Approx(0.3).epsilon(1e-14));

    const Mat3 quarter = so3_exp({0, 0, std::numbers::pi / 2}).m;
    Mat3 expected = Mat3::zero();
    expected(0, 1) = -1;
    expected(1, 0) = 1;
    expected(2, 2) = 1;
    CHECK(max_abs_diff(quarter, expected) <= 1e-15);
    CHECK(so3_exp({0, 0, 0}).m == Mat3::identity());

    Rng rng(26);
    std::normal_distribution<double> g;
    for (int i = 0; i < 200; ++i) {
        Vec3 u{g(rng), g(rng), g(rng)};
        const double n = norm(u);
        const double theta = i == 0 ? 1.2 : 3.0 * (i % 100) / 100.0 + 1e-6;
        for (double& x : u) x *= theta / n;
        const RotationMatrix r = so3_exp(u);
        CHECK_NOTHROW(validate(SpaceTag::so3, r));
        CHECK(max_abs_diff(r.m, oracle::expm_series(hat(u))) <= 1e-13);
        CHECK(trace(r.m) == doctest::Approx(1 + 2 * std::cos(theta)).epsilon(1e-13));
        CHECK(so3_angle(r.m) == doctest::Approx(theta).epsilon(1e-10));
        const Vec3 back = so3_log(r);
        for (int k = 0; k < 3; ++k) CHECK(back[k] == doctest::Approx(u[k]).epsilon(1e-9));
        CHECK(frobenius_norm(so3_exp(back).m - r.m) <= 1e-9);
    }
}

TEST_CASE("so3 midpoint of I and a z-rotation is the half rotation") {
    for (double theta : {0.2, 1.0, 2.5}) {
        const auto m = std::get<RotationMatrix>(
            midpoint(SpaceTag::so3, RotationMatrix{Mat3::identity()}, RotationMatrix{oracle::rotation_z(theta)}));
        CHECK(max_abs_diff(m.m, oracle::expm_series(hat({0, 0, theta / 2}))) <= 1e-12);
    }
}

TEST_CASE("so3 distance is bi-invariant") {
    Rng rng(27);
    for (int i = 0; i < 200; ++i) {
        const RotationMatrix a = random_rotation(rng, 1.4);
        const RotationMatrix b = random_rotation(rng, 1.4);
        const RotationMatrix q = random_rotation(rng, 3.0);
        const double d = so3_distance(a, b);
        CHECK(std::abs(so3_distance(RotationMatrix{q.m * a.m}, RotationMatrix{q.m * b.m}) - d) <= 1e-9);
        CHECK(std::abs(so3_distance(RotationMatrix{a.m * q.m}, RotationMatrix{b.m * q.m}) - d) <= 1e-9);
    }
}

TEST_CASE("reorthonormalize pulls a perturbed rotation back") {
    Mat3 r = oracle::rotation_z(0.4);
    r(0, 0) += 1e-8;
    const Mat3 fixed = reorthonormalize(r);
    CHECK(frobenius_norm(transpose(fixed) * fixed - Mat3::identity()) <= 1e-14);
    CHECK(reorthonormalize(Mat3::identity()) == Mat3::identity());
}
