#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hypermass/isometry.hpp"
#include "hypermass/line.hpp"
#include "hypermass/models.hpp"
#include "hypermass/point.hpp"
#include "hypermass/trig.hpp"
#include "oracles.hpp"

using namespace hypermass;
using oracles::Rng;

namespace {
constexpr double kPi = 3.14159265358979323846;

HPoint<double> gp(double rho, double theta) {
    return from_gauss_polar(rho, theta);
}
}  // namespace

TEST_CASE("point construction validates the sheet constraint") {
    CHECK_NOTHROW(HPoint<double>(1.0, 0.0, 0.0));
    CHECK_NOTHROW(HPoint<double>(std::cosh(2.0), std::sinh(2.0), 0.0));
    CHECK_THROWS_AS(HPoint<double>(1.1, 0.0, 0.0), OutOfDomain);
    CHECK_THROWS_AS(HPoint<double>(-1.0, 0.0, 0.0), OutOfDomain);
    // Large coordinates must pass with a relative criterion.
    CHECK_NOTHROW(gp(12.0, 1.0));
}

TEST_CASE("distance basics") {
    Rng rng(101);
    const HPoint<double> x = oracles::random_point(rng, 2.0);
    CHECK(dist(x, x) == 0.0);

    // Two points on a common radial geodesic.
    CHECK(dist(gp(0.3, 1.1), gp(1.7, 1.1)) == doctest::Approx(1.4).epsilon(1e-12));

    for (int i = 0; i < 50; ++i) {
        const HPoint<double> a = oracles::random_point(rng, 2.5);
        const HPoint<double> b = oracles::random_point(rng, 2.5);
        CHECK(dist(a, b) == dist(b, a));
        const auto ha = to_half_plane(a);
        const auto hb = to_half_plane(b);
        const double ref = oracles::half_plane_dist(ha.x, ha.y, hb.x, hb.y);
        CHECK(std::abs(dist(a, b) - ref) < 1e-10);
        const HPoint<double> c = oracles::random_point(rng, 2.5);
        CHECK(dist(a, c) <= dist(a, b) + dist(b, c) + 1e-12);
    }
}

TEST_CASE("distance is stable for nearby points") {
    const HPoint<double> a = gp(1.0, 0.25);
    const HPoint<double> b = point_along(a, gp(2.0, 1.0), 1e-9);
    CHECK(dist(a, b) == doctest::Approx(1e-9).epsilon(1e-6));
}

TEST_CASE("line through two points") {
    Rng rng(202);
    for (int i = 0; i < 50; ++i) {
        const HPoint<double> a = oracles::random_point(rng, 2.0);
        const HPoint<double> b = oracles::random_point(rng, 2.0);
        if (dist(a, b) < 0.05) continue;
        const DirectedLine<double> m = line_through(a, b);
        CHECK(sigma(m, a) == 0);
        CHECK(sigma(m, b) == 0);
        const DirectedLine<double> rev = line_through(b, a);
        CHECK((rev.normal() + m.normal()).norm() < 1e-12);
    }
    const HPoint<double> p = gp(0.7, 0.2);
    CHECK_THROWS_AS(line_through(p, p), CoincidentPoints);
}

TEST_CASE("line orientation: left of travel is the positive side") {
    // Carrier of the first Gauss axis directed toward theta = 0.
    const DirectedLine<double> m =
        line_through(HPoint<double>::origin(), gp(1.0, 0.0));
    CHECK(signed_sinh_dist(m, gp(0.8, kPi / 2)) ==
          doctest::Approx(std::sinh(0.8)).epsilon(1e-12));
    CHECK(signed_sinh_dist(m, gp(0.8, -kPi / 2)) ==
          doctest::Approx(-std::sinh(0.8)).epsilon(1e-12));
}

TEST_CASE("signed sinh distance properties") {
    Rng rng(303);
    for (int i = 0; i < 100; ++i) {
        const DirectedLine<double> m = oracles::random_line(rng, 2.0);
        const HPoint<double> x = oracles::random_point(rng, 2.0);
        const double s = signed_sinh_dist(m, x);
        CHECK(signed_sinh_dist(m.reverse(), x) == -s);
        const HPoint<double> f = foot_of_perpendicular(m, x);
        CHECK(std::abs(std::asinh(std::abs(s)) - dist(x, f)) < 1e-10);
        if (sigma(m, x) != 0) CHECK(sigma(m, x) * sigma(m.reverse(), x) == -1);
    }
}

TEST_CASE("foot of perpendicular minimizes distance to the line") {
    Rng rng(404);
    for (int i = 0; i < 20; ++i) {
        const DirectedLine<double> m = oracles::random_line(rng, 1.5);
        const HPoint<double> x = oracles::random_point(rng, 1.5);
        const HPoint<double> f = foot_of_perpendicular(m, x);
        CHECK(std::abs(signed_sinh_dist(m, f)) < 1e-12);

        const double s_best = oracles::golden_min(
            [&](double s) { return dist(point_at(m, s), x); }, -8.0, 8.0);
        CHECK(std::abs(dist(point_at(m, s_best), x) - dist(f, x)) < 1e-9);
        CHECK(dist(point_at(m, s_best), f) < 1e-6);
    }
    // A point already on the line is its own foot.
    const DirectedLine<double> m = oracles::random_line(rng, 1.0);
    const HPoint<double> p = point_at(m, 0.7);
    CHECK(dist(foot_of_perpendicular(m, p), p) < 1e-12);
}

TEST_CASE("point along a geodesic") {
    Rng rng(505);
    for (int i = 0; i < 30; ++i) {
        const HPoint<double> a = oracles::random_point(rng, 2.0);
        const HPoint<double> b = oracles::random_point(rng, 2.0);
        const double d = dist(a, b);
        if (d < 0.05) continue;
        CHECK(dist(point_along(a, b, 0.0), a) < 1e-12);
        CHECK(dist(point_along(a, b, d), b) < 1e-10);
        const HPoint<double> mid = point_along(a, b, d / 2);
        CHECK(std::abs(dist(mid, a) - dist(mid, b)) < 1e-10);
        // Collinearity: the midpoint lies on the carrier.
        CHECK(std::abs(signed_sinh_dist(line_through(a, b), mid)) < 1e-12);
        // Extension beyond b stays on the carrier.
        const HPoint<double> ext = point_along(a, b, d + 0.5);
        CHECK(std::abs(signed_sinh_dist(line_through(a, b), ext)) < 1e-12);
        CHECK(dist(a, ext) == doctest::Approx(d + 0.5).epsilon(1e-10));
    }
    const HPoint<double> p = gp(0.4, 1.0);
    CHECK_THROWS_AS(point_along(p, p, 0.1), CoincidentPoints);
}

TEST_CASE("arclength parametrization agrees with point_along") {
    const DirectedLine<double> m =
        line_through(gp(0.9, 0.3), gp(1.1, 2.0));
    const HPoint<double> b = base_point(m);
    for (double s : {-1.5, -0.2, 0.0, 0.4, 2.0}) {
        const HPoint<double> x = point_at(m, s);
        CHECK(std::abs(signed_sinh_dist(m, x)) < 1e-12);
        CHECK(dist(b, x) == doctest::Approx(std::abs(s)).epsilon(1e-10));
        CHECK(arclength_of(m, x) == doctest::Approx(s).epsilon(1e-10));
    }
    // The tangent at a point of the carrier points toward increasing s.
    const HPoint<double> x0 = point_at(m, 0.3);
    const HPoint<double> x1 = point_at(m, 0.3 + 1e-6);
    const Vec3<double> t = tangent_at(m, x0);
    CHECK((x1.vec() - x0.vec()).dot(t) > 0.0);
}

TEST_CASE("law of cosines") {
    CHECK(law_of_cosines(0.0, 0.0, kPi / 2) == 0.0);
    CHECK(law_of_cosines(1.2, 0.7, kPi) == doctest::Approx(1.9).epsilon(1e-12));

    Rng rng(606);
    for (int i = 0; i < 50; ++i) {
        const auto tri = oracles::random_triangle(rng, 2.0);
        const double b = dist(tri[0], tri[2]);
        const double c = dist(tri[0], tri[1]);
        const double alpha = vertex_angle(tri[0], tri[1], tri[2]);
        CHECK(std::abs(law_of_cosines(b, c, alpha) - dist(tri[1], tri[2])) <
              1e-9);
    }
}

TEST_CASE("law of sines residual") {
    // Equilateral: ratios agree by symmetry.
    const auto e0 = gp(0.9, kPi / 2);
    const auto e1 = gp(0.9, kPi / 2 + 2 * kPi / 3);
    const auto e2 = gp(0.9, kPi / 2 - 2 * kPi / 3);
    CHECK(law_of_sines_residual(e0, e1, e2) < 1e-10);

    Rng rng(707);
    for (int i = 0; i < 200; ++i) {
        const auto tri = oracles::random_triangle(rng, 1.5);
        CHECK(law_of_sines_residual(tri[0], tri[1], tri[2]) < 1e-9);
    }

    // Thin triangle with one tiny angle stays below the relaxed bound.
    const auto a = gp(0.0, 0.0);
    const auto b = gp(1.0, 0.0);
    const auto c = gp(1.0, 1e-3);
    CHECK(law_of_sines_residual(a, b, c) < 1e-7);

    const auto almost = point_along(a, b, 0.5);
    CHECK_THROWS_AS(law_of_sines_residual(a, b, almost), DegenerateTriangle);
}

TEST_CASE("triangle area equals the angle defect and is additive") {
    Rng rng(808);
    const auto tri = oracles::random_triangle(rng, 1.5);
    const double d = dist(tri[1], tri[2]);
    const HPoint<double> cut = point_along(tri[1], tri[2], 0.37 * d);
    const double whole = triangle_area(tri[0], tri[1], tri[2]);
    const double part1 = triangle_area(tri[0], tri[1], cut);
    const double part2 = triangle_area(tri[0], cut, tri[2]);
    CHECK(whole == doctest::Approx(part1 + part2).epsilon(1e-9));
}

TEST_CASE("ceva product: medians are concurrent") {
    Rng rng(909);
    for (int i = 0; i < 20; ++i) {
        const auto t = oracles::random_triangle(rng, 1.8);
        const HPoint<double> p = midpoint(t[1], t[2]);
        const HPoint<double> q = midpoint(t[2], t[0]);
        const HPoint<double> r = midpoint(t[0], t[1]);
        CHECK(ceva_product(t[0], t[1], t[2], p, q, r) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("ceva product: constructed concurrent cevians") {
    Rng rng(1010);
    for (int i = 0; i < 50; ++i) {
        const auto t = oracles::random_triangle(rng, 1.8);
        // Interior point as a normalized positive combination of vertices.
        const double wa = rng.uniform(0.2, 1.0);
        const double wb = rng.uniform(0.2, 1.0);
        const double wc = rng.uniform(0.2, 1.0);
        const HPoint<double> z = HPoint<double>::project(
            wa * t[0].vec() + wb * t[1].vec() + wc * t[2].vec());
        const auto p = intersect(line_through(t[0], z), line_through(t[1], t[2]));
        const auto q = intersect(line_through(t[1], z), line_through(t[2], t[0]));
        const auto r = intersect(line_through(t[2], z), line_through(t[0], t[1]));
        REQUIRE(p.has_value());
        REQUIRE(q.has_value());
        REQUIRE(r.has_value());
        CHECK(ceva_product(t[0], t[1], t[2], *p, *q, *r) ==
              doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("ceva product: sensitivity and error reporting") {
    Rng rng(1111);
    const auto t = oracles::random_triangle(rng, 1.5);
    const HPoint<double> p = midpoint(t[1], t[2]);
    const HPoint<double> q = midpoint(t[2], t[0]);
    const HPoint<double> r = midpoint(t[0], t[1]);

    // Sliding one foot along its side breaks concurrency measurably.
    const HPoint<double> p_off = point_along(t[1], t[2], dist(t[1], t[2]) / 2 + 0.01);
    CHECK(std::abs(ceva_product(t[0], t[1], t[2], p_off, q, r) - 1.0) > 1e-4);

    // A foot off its side geodesic is rejected.
    const HPoint<double> off = foot_of_perpendicular(
        line_through(t[1], t[2]), oracles::random_point(rng, 1.0));
    const HPoint<double> lifted = point_along(
        off, t[0], 0.05);
    CHECK_THROWS_AS(ceva_product(t[0], t[1], t[2], lifted, q, r), FootOffLine);

    // A foot at a vertex has no finite ratio.
    CHECK_THROWS_AS(ceva_product(t[0], t[1], t[2], t[1], q, r),
                    DegenerateConfiguration);
}

TEST_CASE("menelaus product: constructed transversals") {
    Rng rng(1212);
    int done = 0;
    while (done < 50) {
        const auto t = oracles::random_triangle(rng, 1.8);
        // A transversal through two interior side points, extended to the
        // third side's carrier.
        const HPoint<double> p =
            point_along(t[1], t[2], rng.uniform(0.25, 0.75) * dist(t[1], t[2]));
        const HPoint<double> q =
            point_along(t[2], t[0], rng.uniform(0.25, 0.75) * dist(t[2], t[0]));
        const auto r = intersect(line_through(p, q), line_through(t[0], t[1]));
        if (!r) continue;
        if (dist(*r, t[0]) < 0.05 || dist(*r, t[1]) < 0.05) continue;
        CHECK(menelaus_product(t[0], t[1], t[2], p, q, *r) ==
              doctest::Approx(-1.0).epsilon(1e-8));
        ++done;
    }

    // The median configuration is the canonical non-example.
    const auto t = oracles::random_triangle(rng, 1.5);
    const double m = menelaus_product(t[0], t[1], t[2], midpoint(t[1], t[2]),
                                      midpoint(t[2], t[0]), midpoint(t[0], t[1]));
    CHECK(m == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("model conversions") {
    // The origin is fixed by every chart.
    const auto d0 = to_disk(gp(0.0, 0.7));
    CHECK(std::abs(d0.x) < 1e-15);
    CHECK(std::abs(d0.y) < 1e-15);

    // Gauss polar to disk has the closed form tanh(rho/2) e^{i theta}.
    for (double rho : {0.2, 0.9, 2.3}) {
        for (double th : {-2.0, 0.3, 1.9}) {
            const auto d = to_disk(gp(rho, th));
            CHECK(d.x == doctest::Approx(std::tanh(rho / 2) * std::cos(th))
                             .epsilon(1e-12));
            CHECK(d.y == doctest::Approx(std::tanh(rho / 2) * std::sin(th))
                             .epsilon(1e-12));
        }
    }

    Rng rng(1313);
    for (int i = 0; i < 60; ++i) {
        const HPoint<double> p = oracles::random_point(rng, 2.5);
        // Round trip through all four models.
        ModelCoords<double> c = from_hpoint(p, Model::poincare);
        c = convert(c, Model::half_plane);
        c = convert(c, Model::gauss_polar);
        c = convert(c, Model::hyperboloid);
        CHECK(dist(to_hpoint(c), p) < 1e-10);

        // Distance preservation across converted pairs.
        const HPoint<double> q = oracles::random_point(rng, 2.5);
        const auto hp1 = to_half_plane(p);
        const auto hp2 = to_half_plane(q);
        CHECK(std::abs(oracles::half_plane_dist(hp1.x, hp1.y, hp2.x, hp2.y) -
                       dist(p, q)) < 1e-10);
    }

    CHECK_THROWS_AS(from_disk(1.0, 0.2), OutOfDomain);
    CHECK_THROWS_AS(from_half_plane(0.0, -0.3), OutOfDomain);
    CHECK_THROWS_AS(from_gauss_polar(-0.1, 0.0), OutOfDomain);
}

TEST_CASE("polar form of a geodesic") {
    // Line through (1, 0) and (1, pi/2): fit the polar parameters from the
    // two sample points and compare with the library form.
    const HPoint<double> a = gp(1.0, 0.0);
    const HPoint<double> b = gp(1.0, kPi / 2);
    const DirectedLine<double> m = line_through(a, b);
    const auto g = gauss_form(m);
    REQUIRE(!g.radial);
    const auto fit = oracles::fit_gauss_geodesic(1.0, 0.0, 1.0, kPi / 2);
    CHECK(g.C == doctest::Approx(fit.C).epsilon(1e-10));
    CHECK(g.alpha == doctest::Approx(fit.alpha).epsilon(1e-10));

    // tanh of the line's distance from the origin equals 1/C.
    const double d = dist(foot_of_perpendicular(m, HPoint<double>::origin()),
                          HPoint<double>::origin());
    CHECK(std::tanh(d) == doctest::Approx(1.0 / g.C).epsilon(1e-10));

    // Round trip reproduces the same point set.
    const DirectedLine<double> m2 = line_from_gauss(g);
    for (double s : {-1.0, 0.0, 0.8}) {
        CHECK(std::abs(signed_sinh_dist(m2, point_at(m, s))) < 1e-9);
    }

    // Radial case.
    const DirectedLine<double> rad =
        line_through(HPoint<double>::origin(), gp(1.0, 0.4));
    const auto gr = gauss_form(rad);
    REQUIRE(gr.radial);
    const DirectedLine<double> rad2 = line_from_gauss(gr);
    for (double s : {-0.7, 0.5}) {
        CHECK(std::abs(signed_sinh_dist(rad2, point_at(rad, s))) < 1e-9);
    }
}

TEST_CASE("transvections and rotations are isometries") {
    Rng rng(1414);
    for (int i = 0; i < 30; ++i) {
        const HPoint<double> p = oracles::random_point(rng, 2.0);
        const Mat3<double> fwd = transvection_from_origin(p);
        const Mat3<double> back = transvection_to_origin(p);
        CHECK(dist(apply(fwd, HPoint<double>::origin()), p) < 1e-12);
        CHECK(dist(apply(back, p), HPoint<double>::origin()) < 1e-12);

        const HPoint<double> x = oracles::random_point(rng, 2.0);
        const HPoint<double> y = oracles::random_point(rng, 2.0);
        CHECK(std::abs(dist(apply(fwd, x), apply(fwd, y)) - dist(x, y)) < 1e-11);

        const Mat3<double> rot = rotation_about_origin(rng.uniform(-3.0, 3.0));
        CHECK(std::abs(dist(apply(rot, x), apply(rot, y)) - dist(x, y)) < 1e-11);

        // Lines transform contravariantly but signed distances are preserved.
        const DirectedLine<double> m = oracles::random_line(rng, 1.5);
        CHECK(signed_sinh_dist(apply(fwd, m), apply(fwd, x)) ==
              doctest::Approx(signed_sinh_dist(m, x)).epsilon(1e-10));
    }
}

TEST_CASE("ideal angles bound the line's chart") {
    // The forward ideal point of the first Gauss axis sits at disk angle 0.
    const DirectedLine<double> m =
        line_through(HPoint<double>::origin(), gp(1.0, 0.0));
    const auto [back, fwd] = ideal_angles(m);
    CHECK(fwd == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(std::abs(back) - kPi) < 1e-12);

    // Ideal angles are the limits of the disk angle along the line.
    const DirectedLine<double> m2 = line_through(gp(0.8, 0.4), gp(1.0, 2.2));
    const auto [b2, f2] = ideal_angles(m2);
    const auto far_fwd = to_disk(point_at(m2, 18.0));
    const auto far_back = to_disk(point_at(m2, -18.0));
    CHECK(std::atan2(far_fwd.y, far_fwd.x) == doctest::Approx(f2).epsilon(1e-6));
    CHECK(std::atan2(far_back.y, far_back.x) == doctest::Approx(b2).epsilon(1e-6));
}
