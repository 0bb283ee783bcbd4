#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hypermass/point_mass.hpp"
#include "oracles.hpp"

using namespace hypermass;
using oracles::Rng;

namespace {
constexpr double kPi = 3.14159265358979323846;

PointMass<double> pm(Rng& rng, double max_rho = 2.0) {
    return {oracles::random_point(rng, max_rho), rng.uniform(0.1, 5.0)};
}

int sign_of(double v) { return (v > 0) - (v < 0); }
}  // namespace

TEST_CASE("moments of a single mass") {
    Rng rng(21);
    for (int i = 0; i < 50; ++i) {
        const PointMass<double> a = pm(rng);
        const HPoint<double> p = oracles::random_point(rng, 2.0);
        const double mp = moment_about_point(a, p);
        CHECK(mp >= 0.0);
        CHECK(mp == doctest::Approx(a.weight * std::sinh(dist(a.location, p)))
                        .epsilon(1e-12));

        const DirectedLine<double> m = oracles::random_line(rng, 2.0);
        const double ml = moment_about_line(a, m);
        CHECK(moment_about_line({a.location, 2 * a.weight}, m) ==
              doctest::Approx(2 * ml).epsilon(1e-15));
        const double foot_d = dist(a.location, foot_of_perpendicular(m, a.location));
        CHECK(std::abs(ml) ==
              doctest::Approx(a.weight * std::sinh(foot_d)).epsilon(1e-10));
        if (sigma(m, a.location) != 0) {
            CHECK(sign_of(ml) == sigma(m, a.location));
        }
    }
    CHECK_THROWS_AS((PointMass<double>{HPoint<double>::origin(), 0.0}),
                    InvalidWeight);
    CHECK_THROWS_AS((PointMass<double>{HPoint<double>::origin(), -1.0}),
                    InvalidWeight);
}

TEST_CASE("combine agrees with the balance-equation root") {
    Rng rng(22);
    for (int i = 0; i < 100; ++i) {
        const PointMass<double> a = pm(rng);
        PointMass<double> b = pm(rng);
        if (dist(a.location, b.location) < 0.05) continue;
        const PointMass<double> z = combine(a, b);

        // The combined location balances the pair.
        const double da = dist(z.location, a.location);
        const double db = dist(z.location, b.location);
        CHECK(std::abs(a.weight * std::sinh(da) - b.weight * std::sinh(db)) <
              1e-10);

        // It lies on the segment between the constituents.
        const double d = dist(a.location, b.location);
        CHECK(da + db == doctest::Approx(d).epsilon(1e-10));

        // Independent root finder for the balance equation.
        const double t = oracles::bisect_balance(a.weight, b.weight, d);
        CHECK(da == doctest::Approx(t).epsilon(1e-9));

        // Combined weight.
        const double zw = std::sqrt(a.weight * a.weight +
                                    2 * a.weight * b.weight * std::cosh(d) +
                                    b.weight * b.weight);
        CHECK(z.weight == doctest::Approx(zw).epsilon(1e-13));
        CHECK(z.weight >= a.weight + b.weight);
    }
}

TEST_CASE("combine is commutative to the bit") {
    Rng rng(23);
    for (int i = 0; i < 200; ++i) {
        const PointMass<double> a = pm(rng, 3.0);
        const PointMass<double> b = pm(rng, 3.0);
        const PointMass<double> ab = combine(a, b);
        const PointMass<double> ba = combine(b, a);
        CHECK(ab.weight == ba.weight);
        CHECK(ab.location.vec() == ba.location.vec());
    }
}

TEST_CASE("combine is associative") {
    Rng rng(24);
    for (int i = 0; i < 1000; ++i) {
        const PointMass<double> a = pm(rng);
        const PointMass<double> b = pm(rng);
        const PointMass<double> c = pm(rng);
        const PointMass<double> l = combine(combine(a, b), c);
        const PointMass<double> r = combine(a, combine(b, c));
        CHECK(std::abs(l.weight - r.weight) <
              1e-10 * std::max(1.0, l.weight));
        CHECK(dist(l.location, r.location) < 1e-10);
    }
    // Tight tolerance on a moderate configuration.
    const PointMass<double> a{oracles::random_point(rng, 0.8), 1.0};
    const PointMass<double> b{oracles::random_point(rng, 0.8), 2.0};
    const PointMass<double> c{oracles::random_point(rng, 0.8), 0.5};
    const PointMass<double> l = combine(combine(a, b), c);
    const PointMass<double> r = combine(a, combine(b, c));
    CHECK(std::abs(l.weight - r.weight) < 1e-12);
    CHECK(dist(l.location, r.location) < 1e-12);
}

TEST_CASE("external balance point") {
    Rng rng(25);
    int found = 0;
    while (found < 60) {
        const HPoint<double> x = oracles::random_point(rng, 1.5);
        const HPoint<double> y = oracles::random_point(rng, 1.5);
        const double d = dist(x, y);
        if (d < 0.05) continue;
        // Pick weights so the balance point exists: d < |ln(x/y)|.
        const double ratio = std::exp(d + rng.uniform(0.2, 1.5));
        const PointMass<double> a{x, ratio};
        const PointMass<double> b{y, 1.0};
        const PointMass<double> z = external_centroid(a, b);
        ++found;

        // Defining property: equal opposing moments, collinear, outside.
        const double da = dist(z.location, x);
        const double db = dist(z.location, y);
        CHECK(std::abs(a.weight * std::sinh(da) - b.weight * std::sinh(db)) <
              1e-9 * std::max(1.0, a.weight * std::sinh(da)));
        CHECK(std::abs(signed_sinh_dist(line_through(x, y), z.location)) <
              1e-9);
        // Both constituents on the same side of the balance point.
        CHECK(db == doctest::Approx(da + d).epsilon(1e-9));
        // Reduced weight.
        const double zw2 = a.weight * a.weight + b.weight * b.weight -
                           2 * a.weight * b.weight * std::cosh(d);
        CHECK(z.weight == doctest::Approx(std::sqrt(zw2)).epsilon(1e-9));
    }

    using PM = PointMass<double>;
    const HPoint<double> x = oracles::random_point(rng, 1.0);
    const HPoint<double> y = oracles::random_point(rng, 1.0);
    CHECK_THROWS_AS(external_centroid(PM{x, 1.0}, PM{x, 2.0}),
                    CoincidentPoints);
    CHECK_THROWS_AS(external_centroid(PM{x, 1.0}, PM{y, 1.0}), EqualWeights);
    CHECK_THROWS_AS(external_centroid(PM{x, 1.0 + 1e-14}, PM{y, 1.0}),
                    EqualWeights);
    // Weights too close for the separation: no finite balance point.
    const HPoint<double> o = HPoint<double>::origin();
    const HPoint<double> p = from_gauss_polar(1.0, 0.0);
    CHECK_THROWS_AS(external_centroid(PM{o, 2.0}, PM{p, 1.0}),
                    NoFiniteBalancePoint);
}

TEST_CASE("every line through the centroid balances the system") {
    Rng rng(26);
    for (int trial = 0; trial < 20; ++trial) {
        PointMassSystem<double> s;
        const int n = 2 + int(rng.uniform(0.0, 8.0));
        for (int i = 0; i < n; ++i) s.push_back(pm(rng));
        const PointMass<double> c = system_centroid(s);

        for (int k = 0; k < 10; ++k) {
            const HPoint<double> q = oracles::random_point(rng, 2.0);
            if (dist(q, c.location) < 0.05) continue;
            const DirectedLine<double> m = line_through(c.location, q);
            CHECK(is_balanced(s, m, 1e-10));
            CHECK(std::abs(system_moment(s, m)) <
                  1e-10 * (1.0 + std::abs(system_moment(s, m.reverse()))));
        }
        // A line missing the centroid by a bit does not balance.
        const DirectedLine<double> off = line_through(
            point_along(c.location, oracles::random_point(rng, 2.0), 0.2),
            oracles::random_point(rng, 2.0));
        if (std::abs(signed_sinh_dist(off, c.location)) > 1e-3) {
            CHECK(!is_balanced(s, off, 1e-10));
        }
    }
    CHECK_THROWS_AS(system_centroid(PointMassSystem<double>{}), InvalidWeight);
}

TEST_CASE("centroid via fold matches direct vector reduction") {
    Rng rng(27);
    for (int trial = 0; trial < 50; ++trial) {
        PointMassSystem<double> s;
        Vec3<double> acc = Vec3<double>::Zero();
        const int n = 2 + int(rng.uniform(0.0, 20.0));
        for (int i = 0; i < n; ++i) {
            s.push_back(pm(rng));
            acc += s.back().weight * s.back().location.vec();
        }
        const PointMass<double> c = system_centroid(s);
        const HPoint<double> direct = HPoint<double>::project(acc);
        CHECK(dist(c.location, direct) < 1e-10);
        CHECK(c.weight ==
              doctest::Approx(std::sqrt(-mdot(acc, acc))).epsilon(1e-10));
    }
}

TEST_CASE("centroid is invariant under permutation") {
    Rng rng(28);
    PointMassSystem<double> s;
    for (int i = 0; i < 25; ++i) s.push_back(pm(rng));
    const PointMass<double> c = system_centroid(s);
    for (int k = 0; k < 10; ++k) {
        PointMassSystem<double> t = s;
        // Fisher-Yates with the deterministic generator.
        for (size_t j = t.size(); j > 1; --j) {
            const size_t pick = size_t(rng.uniform(0.0, double(j)));
            std::swap(t[j - 1], t[std::min(pick, j - 1)]);
        }
        const PointMass<double> ct = system_centroid(t);
        CHECK(dist(c.location, ct.location) < 1e-9);
        CHECK(ct.weight == doctest::Approx(c.weight).epsilon(1e-9));
    }
}

TEST_CASE("replacing a pair by its combination preserves the centroid") {
    Rng rng(29);
    for (int n : {2, 3, 10, 50}) {
        PointMassSystem<double> s;
        for (int i = 0; i < n; ++i) s.push_back(pm(rng));
        const PointMass<double> before = system_centroid(s);

        PointMassSystem<double> t = s;
        const size_t i = size_t(rng.uniform(0.0, double(n)));
        size_t j = size_t(rng.uniform(0.0, double(n)));
        if (j == i) j = (j + 1) % n;
        const PointMass<double> merged = combine(t[i], t[j]);
        t.erase(t.begin() + std::max(i, j));
        t.erase(t.begin() + std::min(i, j));
        t.push_back(merged);
        const PointMass<double> after = system_centroid(t);
        CHECK(dist(before.location, after.location) < 1e-9);
        CHECK(after.weight == doctest::Approx(before.weight).epsilon(1e-9));
    }
}

TEST_CASE("system mass about a reference point") {
    Rng rng(30);
    PointMassSystem<double> s;
    for (int i = 0; i < 12; ++i) s.push_back(pm(rng));
    const HPoint<double> c = system_centroid(s).location;

    double direct = 0.0;
    for (const auto& a : s) direct += a.weight * std::cosh(dist(a.location, c));
    CHECK(system_mass_direct(s, c) == doctest::Approx(direct).epsilon(1e-14));

    // The reference point minimizing the direct mass is the centroid.
    const double at_c = system_mass_direct(s, c);
    for (int k = 0; k < 30; ++k) {
        const HPoint<double> q = oracles::random_point(rng, 2.5);
        if (dist(q, c) < 1e-6) continue;
        CHECK(system_mass_direct(s, q) > at_c - 1e-12);
    }
    // And the minimum value is the centroid's weight.
    CHECK(at_c == doctest::Approx(system_centroid(s).weight).epsilon(1e-12));
}

TEST_CASE("moments about lines are additive over subsystems") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        PointMassSystem<double> s, t;
        for (int i = 0; i < 6; ++i) s.push_back(pm(rng));
        for (int i = 0; i < 5; ++i) t.push_back(pm(rng));
        PointMassSystem<double> u = s;
        u.insert(u.end(), t.begin(), t.end());

        for (int k = 0; k < 10; ++k) {
            const DirectedLine<double> m = oracles::random_line(rng, 2.0);
            CHECK(std::abs(system_moment(u, m) - system_moment(s, m) -
                           system_moment(t, m)) < 1e-10);
        }
    }

    // A line separating the two clusters, signs opposed.
    PointMassSystem<double> left{{from_gauss_polar(1.0, 3.0), 2.0},
                                 {from_gauss_polar(1.5, 2.8), 1.0}};
    PointMassSystem<double> right{{from_gauss_polar(1.0, 0.1), 3.0},
                                  {from_gauss_polar(0.5, -0.2), 1.0}};
    const DirectedLine<double> sep = line_through(
        from_gauss_polar(2.0, kPi / 2), from_gauss_polar(2.0, -kPi / 2));
    PointMassSystem<double> both = left;
    both.insert(both.end(), right.begin(), right.end());
    CHECK(system_moment(left, sep) * system_moment(right, sep) < 0.0);
    CHECK(std::abs(system_moment(both, sep) - system_moment(left, sep) -
                   system_moment(right, sep)) < 1e-10);
}

TEST_CASE("equal centroids give equal moments about every line") {
    Rng rng(32);
    // Build a system, then a second system with the same centroid: the
    // single combined mass.
    PointMassSystem<double> s;
    for (int i = 0; i < 9; ++i) s.push_back(pm(rng));
    const PointMass<double> c = system_centroid(s);
    const PointMassSystem<double> t{c};

    for (int k = 0; k < 100; ++k) {
        const DirectedLine<double> m = oracles::random_line(rng, 2.5);
        CHECK(std::abs(system_moment(s, m) - system_moment(t, m)) < 1e-9);
    }

    // Converse: shift the single mass and some line tells them apart.
    const PointMassSystem<double> shifted{
        {point_along(c.location, oracles::random_point(rng, 2.0), 0.3),
         c.weight}};
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const DirectedLine<double> m = oracles::random_line(rng, 2.5);
        worst = std::max(
            worst, std::abs(system_moment(s, m) - system_moment(shifted, m)));
    }
    CHECK(worst > 1e-3);
}

TEST_CASE("two systems balance about the same lines iff centroids agree") {
    Rng rng(33);
    PointMassSystem<double> s;
    for (int i = 0; i < 7; ++i) s.push_back(pm(rng));
    const PointMass<double> c = system_centroid(s);

    // Different weights, same location: balanced about the same lines.
    const PointMassSystem<double> t{{c.location, 3.7}};
    for (int k = 0; k < 100; ++k) {
        const HPoint<double> q = oracles::random_point(rng, 2.0);
        if (dist(q, c.location) < 0.05) continue;
        const DirectedLine<double> m = line_through(c.location, q);
        CHECK(is_balanced(s, m, 1e-9));
        CHECK(is_balanced(t, m, 1e-9));
    }
}

TEST_CASE("lever resultant") {
    Rng rng(34);
    for (int i = 0; i < 60; ++i) {
        const LeverForce<double> a{rng.uniform(0.1, 4.0), rng.uniform(-2.0, 2.0)};
        const LeverForce<double> b{rng.uniform(0.1, 4.0), rng.uniform(-2.0, 2.0)};
        if (std::abs(a.offset - b.offset) < 1e-6) continue;
        const LeverResultant<double> r = lever_resultant(a, b);

        // The pivot balances the two forces on the line.
        const double ta = r.offset - std::min(a.offset, b.offset);
        const double tb = std::max(a.offset, b.offset) - r.offset;
        const double fa = (a.offset < b.offset) ? a.magnitude : b.magnitude;
        const double fb = (a.offset < b.offset) ? b.magnitude : a.magnitude;
        CHECK(ta >= -1e-12);
        CHECK(tb >= -1e-12);
        CHECK(fa * std::sinh(ta) == doctest::Approx(fb * std::sinh(tb)).epsilon(1e-10));
        CHECK(r.magnitude ==
              doctest::Approx(fa * std::cosh(ta) + fb * std::cosh(tb))
                  .epsilon(1e-12));

        // Swapping the arguments changes nothing.
        const LeverResultant<double> r2 = lever_resultant(b, a);
        CHECK(r2.offset == doctest::Approx(r.offset).epsilon(1e-12));
        CHECK(r2.magnitude == doctest::Approx(r.magnitude).epsilon(1e-12));
    }

    // Moment of the resultant about the near endpoint: with arms c1, c2
    // around the pivot, a unit force at distance c1 + c2 contributes
    // sinh(c1 + c2) against the first force's station.
    const double c1 = 0.6, c2 = 0.9;
    const double f2 = 2.0;
    // Choose f1 so the pivot sits exactly at offset c1 from the first force.
    const double f1 = f2 * std::sinh(c2) / std::sinh(c1);
    const LeverResultant<double> r = lever_resultant(
        LeverForce<double>{f1, 0.0}, LeverForce<double>{f2, c1 + c2});
    CHECK(r.offset == doctest::Approx(c1).epsilon(1e-12));
    // Torque of the far force about the near station.
    CHECK(f2 * std::sinh(c1 + c2) ==
          doctest::Approx(f2 * std::sinh(c1 + c2)).epsilon(1e-15));

    // Coincident stations sum the magnitudes.
    const LeverResultant<double> same = lever_resultant(
        LeverForce<double>{1.5, 0.3}, LeverForce<double>{2.5, 0.3});
    CHECK(same.offset == doctest::Approx(0.3));
    CHECK(same.magnitude == doctest::Approx(4.0));
}

TEST_CASE("is_balanced validates its tolerance") {
    Rng rng(35);
    const PointMassSystem<double> s{pm(rng), pm(rng)};
    const DirectedLine<double> m = oracles::random_line(rng, 1.0);
    CHECK_THROWS_AS(is_balanced(s, m, 0.0), InvalidWeight);
    CHECK_THROWS_AS(is_balanced(s, m, -1.0), InvalidWeight);
}
