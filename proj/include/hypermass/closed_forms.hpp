#pragma once

#include <cmath>
#include <optional>

#include "hypermass/errors.hpp"
#include "hypermass/line.hpp"
#include "hypermass/point.hpp"
#include "hypermass/region.hpp"

namespace hypermass {

// Closed-form masses, areas, and balance points for the standard uniform
// shapes, used as ground truth for the quadrature pipeline.

template <class S>
S disk_mass(S r) {
    if (!(r > S(0))) throw OutOfDomain("disk_mass: radius must be positive");
    const S sh = std::sinh(r);
    return S(pi_v) * sh * sh;
}

template <class S>
S disk_area(S r) {
    if (!(r > S(0))) throw OutOfDomain("disk_area: radius must be positive");
    const S sh = std::sinh(r / 2);
    return 4 * S(pi_v) * sh * sh;
}

template <class S>
S segment_mass(S d) {
    if (!(d > S(0))) throw OutOfDomain("segment_mass: length must be positive");
    return 2 * std::sinh(d / 2);
}

namespace detail {

// sinh(2r) - 2r evaluated without cancellation: below x = 0.02 the direct
// difference loses ~9 digits, so switch to the Taylor series in x = 2r.
template <class S>
S sinh_minus_arg(S x) {
    if (std::abs(x) < S(0.02)) {
        const S x2 = x * x;
        return x * x2 / 6 *
               (1 + x2 / 20 *
                        (1 + x2 / 42 * (1 + x2 / 72 * (1 + x2 / 110))));
    }
    return std::sinh(x) - x;
}

}  // namespace detail

// Balance data for the symmetric circular sector of half-angle pi/n and
// radius r: the balance point sits on the symmetry axis at `apex_distance`
// from the center, and `mass` is taken about that point.
template <class S>
struct WedgeResult {
    S apex_distance;
    S mass;
};

template <class S>
WedgeResult<S> wedge_centroid(int n, S r) {
    if (n < 1) throw InvalidWedge("wedge_centroid: need n >= 1");
    if (!(r > S(0)))
        throw InvalidWedge("wedge_centroid: radius must be positive");
    // cosh(2r) - 1 = 2 sinh^2(r), exact and cancellation-free.
    const S t = (S(n) / S(pi_v)) * std::sin(S(pi_v) / n) *
                detail::sinh_minus_arg(2 * r) /
                (2 * std::sinh(r) * std::sinh(r));
    if (!(t < S(1)))
        throw InvalidWedge("wedge_centroid: balance point escapes to infinity");
    const S d = std::atanh(t);
    const S sh = std::sinh(r);
    return {d, S(pi_v) * sh * sh / (S(n) * std::cosh(d))};
}

template <class S>
S ngon_mass(int n, S r) {
    if (n < 3) throw InvalidPolygon("ngon_mass: need at least 3 sides");
    if (!(r > S(0)))
        throw InvalidPolygon("ngon_mass: in-radius must be positive");
    // Vertices exist iff cosh(r) sin(pi/n) < 1, which is equivalent to the
    // atanh argument below being < 1.
    if (!(std::cosh(r) * std::sin(S(pi_v) / n) < S(1)))
        throw InvalidPolygon("ngon_mass: in-radius too large for this n");
    const S a = 2 * std::atanh(std::tan(S(pi_v) / n) * std::sinh(r));
    return S(n) * a * std::sinh(r) / 2;
}

// Intersection of the three vertex-to-opposite-midpoint geodesics. The
// first two are intersected exactly; the third is verified to pass through
// the result.
template <class S>
HPoint<S> median_point(const GeodesicTriangle<S>& t) {
    const HPoint<S> ma = point_along(t.b, t.c, dist(t.b, t.c) / 2);
    const HPoint<S> mb = point_along(t.c, t.a, dist(t.c, t.a) / 2);
    const HPoint<S> mc = point_along(t.a, t.b, dist(t.a, t.b) / 2);
    const std::optional<HPoint<S>> o =
        intersect(line_through(t.a, ma), line_through(t.b, mb));
    if (!o)
        throw DegenerateTriangle(
            "median_point: vertex-midpoint geodesics do not meet");
    const S third = std::abs(signed_sinh_dist(line_through(t.c, mc), *o));
    if (!(third < S(1e-10)))
        throw DegenerateTriangle(
            "median_point: third vertex-midpoint geodesic misses the "
            "intersection of the first two");
    return *o;
}

// Half-sum over sides of sinh(distance from the median point to the side)
// times the side length. Note sinh(dist to a line) is the magnitude of the
// signed sinh-distance, so no asinh round trip is needed.
template <class S>
S triangle_mass_formula(const GeodesicTriangle<S>& t) {
    const HPoint<S> o = median_point(t);
    const HPoint<S>* v[3] = {&t.a, &t.b, &t.c};
    S total = S(0);
    for (int i = 0; i < 3; ++i) {
        const HPoint<S>& p = *v[i];
        const HPoint<S>& q = *v[(i + 1) % 3];
        total += std::abs(signed_sinh_dist(line_through(p, q), o)) *
                 dist(p, q) / 2;
    }
    return total;
}

}  // namespace hypermass
