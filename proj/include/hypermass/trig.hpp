#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "hypermass/errors.hpp"
#include "hypermass/line.hpp"
#include "hypermass/point.hpp"

namespace hypermass {

// Triangle trigonometry on the curvature -1 plane.

template <class S>
S law_of_cosines(S b, S c, S alpha) {
    const S arg = std::cosh(b) * std::cosh(c) -
                  std::cos(alpha) * std::sinh(b) * std::sinh(c);
    return std::acosh(std::max(arg, S(1)));
}

// Interior angle at vertex a of triangle (a, b, c): the angle between the
// unit tangents toward the two other vertices. The tangent plane at a point
// of the sheet is positive definite, so the Minkowski dot is a cosine.
template <class S>
S vertex_angle(const HPoint<S>& a, const HPoint<S>& b, const HPoint<S>& c) {
    const Vec3<S> tb = direction(a, b);
    const Vec3<S> tc = direction(a, c);
    return std::acos(std::clamp(mdot(tb, tc), S(-1), S(1)));
}

template <class S>
std::array<S, 3> triangle_angles(const HPoint<S>& a, const HPoint<S>& b,
                                 const HPoint<S>& c) {
    return {vertex_angle(a, b, c), vertex_angle(b, c, a), vertex_angle(c, a, b)};
}

// Area by angle defect.
template <class S>
S triangle_area(const HPoint<S>& a, const HPoint<S>& b, const HPoint<S>& c) {
    const auto ang = triangle_angles(a, b, c);
    return S(3.14159265358979323846) - (ang[0] + ang[1] + ang[2]);
}

// Max pairwise deviation of the three ratios sinh(side) / sin(opposite).
template <class S>
S law_of_sines_residual(const HPoint<S>& a, const HPoint<S>& b,
                        const HPoint<S>& c) {
    if (!(triangle_area(a, b, c) > S(1e-10)))
        throw DegenerateTriangle("law_of_sines_residual: triangle is degenerate");
    const auto ang = triangle_angles(a, b, c);
    const S ra = std::sinh(dist(b, c)) / std::sin(ang[0]);
    const S rb = std::sinh(dist(c, a)) / std::sin(ang[1]);
    const S rc = std::sinh(dist(a, b)) / std::sin(ang[2]);
    return std::max({std::abs(ra - rb), std::abs(rb - rc), std::abs(ra - rc)});
}

namespace detail {

// Signed ratio sinh(UW) / sinh(WV) for a foot W on the geodesic through U, V,
// with arclength measured from U toward V. Positive for W strictly between.
template <class S>
S side_ratio(const HPoint<S>& u, const HPoint<S>& v, const HPoint<S>& w) {
    const DirectedLine<S> m = line_through(u, v);
    const S off = std::abs(signed_sinh_dist(m, w));
    if (off > S(1e-9) * w.vec().norm())
        throw FootOffLine("foot is not on its side geodesic");
    const HPoint<S> f = foot_of_perpendicular(m, w);
    const Vec3<S> t = tangent_at(m, u);  // unit tangent at u toward v
    const S sinh_s = mdot(t, f.vec());
    const S cosh_s = -mdot(u.vec(), f.vec());
    const S d = dist(u, v);
    const S sinh_rest = std::sinh(d) * cosh_s - std::cosh(d) * sinh_s;
    if (std::abs(sinh_s) < S(1e-12) || std::abs(sinh_rest) < S(1e-12))
        throw DegenerateConfiguration("foot coincides with a vertex");
    return sinh_s / sinh_rest;
}

}  // namespace detail

// Signed product (sinh AR / sinh RB)(sinh BP / sinh PC)(sinh CQ / sinh QA)
// for feet P on BC, Q on CA, R on AB. Equals 1 exactly when the three
// cevians AP, BQ, CR are concurrent.
template <class S>
S ceva_product(const HPoint<S>& a, const HPoint<S>& b, const HPoint<S>& c,
               const HPoint<S>& p, const HPoint<S>& q, const HPoint<S>& r) {
    return detail::side_ratio(a, b, r) * detail::side_ratio(b, c, p) *
           detail::side_ratio(c, a, q);
}

// Same signed product; equals -1 exactly when P, Q, R are collinear.
template <class S>
S menelaus_product(const HPoint<S>& a, const HPoint<S>& b, const HPoint<S>& c,
                   const HPoint<S>& p, const HPoint<S>& q, const HPoint<S>& r) {
    return ceva_product(a, b, c, p, q, r);
}

}  // namespace hypermass
