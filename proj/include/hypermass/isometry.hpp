#pragma once

#include <cmath>

#include "hypermass/line.hpp"
#include "hypermass/minkowski.hpp"
#include "hypermass/point.hpp"

namespace hypermass {

// Orientation-preserving isometries as Lorentz matrices acting on the
// hyperboloid. Two generators suffice for everything the library does:
// rotations about the origin and transvections (hyperbolic translations)
// along the geodesic from the origin to a given point.

template <class S>
Mat3<S> rotation_about_origin(S phi) {
    Mat3<S> r = Mat3<S>::Identity();
    const S c = std::cos(phi), s = std::sin(phi);
    r(1, 1) = c;
    r(1, 2) = -s;
    r(2, 1) = s;
    r(2, 2) = c;
    return r;
}

namespace detail {

// Lorentz frame with columns (P, T, N): P on the sheet, T a unit tangent at
// P, N the Minkowski cross completing it. Satisfies F^T J F = J, hence
// F^{-1} = J F^T J without inverting anything.
template <class S>
Mat3<S> lorentz_frame(const Vec3<S>& p, const Vec3<S>& t) {
    Mat3<S> f;
    f.col(0) = p;
    f.col(1) = t;
    f.col(2) = mcross(p, t);
    return f;
}

template <class S>
Mat3<S> lorentz_inverse(const Mat3<S>& f) {
    const Mat3<S> J = minkowski_metric<S>();
    return J * f.transpose() * J;
}

template <class S>
Mat3<S> boost_x(S d) {
    Mat3<S> b = Mat3<S>::Identity();
    const S c = std::cosh(d), s = std::sinh(d);
    b(0, 0) = c;
    b(0, 1) = s;
    b(1, 0) = s;
    b(1, 1) = c;
    return b;
}

}  // namespace detail

// The canonical transvection carrying the origin to p along their common
// geodesic. This is the frame transport used wherever a construction is
// phrased "in the frame at p" (wedge angle windows, polygon phases, balance
// check directions): at the origin it is the identity, so origin-centered
// configurations read off their angles directly.
template <class S>
Mat3<S> transvection_from_origin(const HPoint<S>& p) {
    const HPoint<S> o = HPoint<S>::origin();
    const S d = dist(o, p);
    if (d < S(1e-14)) return Mat3<S>::Identity();
    const Vec3<S> t = direction(o, p);
    const Mat3<S> f = detail::lorentz_frame(o.vec(), t);
    return f * detail::boost_x(d) * detail::lorentz_inverse(f);
}

template <class S>
Mat3<S> transvection_to_origin(const HPoint<S>& p) {
    const HPoint<S> o = HPoint<S>::origin();
    const S d = dist(o, p);
    if (d < S(1e-14)) return Mat3<S>::Identity();
    const Vec3<S> t = direction(o, p);
    const Mat3<S> f = detail::lorentz_frame(o.vec(), t);
    return f * detail::boost_x(-d) * detail::lorentz_inverse(f);
}

// Apply with re-projection to absorb rounding drift off the sheet.
template <class S>
HPoint<S> apply(const Mat3<S>& iso, const HPoint<S>& p) {
    return HPoint<S>::project(iso * p.vec());
}

template <class S>
DirectedLine<S> apply(const Mat3<S>& iso, const DirectedLine<S>& m) {
    return DirectedLine<S>::project(iso * m.normal());
}

// Hyperboloid point of Gauss polar coordinates (rho, theta).
template <class S>
Vec3<S> gauss_vec(S rho, S theta) {
    const S sh = std::sinh(rho);
    return Vec3<S>(std::cosh(rho), sh * std::cos(theta), sh * std::sin(theta));
}

}  // namespace hypermass
