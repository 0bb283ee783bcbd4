#pragma once

#include <cmath>

#include "hypermass/errors.hpp"
#include "hypermass/minkowski.hpp"

namespace hypermass {

// A location in the hyperbolic plane, stored as a unit timelike vector on the
// upper sheet t^2 - u^2 - v^2 = 1, t > 0. Construction validates; every
// operation downstream may assume a valid point.
template <class S>
class HPoint {
  public:
    explicit HPoint(const Vec3<S>& v) : v_(v) { validate(); }
    HPoint(S t, S u, S v) : v_(t, u, v) { validate(); }

    static HPoint origin() { return HPoint(Vec3<S>(S(1), S(0), S(0)), unchecked{}); }

    // Normalize a timelike vector onto the sheet. This is the workhorse for
    // results of linear operations (weighted sums, isometry images).
    static HPoint project(const Vec3<S>& w) {
        return HPoint(normalize_timelike(w), unchecked{});
    }

    const Vec3<S>& vec() const { return v_; }
    S t() const { return v_[0]; }
    S u() const { return v_[1]; }
    S v() const { return v_[2]; }

  private:
    struct unchecked {};
    HPoint(const Vec3<S>& v, unchecked) : v_(v) {}

    void validate() const {
        const S q = mdot(v_, v_);
        const S scale = v_.squaredNorm();
        if (!(std::abs(q + S(1)) <= S(1e-12) * std::max(S(1), scale)) ||
            !(v_[0] > S(0)))
            throw OutOfDomain("HPoint: coordinates do not satisfy t^2-u^2-v^2=1, t>0");
    }

    Vec3<S> v_;
};

// Hyperbolic distance. cosh d = -<a,b> is exact but ill-conditioned near
// d = 0; the chordal form below is stable everywhere:
//   <a-b, a-b> = 2(cosh d - 1) = 4 sinh^2(d/2).
template <class S>
S dist(const HPoint<S>& a, const HPoint<S>& b) {
    const Vec3<S> c = a.vec() - b.vec();
    const S q = mdot(c, c);
    return 2 * std::asinh(S(0.5) * std::sqrt(std::max(q, S(0))));
}

// Unit tangent at a pointing toward b.
template <class S>
Vec3<S> direction(const HPoint<S>& a, const HPoint<S>& b) {
    const S d = dist(a, b);
    if (d < S(1e-12)) throw CoincidentPoints("direction: points coincide");
    return (b.vec() - std::cosh(d) * a.vec()) / std::sinh(d);
}

// Point at arclength s from a along the geodesic toward b; s may exceed
// dist(a, b) (the geodesic extends) and may be negative.
template <class S>
HPoint<S> point_along(const HPoint<S>& a, const HPoint<S>& b, S s) {
    const Vec3<S> tang = direction(a, b);
    return HPoint<S>::project(std::cosh(s) * a.vec() + std::sinh(s) * tang);
}

template <class S>
HPoint<S> midpoint(const HPoint<S>& a, const HPoint<S>& b) {
    return HPoint<S>::project(a.vec() + b.vec());
}

}  // namespace hypermass
