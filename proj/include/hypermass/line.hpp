#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "hypermass/errors.hpp"
#include "hypermass/minkowski.hpp"
#include "hypermass/numeric.hpp"
#include "hypermass/point.hpp"

namespace hypermass {

// An oriented geodesic, represented by its unit spacelike Minkowski normal m:
// the line is { X on the sheet : <m, X> = 0 }. The sign of <m, X> is the side
// function sigma; reversing the orientation negates the normal. With the
// normal of line_through(a, b) chosen as the normalized Minkowski cross
// a x b, the positive side is the left-hand side when traveling a -> b.
template <class S>
class DirectedLine {
  public:
    explicit DirectedLine(const Vec3<S>& n) : n_(n) { validate(); }

    static DirectedLine project(const Vec3<S>& w) {
        return DirectedLine(normalize_spacelike(w), unchecked{});
    }

    const Vec3<S>& normal() const { return n_; }

    DirectedLine reverse() const { return DirectedLine(-n_, unchecked{}); }

  private:
    struct unchecked {};
    DirectedLine(const Vec3<S>& n, unchecked) : n_(n) {}

    void validate() const {
        const S q = mdot(n_, n_);
        if (!(std::abs(q - S(1)) <= S(1e-12) * std::max(S(1), n_.squaredNorm())))
            throw OutOfDomain("DirectedLine: normal is not unit spacelike");
    }

    Vec3<S> n_;
};

template <class S>
DirectedLine<S> line_through(const HPoint<S>& a, const HPoint<S>& b) {
    const S d = dist(a, b);
    if (d < S(1e-12)) throw CoincidentPoints("line_through: points coincide");
    // <axb, axb> = <a,b>^2 - 1 = sinh^2 d, so the cross is always spacelike
    // for distinct points and the explicit sinh is cheaper than a sqrt.
    return DirectedLine<S>(mcross(a.vec(), b.vec()) / std::sinh(d));
}

// Exactly sigma_m(x) * sinh d(x, m). Linear in both arguments, which is what
// makes moment additivity hold to machine precision.
template <class S>
S signed_sinh_dist(const DirectedLine<S>& m, const HPoint<S>& x) {
    return mdot(m.normal(), x.vec());
}

// Side function with a small dead zone: points within construction tolerance
// of the line report 0.
template <class S>
int sigma(const DirectedLine<S>& m, const HPoint<S>& x) {
    const S s = signed_sinh_dist(m, x);
    const S tol = S(1e-12) * m.normal().norm() * x.vec().norm();
    if (std::abs(s) <= tol) return 0;
    return sgn(s);
}

template <class S>
HPoint<S> foot_of_perpendicular(const DirectedLine<S>& m, const HPoint<S>& x) {
    const S s = signed_sinh_dist(m, x);
    // x - <m,x> m has Minkowski square -(1 + s^2): always timelike.
    return HPoint<S>::project(x.vec() - s * m.normal());
}

// Unit tangent of the line at a point p on it, pointing in the direction of
// the orientation.
template <class S>
Vec3<S> tangent_at(const DirectedLine<S>& m, const HPoint<S>& p) {
    return mcross(m.normal(), p.vec());
}

// The point of the line closest to the model origin. Linear sets use this as
// the arclength base point, so interval coordinates are model independent.
template <class S>
HPoint<S> base_point(const DirectedLine<S>& m) {
    return foot_of_perpendicular(m, HPoint<S>::origin());
}

// Arclength parametrization X(s) = B cosh s + T sinh s with B the base point
// and T the oriented tangent there.
template <class S>
HPoint<S> point_at(const DirectedLine<S>& m, S s) {
    const HPoint<S> b = base_point(m);
    const Vec3<S> t = tangent_at(m, b);
    return HPoint<S>::project(std::cosh(s) * b.vec() + std::sinh(s) * t);
}

// Signed arclength coordinate of a point on (or numerically near) the line.
template <class S>
S arclength_of(const DirectedLine<S>& m, const HPoint<S>& x) {
    const HPoint<S> f = foot_of_perpendicular(m, x);
    const HPoint<S> b = base_point(m);
    const Vec3<S> t = tangent_at(m, b);
    return std::asinh(mdot(t, f.vec()));
}

// Intersection point of two geodesics, if they meet in the plane.
template <class S>
std::optional<HPoint<S>> intersect(const DirectedLine<S>& m1,
                                   const DirectedLine<S>& m2) {
    const Vec3<S> w = mcross(m1.normal(), m2.normal());
    if (!(mdot(w, w) < S(-1e-28))) return std::nullopt;
    return HPoint<S>::project(w);
}

// Ideal endpoints of the line as boundary angles of the Poincare disk
// (the angle of the horizon point a ray approaches). Returned as
// (toward -s, toward +s) of the arclength parametrization.
template <class S>
std::pair<S, S> ideal_angles(const DirectedLine<S>& m) {
    const HPoint<S> b = base_point(m);
    const Vec3<S> t = tangent_at(m, b);
    const Vec3<S> fwd = b.vec() + t;   // null direction toward +s
    const Vec3<S> bwd = b.vec() - t;
    return {std::atan2(bwd[2], bwd[1]), std::atan2(fwd[2], fwd[1])};
}

// A geodesic in polar form: rho = arcoth(C cos(theta - alpha)) for lines not
// through the origin, or the radial line theta in {theta0, theta0 + pi}.
// tanh of the line's distance from the origin equals 1/C.
template <class S>
struct GaussGeodesic {
    bool radial = false;
    S C = S(0);       // > 1 when not radial
    S alpha = S(0);   // direction of the closest point, radians
    S theta0 = S(0);  // radial case only
};

template <class S>
GaussGeodesic<S> gauss_form(const DirectedLine<S>& m) {
    Vec3<S> n = m.normal();
    if (n[0] < S(0)) n = -n;  // polar form is orientation blind
    GaussGeodesic<S> g;
    if (n[0] < S(1e-14)) {
        g.radial = true;
        g.theta0 = std::atan2(n[2], n[1]) + S(1.57079632679489661923);
        if (g.theta0 > S(3.14159265358979323846))
            g.theta0 -= S(2) * S(3.14159265358979323846);
        return g;
    }
    g.C = std::sqrt(S(1) + n[0] * n[0]) / n[0];
    g.alpha = std::atan2(n[2], n[1]);
    return g;
}

template <class S>
DirectedLine<S> line_from_gauss(const GaussGeodesic<S>& g) {
    if (g.radial) {
        const S b = g.theta0 - S(1.57079632679489661923);
        return DirectedLine<S>(Vec3<S>(S(0), std::cos(b), std::sin(b)));
    }
    if (!(g.C > S(1))) throw OutOfDomain("line_from_gauss: C must exceed 1");
    // sinh d = n_t and cosh d = sqrt(1 + n_t^2) give n_t = 1/sqrt(C^2 - 1).
    const S nt = S(1) / std::sqrt(g.C * g.C - S(1));
    const S nr = std::sqrt(S(1) + nt * nt);
    return DirectedLine<S>(
        Vec3<S>(nt, nr * std::cos(g.alpha), nr * std::sin(g.alpha)));
}

// Boundary radius of the half-plane bounded by the line, as seen from the
// origin side: solve rho on the ray at angle theta. Requires the origin
// strictly off the line (C > 1) and C cos(theta - alpha) > 1.
template <class S>
S gauss_rho(const GaussGeodesic<S>& g, S theta) {
    const S c = g.C * std::cos(theta - g.alpha);
    if (!(c > S(1)))
        throw OutOfDomain("gauss_rho: ray does not cross the geodesic");
    return std::atanh(S(1) / c);
}

}  // namespace hypermass
