#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "hypermass/errors.hpp"
#include "hypermass/line.hpp"
#include "hypermass/point.hpp"

namespace hypermass {

template <class S>
struct PointMass {
    HPoint<S> location;
    S weight;

    PointMass(HPoint<S> loc, S w) : location(std::move(loc)), weight(w) {
        if (!(w > S(0))) throw InvalidWeight("PointMass: weight must be positive");
    }
};

template <class S>
using PointMassSystem = std::vector<PointMass<S>>;

// Unsigned moment about a point: weight * sinh of the distance.
template <class S>
S moment_about_point(const PointMass<S>& pm, const HPoint<S>& n) {
    return pm.weight * std::sinh(dist(pm.location, n));
}

// Signed moment about a directed line. Linear in the location vector, so
// moments of combinations add exactly.
template <class S>
S moment_about_line(const PointMass<S>& pm, const DirectedLine<S>& m) {
    return pm.weight * signed_sinh_dist(m, pm.location);
}

// The centroid operation: the unique point mass (Z, z) with Z on segment XY,
// x sinh XZ = y sinh YZ, and z = x cosh XZ + y cosh YZ. In vector form the
// weighted sum x X + y Y is timelike with Minkowski norm z and direction Z,
// which gives the closed form below; the defining equations are enforced as
// test properties rather than solved iteratively.
template <class S>
PointMass<S> combine(const PointMass<S>& p, const PointMass<S>& q) {
    const Vec3<S> s = p.weight * p.location.vec() + q.weight * q.location.vec();
    const S z = std::sqrt(std::max(-mdot(s, s), S(0)));
    return PointMass<S>(HPoint<S>::project(s), z);
}

// External balance point of two unequal masses: the point Z outside segment
// XY with x sinh XZ = y sinh YZ and weight |x cosh XZ - y cosh YZ|. It is
// the normalized weighted difference when that vector is timelike, which
// happens exactly when d(X, Y) < |ln(x/y)|. Otherwise the balance point
// recedes beyond the horizon and no finite answer exists.
template <class S>
PointMass<S> external_centroid(const PointMass<S>& p, const PointMass<S>& q) {
    if (dist(p.location, q.location) < S(1e-12))
        throw CoincidentPoints("external_centroid: locations coincide");
    const S hi = std::max(p.weight, q.weight);
    if (std::abs(p.weight - q.weight) / hi < S(1e-12))
        throw EqualWeights(
            "external_centroid: equal weights balance only at infinity");
    const Vec3<S> w =
        p.weight * p.location.vec() - q.weight * q.location.vec();
    const S ms = mdot(w, w);
    if (!(ms < S(0)))
        throw NoFiniteBalancePoint(
            "external_centroid: no finite balance point; the separation is at "
            "least |ln(x/y)|");
    return PointMass<S>(HPoint<S>::project(w), std::sqrt(-ms));
}

// Left fold of combine over the system.
template <class S>
PointMass<S> system_centroid(const PointMassSystem<S>& s) {
    if (s.empty()) throw InvalidWeight("system_centroid: empty system");
    PointMass<S> acc = s.front();
    for (std::size_t i = 1; i < s.size(); ++i) acc = combine(acc, s[i]);
    return acc;
}

// Mass formula evaluated at a caller-supplied centroid location.
template <class S>
S system_mass_direct(const PointMassSystem<S>& s, const HPoint<S>& c) {
    S acc = S(0);
    for (const auto& pm : s) acc += pm.weight * std::cosh(dist(pm.location, c));
    return acc;
}

template <class S>
S system_moment(const PointMassSystem<S>& s, const DirectedLine<S>& m) {
    S acc = S(0);
    for (const auto& pm : s) acc += moment_about_line(pm, m);
    return acc;
}

// Relative balance test. The normalizer sum_i x_i cosh d(X_i, m) dominates
// the unsigned moment sum and is never zero, so the criterion is scale-free
// and well defined even when every point lies on the line.
template <class S>
bool is_balanced(const PointMassSystem<S>& s, const DirectedLine<S>& m, S tol) {
    if (!(tol > S(0))) throw InvalidWeight("is_balanced: tol must be positive");
    S moment = S(0), scale = S(0);
    for (const auto& pm : s) {
        const S sd = signed_sinh_dist(m, pm.location);
        moment += pm.weight * sd;
        scale += pm.weight * std::sqrt(S(1) + sd * sd);
    }
    return std::abs(moment) <= tol * scale;
}

// -- lever law ----------------------------------------------------------------

template <class S>
struct LeverForce {
    S magnitude;
    S offset;  // signed arclength along the lever from a shared origin

    LeverForce(S f, S c) : magnitude(f), offset(c) {
        if (!(f > S(0)))
            throw InvalidWeight("LeverForce: magnitude must be positive");
    }
};

template <class S>
struct LeverResultant {
    S offset;
    S magnitude;
};

// Resultant of two perpendicular forces on a common lever: the application
// point e between the two inputs satisfying F1 sinh c1 = F2 sinh c2 (ci the
// arclengths from e), with magnitude F1 cosh c1 + F2 cosh c2.
template <class S>
LeverResultant<S> lever_resultant(const LeverForce<S>& f1,
                                  const LeverForce<S>& f2) {
    const LeverForce<S>& a = (f1.offset <= f2.offset) ? f1 : f2;
    const LeverForce<S>& b = (f1.offset <= f2.offset) ? f2 : f1;
    const S d = b.offset - a.offset;
    if (d < S(1e-15))
        return {a.offset, a.magnitude + b.magnitude};
    const S t = std::atanh(b.magnitude * std::sinh(d) /
                           (a.magnitude + b.magnitude * std::cosh(d)));
    return {a.offset + t,
            a.magnitude * std::cosh(t) + b.magnitude * std::cosh(d - t)};
}

}  // namespace hypermass
