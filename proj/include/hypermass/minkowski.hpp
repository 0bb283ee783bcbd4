#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "hypermass/errors.hpp"

// 2+1 Minkowski linear algebra with signature (-,+,+). Everything else in the
// library reduces to these few forms.

namespace hypermass {

template <class S>
using Vec3 = Eigen::Matrix<S, 3, 1>;

template <class S>
using Mat3 = Eigen::Matrix<S, 3, 3>;

template <class S>
S mdot(const Vec3<S>& a, const Vec3<S>& b) {
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class S>
Mat3<S> minkowski_metric() {
    Mat3<S> J = Mat3<S>::Identity();
    J(0, 0) = S(-1);
    return J;
}

// Minkowski cross product: orthogonal (in the Minkowski sense) to both
// arguments, with <axb, axb> = <a,b>^2 - <a,a><b,b>.
template <class S>
Vec3<S> mcross(const Vec3<S>& a, const Vec3<S>& b) {
    Vec3<S> c = a.cross(b);
    c[0] = -c[0];
    return c;
}

// Scale a timelike vector onto the upper unit hyperboloid.
template <class S>
Vec3<S> normalize_timelike(const Vec3<S>& w) {
    const S q = mdot(w, w);
    if (!(q < S(0)))
        throw OutOfDomain("normalize_timelike: vector is not timelike");
    Vec3<S> u = w / std::sqrt(-q);
    if (u[0] < S(0)) u = -u;
    return u;
}

template <class S>
Vec3<S> normalize_spacelike(const Vec3<S>& w) {
    const S q = mdot(w, w);
    if (!(q > S(0)))
        throw OutOfDomain("normalize_spacelike: vector is not spacelike");
    return w / std::sqrt(q);
}

}  // namespace hypermass
