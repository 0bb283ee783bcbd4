#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "hypermass/errors.hpp"
#include "hypermass/line.hpp"
#include "hypermass/numeric.hpp"
#include "hypermass/point.hpp"
#include "hypermass/point_mass.hpp"

namespace hypermass {

// One-dimensional mass distributions supported on a finite union of closed
// arclength intervals of a directed geodesic. Arclength is measured from the
// carrier's closest point to the model origin, positive in the carrier's
// direction; flipping the carrier's orientation negates signed moments.

template <class S>
struct ArcInterval {
    S lo, hi;
};

template <class S>
struct ConstantLineDensity {
    S value;
    explicit ConstantLineDensity(S v) : value(v) {
        if (!(v > S(0)))
            throw InvalidDensity("constant line density must be positive");
    }
};

template <class S>
using CallableLineDensity = std::function<S(S)>;

template <class S>
using LineDensity =
    std::variant<ConstantLineDensity<S>, CallableLineDensity<S>>;

template <class S>
S line_density_at(const LineDensity<S>& d, S s) {
    return std::visit(
        [&](const auto& v) -> S {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>,
                                         ConstantLineDensity<S>>)
                return v.value;
            else
                return v(s);
        },
        d);
}

namespace detail {

// 32-node Gauss-Legendre on [a, b] with a two-estimate agreement check: the
// whole-interval rule must match the two-half rule at 1e-12 relative, else
// one further split level is applied. Integrands here are analytic, so the
// halved rule is effectively exact.
template <class S, class F>
S gl32(F& f, S a, S b) {
    const GaussRule& rule = gauss_legendre(32);
    const S hw = (b - a) / 2, mid = (a + b) / 2;
    S acc = S(0);
    for (int i = 0; i < 32; ++i)
        acc += S(rule.weights[i]) * f(mid + hw * S(rule.nodes[i]));
    return hw * acc;
}

template <class S, class F>
S integrate_arc(F f, S a, S b) {
    if (!(b > a)) return S(0);
    const S whole = gl32(f, a, b);
    const S mid = (a + b) / 2;
    const S halves = gl32(f, a, mid) + gl32(f, mid, b);
    if (std::abs(halves - whole) <=
        S(1e-12) * std::max(S(1), std::abs(halves)))
        return halves;
    const S q1 = (a + mid) / 2, q3 = (mid + b) / 2;
    return gl32(f, a, q1) + gl32(f, q1, mid) + gl32(f, mid, q3) +
           gl32(f, q3, b);
}

}  // namespace detail

template <class S>
class LinearSet {
  public:
    LinearSet(DirectedLine<S> carrier, std::vector<ArcInterval<S>> support,
              LineDensity<S> density)
        : carrier_(std::move(carrier)),
          support_(std::move(support)),
          density_(std::move(density)) {
        validate();
    }

    const DirectedLine<S>& carrier() const { return carrier_; }
    const std::vector<ArcInterval<S>>& support() const { return support_; }
    const LineDensity<S>& density() const { return density_; }

    S support_min() const { return support_.front().lo; }
    S support_max() const { return support_.back().hi; }

    // The carrier point at arclength s.
    HPoint<S> point(S s) const { return point_at(carrier_, s); }

  private:
    void validate() {
        if (support_.empty())
            throw InvalidSupport("LinearSet: support is empty");
        std::sort(support_.begin(), support_.end(),
                  [](const ArcInterval<S>& u, const ArcInterval<S>& v) {
                      return u.lo < v.lo;
                  });
        for (std::size_t i = 0; i < support_.size(); ++i) {
            if (!(support_[i].hi > support_[i].lo))
                throw InvalidSupport(
                    "LinearSet: intervals must have positive length");
            if (i > 0 && !(support_[i].lo > support_[i - 1].hi))
                throw InvalidSupport("LinearSet: intervals must be disjoint");
        }
        S total = S(0);
        const GaussRule& rule = gauss_legendre(32);
        for (const auto& iv : support_) {
            const S hw = (iv.hi - iv.lo) / 2, mid = (iv.hi + iv.lo) / 2;
            for (int i = 0; i < 32; ++i) {
                const S lam = line_density_at(density_, mid + hw * S(rule.nodes[i]));
                if (lam < S(0))
                    throw InvalidDensity(
                        "LinearSet: density is negative on the support");
                total += hw * S(rule.weights[i]) * lam;
            }
        }
        if (!(total > S(0)))
            throw InvalidDensity(
                "LinearSet: density integrates to zero over the support");
    }

    DirectedLine<S> carrier_;
    std::vector<ArcInterval<S>> support_;
    LineDensity<S> density_;
};

// Signed moment about the carrier point at arclength a: integral of
// density(s) * sinh(s - a). Mass beyond a counts positively. Each interval
// is split at a so no panel straddles the sign change.
template <class S>
S linset_moment_about_point(const LinearSet<S>& L, S a) {
    auto f = [&](S s) { return line_density_at(L.density(), s) * std::sinh(s - a); };
    std::vector<S> parts;
    for (const auto& iv : L.support()) {
        if (iv.lo < a && a < iv.hi) {
            parts.push_back(detail::integrate_arc<S>(f, iv.lo, a));
            parts.push_back(detail::integrate_arc<S>(f, a, iv.hi));
        } else {
            parts.push_back(detail::integrate_arc<S>(f, iv.lo, iv.hi));
        }
    }
    return pairwise_sum(parts);
}

// The arclength position whose point moment vanishes. The moment is strictly
// decreasing in a (its derivative is minus the mass integrand), so bisection
// over the support hull cannot fail; termination is at 1e-12 relative to the
// scale integral-of-density times sinh(hull diameter).
template <class S>
S linset_centroid(const LinearSet<S>& L) {
    S lo = L.support_min(), hi = L.support_max();
    S total = S(0);
    for (const auto& iv : L.support())
        total += detail::integrate_arc<S>(
            [&](S s) { return line_density_at(L.density(), s); }, iv.lo, iv.hi);
    const S scale = total * std::sinh(hi - lo);
    for (int i = 0; i < 200; ++i) {
        const S mid = (lo + hi) / 2;
        const S mom = linset_moment_about_point(L, mid);
        if (std::abs(mom) <= S(1e-12) * scale) return mid;
        if (mom > S(0))
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

// Mass: integral of density(s) * cosh(s - C) with C the centroid position.
template <class S>
S linset_mass(const LinearSet<S>& L) {
    const S c = linset_centroid(L);
    std::vector<S> parts;
    for (const auto& iv : L.support())
        parts.push_back(detail::integrate_arc<S>(
            [&](S s) {
                return line_density_at(L.density(), s) * std::cosh(s - c);
            },
            iv.lo, iv.hi));
    return pairwise_sum(parts);
}

// Signed moment about an arbitrary line: integral of density(s) * <m, X(s)>.
// Along the carrier, <m, X(s)> = <m, B> cosh s + <m, T> sinh s with B the
// carrier's base point and T its unit tangent there, so the integrand is
// analytic; no sign splitting is needed.
template <class S>
S linset_moment_about_line(const LinearSet<S>& L, const DirectedLine<S>& m) {
    const HPoint<S> b = base_point(L.carrier());
    const Vec3<S> t = tangent_at(L.carrier(), b);
    const S mb = mdot(m.normal(), b.vec());
    const S mt = mdot(m.normal(), t);
    std::vector<S> parts;
    for (const auto& iv : L.support())
        parts.push_back(detail::integrate_arc<S>(
            [&](S s) {
                return line_density_at(L.density(), s) *
                       (mb * std::cosh(s) + mt * std::sinh(s));
            },
            iv.lo, iv.hi));
    return pairwise_sum(parts);
}

// The linear set condensed to a single point mass: centroid position on the
// carrier and total mass.
template <class S>
PointMass<S> linset_point_mass(const LinearSet<S>& L) {
    const S c = linset_centroid(L);
    std::vector<S> parts;
    for (const auto& iv : L.support())
        parts.push_back(detail::integrate_arc<S>(
            [&](S s) {
                return line_density_at(L.density(), s) * std::cosh(s - c);
            },
            iv.lo, iv.hi));
    return PointMass<S>{L.point(c), pairwise_sum(parts)};
}

}  // namespace hypermass
