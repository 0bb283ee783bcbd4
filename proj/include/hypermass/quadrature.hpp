#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "hypermass/errors.hpp"
#include "hypermass/minkowski.hpp"
#include "hypermass/numeric.hpp"

namespace hypermass {

// Gauss-Legendre tensor quadrature on polar charts (rho, theta) with the
// curvature -1 area element sinh(rho) drho dtheta, plus adaptive bisection in
// theta. All region integrals in the library flow through integrate_polar.

template <class S>
struct QuadratureConfig {
    int radial_order = 24;
    int angular_order = 16;
    int max_depth = 12;
    S rel_tol = S(1e-8);
    // Accepted for reproducibility-sensitive callers. Panel evaluation in
    // this implementation is always a fixed-order serial loop and the
    // reduction is fixed-order pairwise, so results are identical with the
    // flag on or off; it exists so the CLI contract is explicit.
    bool sequential = false;

    void validate() const {
        if (radial_order < 2 || angular_order < 2)
            throw InvalidQuadratureConfig("quadrature orders must be at least 2");
        if (max_depth < 0)
            throw InvalidQuadratureConfig("refinement depth must be nonnegative");
        if (!(rel_tol > S(1e-14)) || !(rel_tol < S(1e-2)))
            throw InvalidQuadratureConfig(
                "relative tolerance must lie in (1e-14, 1e-2)");
    }
};

template <class V, class S>
struct QuadResultT {
    V value{};
    S abs_error{};      // estimated absolute error of value
    long panels = 0;    // accepted theta panels
};

template <class S>
using QuadResult = QuadResultT<S, S>;

namespace detail {

template <class S>
S norm_of(S x) {
    return std::abs(x);
}

template <class S>
S norm_of(const Vec3<S>& x) {
    return x.norm();
}

template <class V>
V zero_value() {
    if constexpr (std::is_arithmetic_v<V>)
        return V(0);
    else
        return V::Zero();
}

// One tensor panel: theta nodes on [a, b], radial nodes on [0, rho_max(theta)].
template <class V, class S, class RhoMax, class F>
V polar_panel(const QuadratureConfig<S>& q, S a, S b, RhoMax& rho_max,
              F& integrand) {
    const GaussRule& ar = gauss_legendre(q.angular_order);
    const GaussRule& rr = gauss_legendre(q.radial_order);
    const S hw = (b - a) / 2, mid = (a + b) / 2;
    V acc = zero_value<V>();
    for (int j = 0; j < q.angular_order; ++j) {
        const S theta = mid + hw * S(ar.nodes[j]);
        const S R = rho_max(theta);
        if (!(R > S(0))) continue;
        V radial = zero_value<V>();
        for (int i = 0; i < q.radial_order; ++i) {
            const S rho = R / 2 * (S(1) + S(rr.nodes[i]));
            radial += (S(rr.weights[i]) * std::sinh(rho)) * integrand(rho, theta);
        }
        acc += (S(ar.weights[j]) * R / 2) * radial;
    }
    return hw * acc;
}

template <class V, class S, class RhoMax, class F>
void refine_panel(const QuadratureConfig<S>& q, S a, S b, const V& coarse,
                  int depth, S tol_per_width, S floor_per_width, RhoMax& rho_max,
                  F& integrand, std::vector<V>& values, std::vector<S>& errors) {
    const S mid = (a + b) / 2;
    const V left = polar_panel<V>(q, a, mid, rho_max, integrand);
    const V right = polar_panel<V>(q, mid, b, rho_max, integrand);
    const V fine = left + right;
    const S diff = norm_of(V(fine - coarse));
    const S width = b - a;
    if (diff <= std::max(tol_per_width, floor_per_width) * width) {
        values.push_back(fine);
        errors.push_back(diff);
        return;
    }
    if (depth >= q.max_depth)
        throw QuadratureNotConverged(
            "polar quadrature: refinement depth exhausted before reaching the "
            "requested tolerance");
    refine_panel(q, a, mid, left, depth + 1, tol_per_width, floor_per_width,
                 rho_max, integrand, values, errors);
    refine_panel(q, mid, b, right, depth + 1, tol_per_width, floor_per_width,
                 rho_max, integrand, values, errors);
}

}  // namespace detail

// Integrate integrand(rho, theta) * sinh(rho) over the star-shaped domain
// 0 <= rho <= rho_max(theta), theta ranging over [breaks.front(),
// breaks.back()]. The break list must contain every angle where rho_max or
// the integrand loses smoothness (region corners); panels never straddle a
// break. The integrand may return a scalar or a Vec3 (component-wise
// integration with error measured in the Euclidean norm).
//
// Tolerance policy: a first non-adaptive pass integrates the pointwise norm
// of the integrand to obtain the scale A. Each panel of angular width w must
// then match its bisected refinement within rel_tol * A * w / W (W the total
// width), with a floor of 64 machine epsilons times the same share of A so
// that roundoff-dominated integrands (for example moments about lines through
// the centroid) terminate instead of thrashing.
template <class V, class S, class RhoMax, class F>
QuadResultT<V, S> integrate_polar(const QuadratureConfig<S>& q,
                                  const std::vector<S>& breaks, RhoMax rho_max,
                                  F integrand) {
    q.validate();
    if (breaks.size() < 2)
        throw InvalidQuadratureConfig("integrate_polar: need at least one panel");

    auto abs_integrand = [&](S rho, S theta) {
        return detail::norm_of(integrand(rho, theta));
    };
    S scale = S(0);
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
        scale += detail::polar_panel<S>(q, breaks[k], breaks[k + 1], rho_max,
                                        abs_integrand);
    scale = std::max(scale, std::numeric_limits<S>::min());

    const S total_width = breaks.back() - breaks.front();
    const S tol_per_width = q.rel_tol * scale / total_width;
    const S floor_per_width =
        64 * std::numeric_limits<S>::epsilon() * scale / total_width;

    std::vector<V> values;
    std::vector<S> errors;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        const V coarse =
            detail::polar_panel<V>(q, breaks[k], breaks[k + 1], rho_max, integrand);
        detail::refine_panel(q, breaks[k], breaks[k + 1], coarse, 0, tol_per_width,
                             floor_per_width, rho_max, integrand, values, errors);
    }

    QuadResultT<V, S> out;
    // Recombine panels pairwise in theta order: a schedule-independent sum.
    if (values.empty()) {
        out.value = detail::zero_value<V>();
    } else if constexpr (std::is_arithmetic_v<V>) {
        out.value = pairwise_sum(values);
    } else {
        out.value = detail::zero_value<V>();
        std::vector<S> comp(values.size());
        for (int c = 0; c < 3; ++c) {
            for (std::size_t i = 0; i < values.size(); ++i) comp[i] = values[i][c];
            out.value[c] = pairwise_sum(comp);
        }
    }
    out.abs_error = pairwise_sum(errors) +
                    64 * std::numeric_limits<S>::epsilon() * scale;
    out.panels = static_cast<long>(values.size());
    return out;
}

}  // namespace hypermass
