#pragma once

#include <cmath>
#include <functional>
#include <variant>

#include "hypermass/errors.hpp"
#include "hypermass/point.hpp"

namespace hypermass {

template <class S>
struct ConstantDensity {
    S value;
    explicit ConstantDensity(S v) : value(v) {
        if (!(v > S(0)))
            throw InvalidDensity("constant density must be positive");
    }
};

// a + b * cosh(dist(X, center)). Positivity over a concrete region is
// checked when a lamina is assembled, since it depends on the region.
template <class S>
struct RadialAffineDensity {
    S a;
    S b;
    HPoint<S> center;
};

// Opaque continuous nonnegative function; library-side only, not
// serializable through scene files.
template <class S>
using CallableDensity = std::function<S(const HPoint<S>&)>;

template <class S>
using Density = std::variant<ConstantDensity<S>, RadialAffineDensity<S>,
                             CallableDensity<S>>;

template <class S>
S density_at(const Density<S>& d, const HPoint<S>& x) {
    return std::visit(
        [&](const auto& v) -> S {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ConstantDensity<S>>)
                return v.value;
            else if constexpr (std::is_same_v<T, RadialAffineDensity<S>>)
                return v.a + v.b * std::cosh(dist(x, v.center));
            else
                return v(x);
        },
        d);
}

}  // namespace hypermass
