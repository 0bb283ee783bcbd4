#pragma once

#include <cmath>
#include <string>
#include <variant>

#include "hypermass/errors.hpp"
#include "hypermass/isometry.hpp"
#include "hypermass/point.hpp"

namespace hypermass {

// Coordinate models. The hyperboloid is the internal representation; the
// Poincare disk, the upper half-plane, and Gauss polar coordinates are
// user-facing charts converted through it.

enum class Model { hyperboloid, poincare, half_plane, gauss_polar };

template <class S>
struct HyperboloidCoords {
    S t, u, v;
};

template <class S>
struct DiskCoords {
    S x, y;  // x^2 + y^2 < 1
};

template <class S>
struct HalfPlaneCoords {
    S x, y;  // y > 0
};

template <class S>
struct GaussPolarCoords {
    S rho, theta;  // rho >= 0, theta in (-pi, pi]
};

template <class S>
using ModelCoords = std::variant<HyperboloidCoords<S>, DiskCoords<S>,
                                 HalfPlaneCoords<S>, GaussPolarCoords<S>>;

// -- each model to/from the hyperboloid --------------------------------------

template <class S>
HPoint<S> from_disk(S x, S y) {
    const S r2 = x * x + y * y;
    if (!(r2 < S(1))) throw OutOfDomain("disk coordinates outside the unit disk");
    const S den = S(1) - r2;
    return HPoint<S>((S(1) + r2) / den, 2 * x / den, 2 * y / den);
}

template <class S>
DiskCoords<S> to_disk(const HPoint<S>& p) {
    const S den = S(1) + p.t();
    return {p.u() / den, p.v() / den};
}

template <class S>
HPoint<S> from_gauss_polar(S rho, S theta) {
    if (!(rho >= S(0))) throw OutOfDomain("gauss polar radius must be nonnegative");
    return HPoint<S>(gauss_vec(rho, theta));
}

template <class S>
GaussPolarCoords<S> to_gauss_polar(const HPoint<S>& p) {
    const S r = std::hypot(p.u(), p.v());
    const S rho = std::asinh(r);
    const S theta = (r == S(0)) ? S(0) : std::atan2(p.v(), p.u());
    return {rho, theta};
}

// Disk <-> half-plane via the Cayley map z = i(1+w)/(1-w); the disk boundary
// point w = 1 goes to infinity.
template <class S>
HalfPlaneCoords<S> disk_to_half_plane(S x, S y) {
    const S den = (S(1) - x) * (S(1) - x) + y * y;
    if (!(den > S(0))) throw OutOfDomain("disk point maps to infinity");
    return {-2 * y / den, (S(1) - x * x - y * y) / den};
}

template <class S>
DiskCoords<S> half_plane_to_disk(S x, S y) {
    const S den = x * x + (y + S(1)) * (y + S(1));
    return {(x * x + y * y - S(1)) / den, -2 * x / den};
}

template <class S>
HPoint<S> from_half_plane(S x, S y) {
    if (!(y > S(0))) throw OutOfDomain("half-plane ordinate must be positive");
    const auto d = half_plane_to_disk(x, y);
    return from_disk(d.x, d.y);
}

template <class S>
HalfPlaneCoords<S> to_half_plane(const HPoint<S>& p) {
    const auto d = to_disk(p);
    return disk_to_half_plane(d.x, d.y);
}

// -- tagged conversions -------------------------------------------------------

template <class S>
HPoint<S> to_hpoint(const ModelCoords<S>& c) {
    return std::visit(
        [](const auto& m) -> HPoint<S> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, HyperboloidCoords<S>>)
                return HPoint<S>(m.t, m.u, m.v);
            else if constexpr (std::is_same_v<T, DiskCoords<S>>)
                return from_disk(m.x, m.y);
            else if constexpr (std::is_same_v<T, HalfPlaneCoords<S>>)
                return from_half_plane(m.x, m.y);
            else
                return from_gauss_polar(m.rho, m.theta);
        },
        c);
}

template <class S>
ModelCoords<S> from_hpoint(const HPoint<S>& p, Model target) {
    switch (target) {
        case Model::hyperboloid:
            return HyperboloidCoords<S>{p.t(), p.u(), p.v()};
        case Model::poincare: {
            const auto d = to_disk(p);
            return DiskCoords<S>{d.x, d.y};
        }
        case Model::half_plane: {
            const auto h = to_half_plane(p);
            return HalfPlaneCoords<S>{h.x, h.y};
        }
        case Model::gauss_polar: {
            const auto g = to_gauss_polar(p);
            return GaussPolarCoords<S>{g.rho, g.theta};
        }
    }
    throw OutOfDomain("from_hpoint: unknown model tag");
}

template <class S>
ModelCoords<S> convert(const ModelCoords<S>& c, Model target) {
    return from_hpoint(to_hpoint(c), target);
}

inline Model model_from_string(const std::string& s) {
    if (s == "hyperboloid") return Model::hyperboloid;
    if (s == "poincare") return Model::poincare;
    if (s == "half-plane") return Model::half_plane;
    if (s == "gauss-polar") return Model::gauss_polar;
    throw OutOfDomain("unknown model tag: " + s);
}

inline std::string model_to_string(Model m) {
    switch (m) {
        case Model::hyperboloid: return "hyperboloid";
        case Model::poincare: return "poincare";
        case Model::half_plane: return "half-plane";
        case Model::gauss_polar: return "gauss-polar";
    }
    return "?";
}

}  // namespace hypermass
