#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <variant>
#include <vector>

#include "hypermass/errors.hpp"
#include "hypermass/isometry.hpp"
#include "hypermass/line.hpp"
#include "hypermass/point.hpp"
#include "hypermass/trig.hpp"

namespace hypermass {

inline constexpr double pi_v = 3.14159265358979323846;

// Compact positive-area regions. Every region is star shaped about an
// interior anchor point, which is what lets one polar chart cover it.

template <class S>
struct GeodesicTriangle {
    HPoint<S> a, b, c;

    GeodesicTriangle(HPoint<S> a_, HPoint<S> b_, HPoint<S> c_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
        if (!(triangle_area(a, b, c) > S(1e-10)))
            throw DegenerateTriangle("GeodesicTriangle: area is not positive");
    }
};

template <class S>
struct Disk {
    HPoint<S> center;
    S radius;

    Disk(HPoint<S> c, S r) : center(std::move(c)), radius(r) {
        if (!(r > S(0))) throw InvalidRegion("Disk: radius must be positive");
    }
};

// Circular sector of radius r about `center`. The angle window [theta0,
// theta1] is measured in the canonical frame at the center: the frame carried
// from the model origin by the transvection along the origin-to-center
// geodesic (the identity when the center is the origin).
template <class S>
struct Wedge {
    HPoint<S> center;
    S radius;
    S theta0, theta1;

    Wedge(HPoint<S> c, S r, S t0, S t1)
        : center(std::move(c)), radius(r), theta0(t0), theta1(t1) {
        if (!(r > S(0))) throw InvalidRegion("Wedge: radius must be positive");
        if (!(t1 > t0) || t1 - t0 > S(2) * S(pi_v) + S(1e-12))
            throw InvalidRegion("Wedge: angle window must be increasing and at "
                                "most a full turn");
    }

    // The symmetric wedge of half-angle pi/n about the frame's first axis.
    static Wedge symmetric(HPoint<S> c, S r, int n) {
        if (n < 1) throw InvalidRegion("Wedge: n must be at least 1");
        return Wedge(std::move(c), r, -S(pi_v) / n, S(pi_v) / n);
    }
};

// Regular n-gon given by center and in-radius (apothem). `phase` rotates the
// polygon in the canonical frame at the center; at phase 0 the first side's
// midpoint lies in direction theta = 0. Vertices exist only while
// cosh(r) sin(pi/n) < 1.
template <class S>
struct RegularPolygon {
    HPoint<S> center;
    int n;
    S in_radius;
    S phase;

    RegularPolygon(HPoint<S> c, int n_, S r, S ph = S(0))
        : center(std::move(c)), n(n_), in_radius(r), phase(ph) {
        if (n < 3) throw InvalidRegion("RegularPolygon: need n >= 3");
        if (!(r > S(0)))
            throw InvalidRegion("RegularPolygon: in-radius must be positive");
        if (!(std::cosh(r) * std::sin(S(pi_v) / n) < S(1)))
            throw InvalidPolygon(
                "RegularPolygon: cosh(r) sin(pi/n) >= 1, vertices do not exist");
    }

    S circumradius() const {
        return std::atanh(std::tanh(in_radius) / std::cos(S(pi_v) / n));
    }
};

// Star-shaped region about the model origin bounded by rho <= rho_max(theta),
// with rho_max sampled uniformly in theta and interpolated linearly
// (periodic). `phase` shifts the sample grid.
template <class S>
struct PolarGraph {
    std::vector<S> samples;
    S phase;

    explicit PolarGraph(std::vector<S> rho, S ph = S(0))
        : samples(std::move(rho)), phase(ph) {
        if (samples.size() < 3)
            throw InvalidRegion("PolarGraph: need at least 3 boundary samples");
        S peak = S(0);
        for (S r : samples) {
            if (!(r >= S(0)))
                throw InvalidRegion("PolarGraph: boundary radii must be >= 0");
            peak = std::max(peak, r);
        }
        if (!(peak > S(0)))
            throw InvalidRegion("PolarGraph: boundary is identically zero");
    }

    S rho_at(S theta) const {
        const std::size_t n = samples.size();
        const S step = S(2) * S(pi_v) / S(n);
        S u = (theta - phase) / step;
        u -= std::floor(u / S(n)) * S(n);
        const std::size_t k = std::min(static_cast<std::size_t>(u), n - 1);
        const S frac = u - S(k);
        return samples[k] * (S(1) - frac) + samples[(k + 1) % n] * frac;
    }
};

template <class S>
using Region = std::variant<GeodesicTriangle<S>, Disk<S>, Wedge<S>,
                            RegularPolygon<S>, PolarGraph<S>>;

// -- polar chart ---------------------------------------------------------------

// A region rendered as a star-shaped polar domain: world = to_world *
// gauss_vec(rho, theta) for 0 <= rho <= rho_max(theta), theta in
// [breaks.front(), breaks.back()]. Breaks mark every boundary corner.
template <class S>
struct PolarChart {
    Mat3<S> to_world;
    Mat3<S> to_chart;
    std::vector<S> breaks;
    std::function<S(S)> rho_max;

    HPoint<S> world_point(S rho, S theta) const {
        return HPoint<S>::project(to_world * gauss_vec(rho, theta));
    }
};

namespace detail {

template <class S>
PolarChart<S> chart_of(const GeodesicTriangle<S>& t) {
    PolarChart<S> ch;
    const HPoint<S> anchor =
        HPoint<S>::project(t.a.vec() + t.b.vec() + t.c.vec());
    ch.to_world = transvection_from_origin(anchor);
    ch.to_chart = transvection_to_origin(anchor);

    std::array<HPoint<S>, 3> v = {apply(ch.to_chart, t.a),
                                  apply(ch.to_chart, t.b),
                                  apply(ch.to_chart, t.c)};
    std::array<S, 3> ang;
    for (int i = 0; i < 3; ++i) ang[i] = std::atan2(v[i].v(), v[i].u());
    std::array<int, 3> idx = {0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return ang[i] < ang[j]; });

    // Sector k spans the angles between consecutive vertices (in angle
    // order); its boundary is the side joining those two vertices.
    auto sector_form = [&](int i, int j) {
        return gauss_form(line_through(v[idx[i]], v[idx[j]]));
    };
    std::array<GaussGeodesic<S>, 3> forms = {sector_form(0, 1), sector_form(1, 2),
                                             sector_form(2, 0)};

    const S a0 = ang[idx[0]], a1 = ang[idx[1]], a2 = ang[idx[2]];
    ch.breaks = {a0, a1, a2, a0 + S(2) * S(pi_v)};
    ch.rho_max = [a0, a1, a2, forms](S theta) -> S {
        S th = theta;
        const S tau = S(2) * S(pi_v);
        while (th >= a0 + tau) th -= tau;
        while (th < a0) th += tau;
        int k = (th < a1) ? 0 : (th < a2 ? 1 : 2);
        return gauss_rho(forms[k], th);
    };
    return ch;
}

template <class S>
PolarChart<S> chart_of(const Disk<S>& d) {
    PolarChart<S> ch;
    ch.to_world = transvection_from_origin(d.center);
    ch.to_chart = transvection_to_origin(d.center);
    ch.breaks = {-S(pi_v), -S(pi_v) / 2, S(0), S(pi_v) / 2, S(pi_v)};
    const S r = d.radius;
    ch.rho_max = [r](S) { return r; };
    return ch;
}

template <class S>
PolarChart<S> chart_of(const Wedge<S>& w) {
    PolarChart<S> ch;
    ch.to_world = transvection_from_origin(w.center);
    ch.to_chart = transvection_to_origin(w.center);
    const S mid = (w.theta0 + w.theta1) / 2;
    ch.breaks = {w.theta0, mid, w.theta1};
    const S r = w.radius;
    ch.rho_max = [r](S) { return r; };
    return ch;
}

template <class S>
PolarChart<S> chart_of(const RegularPolygon<S>& p) {
    PolarChart<S> ch;
    ch.to_world = transvection_from_origin(p.center);
    ch.to_chart = transvection_to_origin(p.center);
    const S sector = S(2) * S(pi_v) / p.n;
    // Vertices sit at phase + (k + 1/2) * sector; panels must break there.
    for (int k = 0; k <= p.n; ++k)
        ch.breaks.push_back(p.phase + (S(k) - S(0.5)) * sector);
    const S tr = std::tanh(p.in_radius);
    const S phase = p.phase;
    ch.rho_max = [tr, phase, sector](S theta) {
        S th = std::remainder(theta - phase, sector);
        return std::atanh(tr / std::cos(th));
    };
    return ch;
}

template <class S>
PolarChart<S> chart_of(const PolarGraph<S>& g) {
    PolarChart<S> ch;
    ch.to_world = Mat3<S>::Identity();
    ch.to_chart = Mat3<S>::Identity();
    const std::size_t n = g.samples.size();
    const S step = S(2) * S(pi_v) / S(n);
    for (std::size_t k = 0; k <= n; ++k)
        ch.breaks.push_back(g.phase + step * S(k));
    ch.rho_max = [g](S theta) { return g.rho_at(theta); };
    return ch;
}

}  // namespace detail

template <class S>
PolarChart<S> make_chart(const Region<S>& r) {
    return std::visit([](const auto& v) { return detail::chart_of(v); }, r);
}

template <class S>
HPoint<S> region_anchor(const Region<S>& r) {
    return std::visit(
        [](const auto& v) -> HPoint<S> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, GeodesicTriangle<S>>)
                return HPoint<S>::project(v.a.vec() + v.b.vec() + v.c.vec());
            else if constexpr (std::is_same_v<T, PolarGraph<S>>)
                return HPoint<S>::origin();
            else
                return v.center;
        },
        r);
}

// -- point membership -----------------------------------------------------------

// Strict interior test with a small symmetric tolerance; used by the tiling
// checks, where boundary grazing must not count as overlap.
template <class S>
bool contains(const Region<S>& r, const HPoint<S>& x) {
    return std::visit(
        [&](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, GeodesicTriangle<S>>) {
                const HPoint<S> anchor =
                    HPoint<S>::project(v.a.vec() + v.b.vec() + v.c.vec());
                const std::array<DirectedLine<S>, 3> sides = {
                    line_through(v.a, v.b), line_through(v.b, v.c),
                    line_through(v.c, v.a)};
                for (const auto& m : sides) {
                    const S ref = signed_sinh_dist(m, anchor);
                    const S val = signed_sinh_dist(m, x);
                    if (val * sgn(ref) <= S(1e-12)) return false;
                }
                return true;
            } else if constexpr (std::is_same_v<T, Disk<S>>) {
                return dist(v.center, x) < v.radius - S(1e-12);
            } else {
                const PolarChart<S> ch = detail::chart_of(v);
                const HPoint<S> loc = HPoint<S>::project(ch.to_chart * x.vec());
                const auto gp = std::pair<S, S>(
                    std::asinh(std::hypot(loc.u(), loc.v())),
                    std::atan2(loc.v(), loc.u()));
                if constexpr (std::is_same_v<T, Wedge<S>>) {
                    if (!(gp.first < v.radius - S(1e-12))) return false;
                    if (gp.first < S(1e-14)) return true;  // apex neighborhood
                    const S tau = S(2) * S(pi_v);
                    S rel = gp.second - v.theta0;
                    rel -= std::floor(rel / tau) * tau;
                    return rel > S(1e-12) && rel < (v.theta1 - v.theta0) - S(1e-12);
                } else {
                    if (gp.first < S(1e-14)) return true;
                    return gp.first < ch.rho_max(gp.second) - S(1e-12);
                }
            }
        },
        r);
}

// -- extent --------------------------------------------------------------------

namespace detail {

template <class S>
S max_pairwise_dist(const std::vector<HPoint<S>>& pts) {
    S best = S(0);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, dist(pts[i], pts[j]));
    return best;
}

}  // namespace detail

// Diameter of the region (exact for triangle, disk, polygon; a boundary
// sample bound otherwise).
template <class S>
S region_diameter(const Region<S>& r) {
    return std::visit(
        [&](const auto& v) -> S {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, GeodesicTriangle<S>>) {
                return std::max(
                    {dist(v.a, v.b), dist(v.b, v.c), dist(v.c, v.a)});
            } else if constexpr (std::is_same_v<T, Disk<S>>) {
                return 2 * v.radius;
            } else if constexpr (std::is_same_v<T, RegularPolygon<S>>) {
                return 2 * v.circumradius();
            } else {
                const PolarChart<S> ch = detail::chart_of(v);
                std::vector<HPoint<S>> pts;
                const int nsamp = 96;
                const S a = ch.breaks.front(), b = ch.breaks.back();
                for (int k = 0; k < nsamp; ++k) {
                    const S th = a + (b - a) * S(k) / S(nsamp);
                    pts.push_back(ch.world_point(ch.rho_max(th), th));
                }
                if constexpr (std::is_same_v<T, Wedge<S>>)
                    pts.push_back(v.center);  // apex is a boundary point
                return detail::max_pairwise_dist(pts);
            }
        },
        r);
}

// Largest chart radius; bounds the region inside rho <= value about its anchor.
template <class S>
S max_chart_radius(const PolarChart<S>& ch, int samples_per_panel = 32) {
    S best = S(0);
    for (std::size_t k = 0; k + 1 < ch.breaks.size(); ++k) {
        const S a = ch.breaks[k], b = ch.breaks[k + 1];
        for (int i = 0; i <= samples_per_panel; ++i) {
            const S th = a + (b - a) * S(i) / S(samples_per_panel);
            best = std::max(best, ch.rho_max(th));
        }
    }
    return best;
}

}  // namespace hypermass
