#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "hypermass/errors.hpp"
#include "hypermass/isometry.hpp"
#include "hypermass/lamina.hpp"
#include "hypermass/linear_set.hpp"
#include "hypermass/models.hpp"
#include "hypermass/region.hpp"

namespace hypermass {

// Rotation about the model origin acts exactly on every region tag: frames
// carried by transvections conjugate covariantly, so angle windows and
// phases simply shift by the rotation angle.
template <class S>
Region<S> rotated_about_origin(const Region<S>& r, S phi) {
    const Mat3<S> g = rotation_about_origin(phi);
    return std::visit(
        [&](const auto& v) -> Region<S> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, GeodesicTriangle<S>>)
                return GeodesicTriangle<S>(apply(g, v.a), apply(g, v.b),
                                           apply(g, v.c));
            else if constexpr (std::is_same_v<T, Disk<S>>)
                return Disk<S>(apply(g, v.center), v.radius);
            else if constexpr (std::is_same_v<T, Wedge<S>>)
                return Wedge<S>(apply(g, v.center), v.radius, v.theta0 + phi,
                                v.theta1 + phi);
            else if constexpr (std::is_same_v<T, RegularPolygon<S>>)
                return RegularPolygon<S>(apply(g, v.center), v.n, v.in_radius,
                                         v.phase + phi);
            else
                return PolarGraph<S>(v.samples, v.phase + phi);
        },
        r);
}

namespace detail {

// Smooth closed-boundary pieces of a region, each parametrized over [0, 1].
// Chart panels give the outer arcs; a wedge needs its two radial edges too.
template <class S>
std::vector<std::function<HPoint<S>(S)>> boundary_pieces(const Region<S>& r) {
    std::vector<std::function<HPoint<S>(S)>> pieces;
    const PolarChart<S> ch = make_chart(r);
    for (std::size_t k = 0; k + 1 < ch.breaks.size(); ++k) {
        const S a = ch.breaks[k], b = ch.breaks[k + 1];
        pieces.push_back([ch, a, b](S u) {
            const S th = a + (b - a) * u;
            return ch.world_point(ch.rho_max(th), th);
        });
    }
    if (const Wedge<S>* w = std::get_if<Wedge<S>>(&r)) {
        if (w->theta1 - w->theta0 < 2 * S(pi_v) - S(1e-12)) {
            const S t0 = w->theta0, t1 = w->theta1, rad = w->radius;
            pieces.push_back(
                [ch, t0, rad](S u) { return ch.world_point(rad * u, t0); });
            pieces.push_back(
                [ch, t1, rad](S u) { return ch.world_point(rad * u, t1); });
        }
    }
    return pieces;
}

// Upper half-plane abscissa of a point.
template <class S>
S hp_x(const HPoint<S>& p) {
    return to_half_plane(p).x;
}

template <class S>
struct SampledPiece {
    std::function<HPoint<S>(S)> curve;
    std::vector<S> u;
    std::vector<S> x;
};

// Golden-section refinement of a local extremum of x along one piece.
template <class S>
S refine_extremum(const SampledPiece<S>& p, std::size_t i, bool maximum) {
    S a = p.u[i - 1], b = p.u[i + 1];
    const S g = S(0.6180339887498949);
    S c = b - g * (b - a), d = a + g * (b - a);
    for (int it = 0; it < 80; ++it) {
        const S fc = hp_x(p.curve(c)), fd = hp_x(p.curve(d));
        const bool left = maximum ? (fc > fd) : (fc < fd);
        if (left)
            b = d;
        else
            a = c;
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    return hp_x(p.curve((a + b) / 2));
}

// Vertical-line crossings: heights y at which the boundary meets x = a,
// found by scanning each piece's sample grid and bisecting the brackets.
template <class S>
void piece_crossings(const SampledPiece<S>& p, S a, std::vector<S>& ys) {
    for (std::size_t i = 0; i + 1 < p.u.size(); ++i) {
        if (!((p.x[i] - a) * (p.x[i + 1] - a) < S(0))) continue;
        S lo = p.u[i], hi = p.u[i + 1];
        S f_lo = p.x[i] - a;
        for (int it = 0; it < 60; ++it) {
            const S mid = (lo + hi) / 2;
            const S f_mid = hp_x(p.curve(mid)) - a;
            if (std::abs(f_mid) < S(1e-14)) {
                lo = hi = mid;
                break;
            }
            if ((f_lo < S(0)) == (f_mid < S(0))) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        ys.push_back(to_half_plane(p.curve((lo + hi) / 2)).y);
    }
}

// Exact slice of a geodesic triangle whose vertices are given in half-plane
// coordinates: each non-vertical side is a semicircle centered on the real
// axis, x is monotone along it, and the crossing height is explicit.
template <class S>
std::vector<std::pair<S, S>> triangle_slice(
    const std::array<std::pair<S, S>, 3>& v, S a) {
    std::vector<S> ys;
    for (int i = 0; i < 3; ++i) {
        const auto& p = v[i];
        const auto& q = v[(i + 1) % 3];
        if (std::abs(q.first - p.first) < S(1e-13)) continue;  // vertical side
        if (!(a > std::min(p.first, q.first) &&
              a < std::max(p.first, q.first)))
            continue;
        const S c = (q.first * q.first + q.second * q.second -
                     p.first * p.first - p.second * p.second) /
                    (2 * (q.first - p.first));
        const S R2 = (p.first - c) * (p.first - c) + p.second * p.second;
        const S disc = R2 - (a - c) * (a - c);
        if (!(disc > S(0))) continue;
        ys.push_back(std::sqrt(disc));
    }
    if (ys.empty()) return {};
    if (ys.size() != 2)
        throw SliceExtractionFailed(
            "triangle slice: expected exactly two boundary crossings");
    return {{std::min(ys[0], ys[1]), std::max(ys[0], ys[1])}};
}

}  // namespace detail

// Moment of a lamina about a line, computed by slicing along a pencil of
// asymptotically parallel geodesics. The pencil is named by the boundary
// angle of its shared ideal point in the conformal disk model; a rotation
// takes that point to boundary angle zero, after which the half-plane model
// renders the whole pencil as the vertical lines x = a. Each slice is a
// linear set on that vertical geodesic whose density is the lamina density
// divided by the half-plane height (the width of an infinitesimal slab
// between neighboring pencil lines), so integrating per-slice line moments
// over a reproduces the area integral. Slice supports are exact for
// triangles and are recovered from the boundary by bracketed bisection for
// the other region shapes.
template <class S>
S archimedes_moment(const Lamina<S>& L, S pencil_angle,
                    const DirectedLine<S>& m, int slice_count = 256) {
    if (slice_count < 1)
        throw InvalidQuadratureConfig(
            "archimedes_moment: slice count must be positive");

    // Normalize: ideal point to disk angle zero (half-plane infinity).
    const Region<S> reg = rotated_about_origin(L.region(), -pencil_angle);
    const Mat3<S> g_fwd = rotation_about_origin(pencil_angle);
    const Density<S> base = L.density();
    const Density<S> dens(CallableDensity<S>([g_fwd, base](const HPoint<S>& x) {
        return density_at(base, apply(g_fwd, x));
    }));
    const DirectedLine<S> mm =
        apply(rotation_about_origin(-pencil_angle), m);

    // Panel breaks in the abscissa: piece corners plus interior x-extrema
    // (where the slice interval structure folds).
    const bool exact_triangle =
        std::holds_alternative<GeodesicTriangle<S>>(reg);
    std::array<std::pair<S, S>, 3> tri_hp{};
    std::vector<S> breaks;
    std::vector<detail::SampledPiece<S>> sampled;

    if (exact_triangle) {
        const auto& t = std::get<GeodesicTriangle<S>>(reg);
        const HPoint<S> vs[3] = {t.a, t.b, t.c};
        for (int i = 0; i < 3; ++i) {
            const auto hpc = to_half_plane(vs[i]);
            tri_hp[i] = {hpc.x, hpc.y};
            breaks.push_back(hpc.x);
        }
    } else {
        auto pieces = detail::boundary_pieces(reg);
        const int per_piece = std::max(
            17, int(4 * std::size_t(slice_count) /
                    std::max<std::size_t>(pieces.size(), 1)));
        for (auto& pc : pieces) {
            detail::SampledPiece<S> sp;
            sp.curve = pc;
            for (int i = 0; i <= per_piece; ++i) {
                const S u = S(i) / S(per_piece);
                sp.u.push_back(u);
                sp.x.push_back(detail::hp_x(pc(u)));
            }
            breaks.push_back(sp.x.front());
            breaks.push_back(sp.x.back());
            for (std::size_t i = 1; i + 1 < sp.u.size(); ++i) {
                const S dl = sp.x[i] - sp.x[i - 1], dr = sp.x[i + 1] - sp.x[i];
                if (dl > S(0) && dr < S(0))
                    breaks.push_back(detail::refine_extremum(sp, i, true));
                else if (dl < S(0) && dr > S(0))
                    breaks.push_back(detail::refine_extremum(sp, i, false));
            }
            sampled.push_back(std::move(sp));
        }
    }

    std::sort(breaks.begin(), breaks.end());
    const S span = breaks.back() - breaks.front();
    if (!(span > S(0)))
        throw SliceExtractionFailed(
            "archimedes_moment: region has no abscissa extent");
    std::vector<S> panel;
    for (S b : breaks)
        if (panel.empty() || b - panel.back() > S(1e-9) * span)
            panel.push_back(b);
    if (panel.size() < 2) panel = {breaks.front(), breaks.back()};

    // Per-slice inner moment, plus the slice's contribution to the integral
    // of cosh(dist to origin) over the region. That integral has a free
    // closed form per slice (the integrand t(a, y)/y^2 = (a^2+y^2+1)/(2y^3)
    // in half-plane coordinates has an elementary antiderivative) and its
    // weight dominates every line-moment integrand, so comparing it against
    // an independent polar quadrature catches slice supports silently merged
    // across gaps the boundary sampling missed, including far from the
    // origin where a plain area check is too forgiving.
    struct SliceValue {
        S moment, tmass;
    };
    auto slice_moment = [&](S a) -> SliceValue {
        std::vector<std::pair<S, S>> spans;
        if (exact_triangle) {
            spans = detail::triangle_slice(tri_hp, a);
        } else {
            std::vector<S> ys;
            for (const auto& sp : sampled) detail::piece_crossings(sp, a, ys);
            if (ys.empty()) return {S(0), S(0)};
            if (ys.size() % 2 != 0)
                throw SliceExtractionFailed(
                    "archimedes_moment: odd number of boundary crossings on a "
                    "slice");
            std::sort(ys.begin(), ys.end());
            for (std::size_t i = 0; i + 1 < ys.size(); i += 2) {
                if (!contains(reg,
                              from_half_plane(a, (ys[i] + ys[i + 1]) / 2)))
                    throw SliceExtractionFailed(
                        "archimedes_moment: crossing pairing does not match "
                        "the region interior");
                spans.push_back({ys[i], ys[i + 1]});
            }
        }
        if (spans.empty()) return {S(0), S(0)};

        const DirectedLine<S> carrier =
            line_through(from_half_plane(a, S(1)), from_half_plane(a, S(2)));
        std::vector<ArcInterval<S>> support;
        S tmass = S(0);
        for (const auto& [ylo, yhi] : spans) {
            const S s0 = arclength_of(carrier, from_half_plane(a, ylo));
            const S s1 = arclength_of(carrier, from_half_plane(a, yhi));
            if (std::abs(s1 - s0) < S(1e-13)) continue;
            support.push_back({std::min(s0, s1), std::max(s0, s1)});
            tmass += std::log(yhi / ylo) / 2 +
                     (a * a + 1) / 4 * (S(1) / (ylo * ylo) - S(1) / (yhi * yhi));
        }
        if (support.empty()) return {S(0), S(0)};
        const LineDensity<S> slice_density(
            CallableLineDensity<S>([carrier, dens](S s) {
                const HPoint<S> x = point_at(carrier, s);
                return density_at(dens, x) / to_half_plane(x).y;
            }));
        return {linset_moment_about_line(
                    LinearSet<S>(carrier, std::move(support), slice_density),
                    mm),
                tmass};
    };

    // Outer Gauss-Legendre over the abscissa, panels split at the breaks and
    // subdivided toward the requested slice budget.
    const GaussRule& rule = gauss_legendre(32);
    const S total_w = panel.back() - panel.front();
    std::vector<S> contributions;
    std::vector<S> tmasses;
    for (std::size_t k = 0; k + 1 < panel.size(); ++k) {
        const S w = panel[k + 1] - panel[k];
        const int nsub = std::max(
            1, int(std::ceil(S(slice_count) / 32 * w / total_w)));
        for (int s = 0; s < nsub; ++s) {
            const S a0 = panel[k] + w * S(s) / S(nsub);
            const S a1 = panel[k] + w * S(s + 1) / S(nsub);
            const S hw = (a1 - a0) / 2, mid = (a0 + a1) / 2;
            S acc = S(0), tacc = S(0);
            for (int i = 0; i < 32; ++i) {
                const auto sv = slice_moment(mid + hw * S(rule.nodes[i]));
                acc += S(rule.weights[i]) * sv.moment;
                tacc += S(rule.weights[i]) * sv.tmass;
            }
            contributions.push_back(hw * acc);
            tmasses.push_back(hw * tacc);
        }
    }

    // Coverage check: the abscissa integral of the per-slice closed forms
    // must reproduce the independently computed polar integral; a mismatch
    // means the requested resolution cannot resolve this region's slices.
    const PolarChart<S> cov = make_chart(reg);
    const S tmass_ref =
        integrate_polar<S>(QuadratureConfig<S>{}, cov.breaks, cov.rho_max,
                           [&cov](S rho, S th) {
                               return cov.world_point(rho, th).vec()(0);
                           })
            .value;
    const S tmass_sliced = pairwise_sum(tmasses);
    if (std::abs(tmass_sliced - tmass_ref) > S(1e-4) * tmass_ref)
        throw SliceExtractionFailed(
            "archimedes_moment: slice supports do not account for the region "
            "at this slice count");
    return pairwise_sum(contributions);
}

}  // namespace hypermass
