#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "hypermass/density.hpp"
#include "hypermass/errors.hpp"
#include "hypermass/isometry.hpp"
#include "hypermass/line.hpp"
#include "hypermass/numeric.hpp"
#include "hypermass/point.hpp"
#include "hypermass/point_mass.hpp"
#include "hypermass/quadrature.hpp"
#include "hypermass/region.hpp"

namespace hypermass {

// A region together with a mass density. Construction checks that the density
// is nonnegative at a grid of chart nodes (boundary included) and that it
// integrates to something positive.
template <class S>
class Lamina {
  public:
    Lamina(Region<S> region, Density<S> density)
        : region_(std::move(region)), density_(std::move(density)) {
        validate();
    }

    const Region<S>& region() const { return region_; }
    const Density<S>& density() const { return density_; }

  private:
    void validate() const {
        const PolarChart<S> ch = make_chart(region_);
        for (std::size_t k = 0; k + 1 < ch.breaks.size(); ++k) {
            for (int i = 0; i <= 12; ++i) {
                const S th = ch.breaks[k] +
                             (ch.breaks[k + 1] - ch.breaks[k]) * S(i) / S(12);
                const S top = ch.rho_max(th);
                for (int j = 0; j <= 8; ++j) {
                    const HPoint<S> x = ch.world_point(top * S(j) / S(8), th);
                    if (density_at(density_, x) < S(0))
                        throw InvalidDensity(
                            "Lamina: density is negative on the region");
                }
            }
        }
        QuadratureConfig<S> q;
        q.rel_tol = S(1e-6);
        const auto total = integrate_polar<S>(
            q, ch.breaks, ch.rho_max, [&](S rho, S theta) {
                return density_at(density_, ch.world_point(rho, theta));
            });
        if (!(total.value > S(1e-12)))
            throw InvalidDensity(
                "Lamina: density integrates to zero over the region");
    }

    Region<S> region_;
    Density<S> density_;
};

// Area of a region by polar quadrature.
template <class S>
QuadResult<S> area(const Region<S>& r,
                   const QuadratureConfig<S>& q = QuadratureConfig<S>{}) {
    const PolarChart<S> ch = make_chart(r);
    return integrate_polar<S>(q, ch.breaks, ch.rho_max,
                              [](S, S) { return S(1); });
}

// Signed first moment about a line: integral of density * <m, X> dA. Points
// on the positive side of m contribute positively.
template <class S>
QuadResult<S> lamina_moment(const Lamina<S>& L, const DirectedLine<S>& m,
                            const QuadratureConfig<S>& q = QuadratureConfig<S>{}) {
    const PolarChart<S> ch = make_chart(L.region());
    const Vec3<S> n = m.normal();
    return integrate_polar<S>(q, ch.breaks, ch.rho_max, [&](S rho, S theta) {
        const HPoint<S> x = ch.world_point(rho, theta);
        return density_at(L.density(), x) * mdot(n, x.vec());
    });
}

// Centroid result: the balance point, the equivalent point-mass weight (the
// Minkowski norm of the first-moment vector), and quadrature diagnostics.
template <class S>
struct CentroidResult {
    HPoint<S> location;
    S weight;
    S abs_error;
    long panels;
};

// Balance point of a lamina: normalize the Minkowski first-moment integral
// S = integral of density * vec(X) dA. Post-check: the moment about 8
// sampled line directions through the result must vanish within tolerance.
template <class S>
CentroidResult<S> lamina_centroid(
    const Lamina<S>& L, const QuadratureConfig<S>& q = QuadratureConfig<S>{}) {
    const PolarChart<S> ch = make_chart(L.region());
    const auto fm = integrate_polar<Vec3<S>>(
        q, ch.breaks, ch.rho_max, [&](S rho, S theta) -> Vec3<S> {
            const HPoint<S> x = ch.world_point(rho, theta);
            return density_at(L.density(), x) * x.vec();
        });
    if (!(mdot(fm.value, fm.value) < S(0)))
        throw InvalidDensity(
            "lamina_centroid: first moment is not timelike; density integral "
            "is too close to zero");

    CentroidResult<S> out{HPoint<S>::project(fm.value),
                          std::sqrt(-mdot(fm.value, fm.value)), fm.abs_error,
                          fm.panels};

    // Verification: lines through the balance point in 8 directions. The
    // weight bounds the unsigned moment scale, since sinh of the distance to
    // a line through C never exceeds cosh of the distance to C.
    const Mat3<S> frame = transvection_from_origin(out.location);
    for (int k = 0; k < 8; ++k) {
        const S phi = S(pi_v) * S(k) / S(8);
        const DirectedLine<S> axis(Vec3<S>(S(0), -std::sin(phi), std::cos(phi)));
        const auto mom = lamina_moment(L, apply(frame, axis), q);
        const S limit = 10 * (q.rel_tol * out.weight + mom.abs_error);
        if (!(std::abs(mom.value) <= limit))
            throw BalanceCheckFailed(
                "lamina_centroid: residual moment about a line through the "
                "computed point exceeds tolerance");
    }
    return out;
}

// Mass: integral of density * cosh(dist(X, centroid)) dA. Uses the identity
// cosh(dist(X, C)) = -<X, C>.
template <class S>
QuadResult<S> lamina_mass(const Lamina<S>& L,
                          const QuadratureConfig<S>& q = QuadratureConfig<S>{}) {
    const CentroidResult<S> c = lamina_centroid(L, q);
    const PolarChart<S> ch = make_chart(L.region());
    const Vec3<S> cv = c.location.vec();
    return integrate_polar<S>(q, ch.breaks, ch.rho_max, [&](S rho, S theta) {
        const HPoint<S> x = ch.world_point(rho, theta);
        return density_at(L.density(), x) * (-mdot(cv, x.vec()));
    });
}

// Diagnostic bounds sampled over chart nodes: peak density and peak
// cosh-distance to a reference point. Reported alongside quadrature error
// estimates; not used in any computation.
template <class S>
struct LaminaBounds {
    S max_density;
    S max_cosh_dist;
};

template <class S>
LaminaBounds<S> lamina_bounds(const Lamina<S>& L, const HPoint<S>& ref) {
    const PolarChart<S> ch = make_chart(L.region());
    LaminaBounds<S> out{S(0), S(1)};
    for (std::size_t k = 0; k + 1 < ch.breaks.size(); ++k) {
        for (int i = 0; i <= 16; ++i) {
            const S th = ch.breaks[k] +
                         (ch.breaks[k + 1] - ch.breaks[k]) * S(i) / S(16);
            const S top = ch.rho_max(th);
            for (int j = 0; j <= 8; ++j) {
                const HPoint<S> x = ch.world_point(top * S(j) / S(8), th);
                out.max_density = std::max(out.max_density,
                                           density_at(L.density(), x));
                out.max_cosh_dist =
                    std::max(out.max_cosh_dist, std::cosh(dist(x, ref)));
            }
        }
    }
    return out;
}

// A point-mass system sampled from a mesh of cells of diameter below delta,
// tagged with the mesh size and the accounted area.
template <class S>
struct Transversal {
    PointMassSystem<S> system;
    S delta;
    S total_area;
};

namespace detail {

// Exact area of a chart cell clipped to the region: integrate the radial
// antiderivative cosh(top) - cosh(bottom) over the cell's angle range.
template <class S, class RhoMax>
S clipped_cell_area(RhoMax& rho_max, S r_in, S r_out, S t0, S t1) {
    const S bound = (std::cosh(r_out) - std::cosh(r_in)) * (t1 - t0);
    return S(adaptive_simpson(
        [&](double th) -> double {
            const S top = std::min(r_out, rho_max(S(th)));
            return top > r_in ? double(std::cosh(top) - std::cosh(r_in)) : 0.0;
        },
        double(t0), double(t1), std::max(1e-13 * double(bound), 1e-300)));
}

// Deterministic per-cell variates.
template <class S>
std::pair<S, S> cell_variates(std::uint64_t seed, std::uint64_t ring,
                              std::uint64_t slot) {
    std::uint64_t st =
        seed + 0x9E3779B97F4A7C15ull * (ring * 0x100000001B3ull + slot + 1);
    const S u1 = S(unit_double(st));
    const S u2 = S(unit_double(st));
    return {u1, u2};
}

}  // namespace detail

// Sample the lamina on a polar mesh with cells of diameter < delta: radial
// step and outer-arc step both at most 0.49 * delta. Cell areas are computed
// exactly (clipped to the region); each kept cell contributes one point mass
// with weight density(X) * area(cell). Sample points are drawn from the
// central band of each cell by a counter-based generator, so a given
// (seed, delta) always produces the same transversal. Cells whose clipped
// area falls below 1e-12 are merged into the next kept cell.
template <class S>
Transversal<S> delta_transversal(const Lamina<S>& L, S delta,
                                 std::uint64_t seed,
                                 long cell_cap = 10'000'000L) {
    if (!(delta > S(0)))
        throw InvalidRegion("delta_transversal: delta must be positive");
    const PolarChart<S> ch = make_chart(L.region());
    const S t_lo = ch.breaks.front(), t_hi = ch.breaks.back();
    const S W = t_hi - t_lo;
    const S R = max_chart_radius(ch);

    Transversal<S> out;
    out.delta = delta;
    out.total_area = S(0);

    // Pick a point inside the clipped cell, preferring the central band.
    auto sample_point = [&](S r_in, S r_out, S t0, S t1, std::uint64_t ring,
                            std::uint64_t slot) -> HPoint<S> {
        const auto [u1, u2] = detail::cell_variates<S>(seed, ring, slot);
        // Scan candidate angles strictly inside the slot and keep those with
        // radial room; clipped cells may be empty at some angles.
        constexpr int kScan = 33;
        S cand[kScan];
        int found = 0;
        for (int i = 0; i < kScan; ++i) {
            const S th = t0 + (t1 - t0) * (S(i) + S(0.5)) / S(kScan);
            if (ch.rho_max(th) > r_in + S(1e-12)) cand[found++] = th;
        }
        const S theta = (found > 0)
                            ? cand[std::min(found - 1, int(u1 * S(found)))]
                            : (t0 + t1) / 2;
        const S top = std::min(r_out, ch.rho_max(theta));
        const S rho = r_in + (S(0.35) + S(0.30) * u2) * std::max(top - r_in, S(0));
        return ch.world_point(rho, theta);
    };

    auto emit = [&](S cell_area, S r_in, S r_out, S t0, S t1,
                    std::uint64_t ring, std::uint64_t slot, S& pending) {
        if (cell_area < S(1e-12)) {
            pending += cell_area;
            return;
        }
        const HPoint<S> x = sample_point(r_in, r_out, t0, t1, ring, slot);
        const S lam = density_at(L.density(), x);
        const S carried = cell_area + pending;
        if (!(lam > S(0))) {
            // The density vanishes at the drawn point; fold the cell into a
            // neighbor instead of emitting a zero weight.
            pending = carried;
            return;
        }
        pending = S(0);
        out.system.push_back(PointMass<S>{x, lam * carried});
        out.total_area += carried;
    };

    S pending = S(0);
    if (delta >= region_diameter(L.region())) {
        const S a = detail::clipped_cell_area(ch.rho_max, S(0), R, t_lo, t_hi);
        emit(a, S(0), R, t_lo, t_hi, 0, 0, pending);
    } else {
        const S h = S(0.49) * delta;
        const long rings = std::max(1L, long(std::ceil(R / h)));
        long cells = 0;
        for (long k = 0; k < rings; ++k) {
            const S r_out = R * S(k + 1) / S(rings);
            cells += std::max(1L, long(std::ceil(W * std::sinh(r_out) / h)));
            if (cells > cell_cap)
                throw MeshTooFine(
                    "delta_transversal: cell count exceeds the configured cap");
        }
        for (long k = 0; k < rings; ++k) {
            const S r_in = R * S(k) / S(rings);
            const S r_out = R * S(k + 1) / S(rings);
            const long slots =
                std::max(1L, long(std::ceil(W * std::sinh(r_out) / h)));
            for (long j = 0; j < slots; ++j) {
                const S t0 = t_lo + W * S(j) / S(slots);
                const S t1 = t_lo + W * S(j + 1) / S(slots);
                const S a = detail::clipped_cell_area(ch.rho_max, r_in, r_out,
                                                      t0, t1);
                emit(a, r_in, r_out, t0, t1, std::uint64_t(k),
                     std::uint64_t(j), pending);
            }
        }
    }

    if (pending > S(1e-12) && !out.system.empty()) {
        // Residual sliver area tacked onto the last kept cell.
        auto& last = out.system.back();
        last = PointMass<S>{last.location,
                            last.weight + density_at(L.density(), last.location) *
                                              pending};
        out.total_area += pending;
    }
    if (out.system.empty())
        throw InvalidRegion(
            "delta_transversal: no cell with positive area and density");
    return out;
}

// Split the lamina by the given tiling, compute each part's balance point,
// and fold them with the two-mass combination rule in list order. The tiling
// is checked: pairwise overlaps must be negligible and the part areas must
// add up to the whole.
template <class S>
PointMass<S> decompose_and_combine(
    const Lamina<S>& L, const std::vector<Region<S>>& parts,
    const QuadratureConfig<S>& q = QuadratureConfig<S>{}) {
    if (parts.empty())
        throw BadDecomposition("decompose_and_combine: empty part list");

    // Pairwise overlap estimate: integrate part j's indicator over part i.
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const PolarChart<S> ci = make_chart(parts[i]);
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            auto indicator = [&](S rho, S theta) {
                return contains(parts[j], ci.world_point(rho, theta)) ? S(1)
                                                                      : S(0);
            };
            S overlap = S(0);
            for (std::size_t k = 0; k + 1 < ci.breaks.size(); ++k)
                overlap += detail::polar_panel<S>(q, ci.breaks[k],
                                                  ci.breaks[k + 1], ci.rho_max,
                                                  indicator);
            if (overlap > S(1e-9))
                throw BadDecomposition(
                    "decompose_and_combine: parts overlap with positive area");
        }
    }

    const S whole = area(L.region(), q).value;
    S sum = S(0);
    for (const auto& p : parts) sum += area(p, q).value;
    if (std::abs(sum - whole) > std::max(S(1e-8), S(1e-8) * whole))
        throw BadDecomposition(
            "decompose_and_combine: part areas do not add up to the region "
            "area");

    PointMass<S> acc{HPoint<S>::origin(), S(1)};
    bool first = true;
    for (const auto& p : parts) {
        const CentroidResult<S> c = lamina_centroid(Lamina<S>(p, L.density()), q);
        const PointMass<S> pm{c.location, c.weight};
        acc = first ? pm : combine(acc, pm);
        first = false;
    }
    return acc;
}

}  // namespace hypermass
