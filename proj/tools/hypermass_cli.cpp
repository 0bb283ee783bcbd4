#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "hypermass/hypermass.hpp"
#include "hypermass/io/report.hpp"
#include "hypermass/io/scene.hpp"

namespace hm = hypermass;
using hm::io::fmt;
using hm::io::Measured;
using hm::io::Report;

namespace {

struct Options {
    double tol = 0.0;  // 0 keeps the scene's (or default) tolerance
    bool sequential = false;
    bool json = false;
    std::string model_out;  // empty keeps the scene's model
};

// Diff column of validation tables: relative against the closed form, or the
// raw magnitude when the closed form is zero.
double table_diff(double closed, double quad) {
    if (closed == 0.0) return std::abs(quad);
    return std::abs(closed - quad) / std::abs(closed);
}

double rel_diff(double closed, double quad) {
    const double scale = std::max(std::abs(closed), std::abs(quad));
    return scale == 0.0 ? 0.0 : std::abs(closed - quad) / scale;
}

hm::QuadratureConfig<double> quad_of(const hm::io::Scene& sc, const Options& o) {
    auto q = sc.quad;
    if (o.tol > 0.0) q.rel_tol = o.tol;
    q.sequential = o.sequential;
    try {
        q.validate();
    } catch (const hm::Error& e) {
        throw hm::SceneError(std::string("options: ") + e.what());
    }
    return q;
}

hm::Model out_model(hm::Model scene_model, const Options& o) {
    if (o.model_out.empty()) return scene_model;
    try {
        return hm::model_from_string(o.model_out);
    } catch (const hm::Error& e) {
        throw hm::SceneError(std::string("options: ") + e.what());
    }
}

// Scene construction failures, including geometry validation, are reported
// as scene errors; numeric failures during a computation are not.
hm::io::Scene load(const std::string& path) {
    try {
        return hm::io::load_scene(path);
    } catch (const hm::SceneError&) {
        throw;
    } catch (const hm::Error& e) {
        throw hm::SceneError(std::string("scene: ") + e.what());
    }
}

// If the wedge window spans exactly 2 pi / n for a whole n, the closed form
// applies (the window's position is irrelevant by rotation invariance).
int wedge_sector_count(const hm::Wedge<double>& w) {
    const double window = w.theta1 - w.theta0;
    const double nr = 2.0 * hm::pi_v / window;
    const int n = static_cast<int>(std::lround(nr));
    if (n >= 1 && std::abs(nr - n) < 1e-9) return n;
    return 0;
}

void annotate_mass(Report& rep, const hm::Lamina<double>& L, double measured) {
    const auto* cd = std::get_if<hm::ConstantDensity<double>>(&L.density());
    if (!cd) return;
    double closed = 0.0;
    std::string label;
    if (const auto* d = std::get_if<hm::Disk<double>>(&L.region())) {
        closed = cd->value * hm::disk_mass(d->radius);
        label = "disk";
    } else if (const auto* w = std::get_if<hm::Wedge<double>>(&L.region())) {
        const int n = wedge_sector_count(*w);
        if (n == 0) return;
        closed = cd->value * hm::wedge_centroid(n, w->radius).mass;
        label = "wedge";
    } else if (const auto* p =
                   std::get_if<hm::RegularPolygon<double>>(&L.region())) {
        closed = cd->value * hm::ngon_mass(p->n, p->in_radius);
        label = "regular-polygon";
    } else {
        return;
    }
    rep.item("closed-form mass (" + label + ")", Measured{closed, 0.0});
    rep.item("closed-form mass rel-diff", rel_diff(closed, measured));
}

void annotate_centroid(Report& rep, const hm::Lamina<double>& L,
                       const hm::HPoint<double>& loc, double loc_err) {
    if (!std::holds_alternative<hm::ConstantDensity<double>>(L.density()))
        return;
    if (const auto* d = std::get_if<hm::Disk<double>>(&L.region())) {
        rep.item("closed-form centroid-offset (disk)",
                 Measured{hm::dist(loc, d->center), loc_err});
    } else if (const auto* w = std::get_if<hm::Wedge<double>>(&L.region())) {
        const int n = wedge_sector_count(*w);
        if (n == 0) return;
        const double closed = hm::wedge_centroid(n, w->radius).apex_distance;
        const double measured = hm::dist(loc, w->center);
        rep.item("closed-form apex-distance (wedge)", Measured{closed, 0.0});
        rep.item("closed-form apex-distance rel-diff",
                 rel_diff(closed, measured));
    }
}

void annotate_linset_mass(Report& rep, const hm::LinearSet<double>& ls,
                          double measured) {
    const auto* cd =
        std::get_if<hm::ConstantLineDensity<double>>(&ls.density());
    if (!cd || ls.support().size() != 1) return;
    const auto& iv = ls.support().front();
    const double closed = cd->value * hm::segment_mass(iv.hi - iv.lo);
    rep.item("closed-form mass (segment)", Measured{closed, 0.0});
    rep.item("closed-form mass rel-diff", rel_diff(closed, measured));
}

int cmd_centroid(const hm::io::Scene& sc, const std::string& name,
                 const Options& o, Report& rep) {
    const hm::Model om = out_model(sc.model, o);
    rep.item("model", hm::model_to_string(om));
    rep.item("target", name);
    const auto kind = hm::io::target_kind(sc, name);
    switch (kind) {
        case hm::io::TargetKind::system: {
            const auto& sys = sc.systems.at(name);
            const auto pm = hm::system_centroid(sys);
            rep.item("kind", std::string("point-mass system"));
            rep.item("centroid", hm::io::coords_in_model(pm.location, om));
            rep.item("centroid-error", 4e-16 * double(sys.size() + 1));
            rep.item("mass",
                     Measured{pm.weight, 4e-16 * double(sys.size()) * pm.weight});
            break;
        }
        case hm::io::TargetKind::lamina: {
            const auto& L = sc.laminae.at(name);
            const auto q = quad_of(sc, o);
            const auto c = hm::lamina_centroid(L, q);
            const double loc_err = c.abs_error / c.weight;
            rep.item("kind", std::string("lamina"));
            rep.item("centroid", hm::io::coords_in_model(c.location, om));
            rep.item("centroid-error", loc_err);
            rep.item("mass", Measured{c.weight, c.abs_error});
            rep.item("panels", double(c.panels));
            const auto frame = hm::transvection_from_origin(c.location);
            std::vector<Measured> res;
            for (int k = 0; k < 8; ++k) {
                const double phi = hm::pi_v * double(k) / 8.0;
                const hm::DirectedLine<double> axis(
                    hm::Vec3<double>(0.0, -std::sin(phi), std::cos(phi)));
                const auto mom = hm::lamina_moment(L, hm::apply(frame, axis), q);
                res.push_back({mom.value, mom.abs_error});
            }
            rep.item("balance-residuals", res);
            annotate_mass(rep, L, c.weight);
            annotate_centroid(rep, L, c.location, loc_err);
            break;
        }
        case hm::io::TargetKind::linear_set: {
            const auto& ls = sc.linear_sets.at(name);
            const double s = hm::linset_centroid(ls);
            const auto pm = hm::linset_point_mass(ls);
            rep.item("kind", std::string("linear set"));
            rep.item("centroid-arclength",
                     Measured{s, 1e-12 * (1.0 + std::abs(s))});
            rep.item("centroid", hm::io::coords_in_model(pm.location, om));
            rep.item("centroid-error", 1e-12);
            rep.item("mass", Measured{pm.weight, 1e-13 * pm.weight});
            annotate_linset_mass(rep, ls, pm.weight);
            break;
        }
    }
    return 0;
}

int cmd_moment(const hm::io::Scene& sc, const std::string& name,
               const std::string& line_name, const Options& o, Report& rep) {
    rep.item("model", hm::model_to_string(out_model(sc.model, o)));
    rep.item("target", name);
    rep.item("line", line_name);
    const auto kind = hm::io::target_kind(sc, name);
    const auto lit = sc.lines.find(line_name);
    if (lit == sc.lines.end())
        throw hm::UnknownName("no line named \"" + line_name + "\"");
    const auto& m = lit->second;
    switch (kind) {
        case hm::io::TargetKind::system: {
            const auto& sys = sc.systems.at(name);
            const double v = hm::system_moment(sys, m);
            double scale = 0.0;
            for (const auto& pm : sys)
                scale += pm.weight *
                         (std::abs(hm::signed_sinh_dist(m, pm.location)) + 1.0);
            rep.item("kind", std::string("point-mass system"));
            rep.item("moment", Measured{v, 1e-14 * scale});
            break;
        }
        case hm::io::TargetKind::lamina: {
            const auto& L = sc.laminae.at(name);
            const auto r = hm::lamina_moment(L, m, quad_of(sc, o));
            rep.item("kind", std::string("lamina"));
            rep.item("moment", Measured{r.value, r.abs_error});
            rep.item("panels", double(r.panels));
            break;
        }
        case hm::io::TargetKind::linear_set: {
            const auto& ls = sc.linear_sets.at(name);
            const double v = hm::linset_moment_about_line(ls, m);
            const double mass = hm::linset_mass(ls);
            rep.item("kind", std::string("linear set"));
            rep.item("moment", Measured{v, 1e-13 * (std::abs(v) + mass)});
            break;
        }
    }
    return 0;
}

int cmd_mass(const hm::io::Scene& sc, const std::string& name,
             const Options& o, Report& rep) {
    rep.item("model", hm::model_to_string(out_model(sc.model, o)));
    rep.item("target", name);
    const auto kind = hm::io::target_kind(sc, name);
    switch (kind) {
        case hm::io::TargetKind::system: {
            const auto& sys = sc.systems.at(name);
            const auto pm = hm::system_centroid(sys);
            rep.item("kind", std::string("point-mass system"));
            rep.item("mass",
                     Measured{pm.weight, 4e-16 * double(sys.size()) * pm.weight});
            break;
        }
        case hm::io::TargetKind::lamina: {
            const auto& L = sc.laminae.at(name);
            const auto r = hm::lamina_mass(L, quad_of(sc, o));
            rep.item("kind", std::string("lamina"));
            rep.item("mass", Measured{r.value, r.abs_error});
            rep.item("panels", double(r.panels));
            annotate_mass(rep, L, r.value);
            break;
        }
        case hm::io::TargetKind::linear_set: {
            const auto& ls = sc.linear_sets.at(name);
            const double v = hm::linset_mass(ls);
            rep.item("kind", std::string("linear set"));
            rep.item("mass", Measured{v, 1e-13 * v});
            annotate_linset_mass(rep, ls, v);
            break;
        }
    }
    return 0;
}

// -- validate ----------------------------------------------------------------

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        const auto part = s.substr(pos, comma == std::string::npos
                                            ? std::string::npos
                                            : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw hm::SceneError("options: cannot parse number \"" + part + "\"");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw hm::SceneError("options: empty number list");
    return out;
}

std::vector<std::pair<int, double>> parse_pairs(const std::string& s) {
    std::vector<std::pair<int, double>> out;
    for (std::size_t pos = 0; pos <= s.size();) {
        const auto comma = s.find(',', pos);
        const auto part = s.substr(pos, comma == std::string::npos
                                            ? std::string::npos
                                            : comma - pos);
        const auto colon = part.find(':');
        if (colon == std::string::npos)
            throw hm::SceneError("options: grid entries look like n:r, got \"" +
                                 part + "\"");
        try {
            out.emplace_back(std::stoi(part.substr(0, colon)),
                             std::stod(part.substr(colon + 1)));
        } catch (const std::exception&) {
            throw hm::SceneError("options: cannot parse grid entry \"" + part +
                                 "\"");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw hm::SceneError("options: empty grid");
    return out;
}

// Deterministic triangle sampler for the triangle validation family.
hm::GeodesicTriangle<double> sample_triangle(std::uint64_t& state) {
    for (;;) {
        hm::HPoint<double> v[3] = {hm::HPoint<double>::origin(),
                                   hm::HPoint<double>::origin(),
                                   hm::HPoint<double>::origin()};
        for (auto& p : v) {
            const double rho = 0.2 + 1.1 * hm::unit_double(state);
            const double theta =
                2.0 * hm::pi_v * hm::unit_double(state) - hm::pi_v;
            p = hm::from_gauss_polar(rho, theta);
        }
        if (hm::triangle_area(v[0], v[1], v[2]) > 0.05)
            return hm::GeodesicTriangle<double>(v[0], v[1], v[2]);
    }
}

int cmd_validate(const std::string& family, const std::string& grid,
                 const Options& o, Report& rep) {
    hm::QuadratureConfig<double> q;
    if (o.tol > 0.0) q.rel_tol = o.tol;
    q.sequential = o.sequential;
    try {
        q.validate();
    } catch (const hm::Error& e) {
        throw hm::SceneError(std::string("options: ") + e.what());
    }

    Report::Table t;
    t.header = {"case", "quantity", "closed-form", "quadrature", "quad-error",
                "diff"};
    bool ok = true;
    const auto push = [&](const std::string& cs, const std::string& qty,
                          double closed, double quad, double qerr) {
        const double d = table_diff(closed, quad);
        ok = ok && d <= 1e-6;
        t.rows.push_back({cs, qty, fmt(closed), fmt(quad), fmt(qerr), fmt(d)});
    };
    const auto origin = hm::HPoint<double>::origin();
    const hm::Density<double> unit = hm::ConstantDensity<double>(1.0);

    if (family == "disk") {
        const auto radii =
            grid.empty() ? std::vector<double>{0.5, 1.0, 2.0} : parse_doubles(grid);
        for (const double r : radii) {
            const std::string cs = "disk r=" + fmt(r);
            const hm::Lamina<double> L(hm::Disk<double>(origin, r), unit);
            const auto m = hm::lamina_mass(L, q);
            push(cs, "mass", hm::disk_mass(r), m.value, m.abs_error);
            const auto a = hm::area(hm::Region<double>(hm::Disk<double>(origin, r)), q);
            push(cs, "area", hm::disk_area(r), a.value, a.abs_error);
        }
    } else if (family == "wedge") {
        const auto combos =
            grid.empty()
                ? std::vector<std::pair<int, double>>{{2, 0.5}, {2, 1.0},
                                                      {3, 0.5}, {3, 1.0},
                                                      {4, 0.5}, {4, 1.0},
                                                      {6, 0.5}, {6, 1.0}}
                : parse_pairs(grid);
        for (const auto& [n, r] : combos) {
            const std::string cs = "wedge n=" + std::to_string(n) + " r=" + fmt(r);
            const auto w = hm::wedge_centroid(n, r);
            const hm::Lamina<double> L(hm::Wedge<double>::symmetric(origin, r, n),
                                       unit);
            const auto c = hm::lamina_centroid(L, q);
            push(cs, "apex-distance", w.apex_distance,
                 hm::dist(c.location, origin), c.abs_error / c.weight);
            push(cs, "mass", w.mass, c.weight, c.abs_error);
        }
    } else if (family == "ngon") {
        const auto combos =
            grid.empty()
                ? std::vector<std::pair<int, double>>{{3, 0.5}, {4, 0.5},
                                                      {6, 0.5}, {12, 0.5},
                                                      {6, 1.0}, {12, 1.0}}
                : parse_pairs(grid);
        for (const auto& [n, r] : combos) {
            const std::string cs = "ngon n=" + std::to_string(n) + " r=" + fmt(r);
            const hm::RegularPolygon<double> poly(origin, n, r);
            const hm::Lamina<double> L(poly, unit);
            const auto m = hm::lamina_mass(L, q);
            push(cs, "mass", hm::ngon_mass(n, r), m.value, m.abs_error);
            const double beta =
                std::acos(std::cosh(r) * std::sin(hm::pi_v / n));
            const double closed_area = (n - 2) * hm::pi_v - 2.0 * n * beta;
            const auto a = hm::area(hm::Region<double>(poly), q);
            push(cs, "area", closed_area, a.value, a.abs_error);
        }
    } else if (family == "segment") {
        const auto lens =
            grid.empty() ? std::vector<double>{0.1, 1.0, 5.0} : parse_doubles(grid);
        const auto carrier =
            hm::line_through(origin, hm::from_gauss_polar(0.5, 0.0));
        for (const double d : lens) {
            const std::string cs = "segment d=" + fmt(d);
            const hm::LinearSet<double> ls(
                carrier, {{0.0, d}}, hm::ConstantLineDensity<double>(1.0));
            const double mass = hm::linset_mass(ls);
            push(cs, "mass", hm::segment_mass(d), mass, 1e-15 * (1.0 + mass));
            push(cs, "centroid-arclength", d / 2.0, hm::linset_centroid(ls),
                 1e-13);
        }
    } else if (family == "triangle") {
        int count = 20;
        if (!grid.empty()) {
            try {
                count = std::stoi(grid);
            } catch (const std::exception&) {
                throw hm::SceneError("options: triangle grid is a count, got \"" +
                                     grid + "\"");
            }
            if (count < 1)
                throw hm::SceneError("options: triangle count must be positive");
        }
        std::uint64_t state = 0x00A5EED5EED00ULL;
        for (int k = 0; k < count; ++k) {
            const auto tri = sample_triangle(state);
            const std::string cs = "triangle " + std::to_string(k);
            const hm::Lamina<double> L(tri, unit);
            const auto c = hm::lamina_centroid(L, q);
            const auto mp = hm::median_point(tri);
            push(cs, "centroid-offset", 0.0, hm::dist(c.location, mp),
                 c.abs_error / c.weight);
            const auto m = hm::lamina_mass(L, q);
            push(cs, "mass", hm::triangle_mass_formula(tri), m.value,
                 m.abs_error);
        }
    } else {
        throw hm::SceneError("validate: unknown family \"" + family +
                             "\" (expected disk, wedge, triangle, ngon, "
                             "or segment)");
    }

    rep.item("family", family);
    rep.item("threshold", 1e-6);
    rep.item("results", std::move(t));
    rep.item("status", std::string(ok ? "pass" : "fail"));
    return ok ? 0 : 5;
}

int cmd_converge(const hm::io::Scene& sc, const std::string& name,
                 const std::string& deltas_str, std::uint64_t seed,
                 const Options& o, Report& rep) {
    const auto deltas = parse_doubles(deltas_str);
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0.0))
            throw hm::SceneError("converge: deltas must be positive");
        if (i > 0 && !(deltas[i] < deltas[i - 1]))
            throw hm::SceneError("converge: deltas must be strictly decreasing");
    }
    const auto kind = hm::io::target_kind(sc, name);
    if (kind != hm::io::TargetKind::lamina)
        throw hm::SceneError("converge: target \"" + name + "\" is not a lamina");
    const auto& L = sc.laminae.at(name);
    const auto q = quad_of(sc, o);
    const auto ref = hm::lamina_centroid(L, q);

    rep.item("model", hm::model_to_string(out_model(sc.model, o)));
    rep.item("target", name);
    rep.item("seed", std::to_string(seed));
    rep.item("reference-mass", Measured{ref.weight, ref.abs_error});

    Report::Csv csv;
    csv.header = {"delta", "centroid_error", "mass_error"};
    for (const double d : deltas) {
        const auto tv = hm::delta_transversal(L, d, seed);
        const auto pm = hm::system_centroid(tv.system);
        csv.rows.push_back({d, hm::dist(pm.location, ref.location),
                            std::abs(pm.weight - ref.weight)});
    }
    rep.item("rows", std::move(csv));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);

    CLI::App app{"masses, balance points, and moments in the hyperbolic plane"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--tol", o.tol,
                   "override the quadrature relative tolerance");
    app.add_flag("--sequential", o.sequential,
                 "single-threaded quadrature, byte-reproducible output");
    app.add_flag("--json", o.json, "emit the report as JSON");
    app.add_option("--model-out", o.model_out,
                   "model for printed coordinates (hyperboloid, poincare, "
                   "half-plane, gauss-polar)");

    std::string scene_path, name, line_name, family, grid, deltas;
    std::uint64_t seed = 1;

    auto* c_cen =
        app.add_subcommand("centroid", "balance point and mass of a named object");
    c_cen->add_option("scene", scene_path, "scene file")->required();
    c_cen->add_option("name", name, "target name")->required();
    c_cen->fallthrough();

    auto* c_mom =
        app.add_subcommand("moment", "signed moment of a named object about a line");
    c_mom->add_option("scene", scene_path, "scene file")->required();
    c_mom->add_option("name", name, "target name")->required();
    c_mom->add_option("line", line_name, "line name")->required();
    c_mom->fallthrough();

    auto* c_mass = app.add_subcommand("mass", "mass of a named object");
    c_mass->add_option("scene", scene_path, "scene file")->required();
    c_mass->add_option("name", name, "target name")->required();
    c_mass->fallthrough();

    auto* c_val =
        app.add_subcommand("validate", "closed forms against quadrature");
    c_val->add_option("family", family,
                      "disk | wedge | triangle | ngon | segment")
        ->required();
    c_val->add_option("--grid", grid,
                      "override the parameter grid (comma list; n:r pairs "
                      "for wedge and ngon; a count for triangle)");
    c_val->fallthrough();

    auto* c_con = app.add_subcommand(
        "converge", "transversal discretization errors for a lamina");
    c_con->add_option("scene", scene_path, "scene file")->required();
    c_con->add_option("name", name, "lamina name")->required();
    c_con->add_option("--deltas", deltas, "comma list, strictly decreasing")
        ->required();
    c_con->add_option("--seed", seed, "sample placement seed");
    c_con->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int c = app.exit(e);
        return c == 0 ? 0 : 2;
    }

    std::string echo = "hypermass";
    for (int i = 1; i < argc; ++i) {
        echo += ' ';
        echo += argv[i];
    }

    Report rep;
    rep.command(echo);

    const auto emit = [&](int code) {
        rep.exit_status(code);
        std::cout << (o.json ? rep.json_text() : rep.text());
        return code;
    };

    try {
        if (c_val->parsed()) return emit(cmd_validate(family, grid, o, rep));
        const hm::io::Scene sc = load(scene_path);
        if (c_cen->parsed()) return emit(cmd_centroid(sc, name, o, rep));
        if (c_mom->parsed())
            return emit(cmd_moment(sc, name, line_name, o, rep));
        if (c_mass->parsed()) return emit(cmd_mass(sc, name, o, rep));
        if (c_con->parsed())
            return emit(cmd_converge(sc, name, deltas, seed, o, rep));
        std::cerr << "error: no command given\n";
        return 2;
    } catch (const hm::SceneError& e) {
        std::cerr << "error: " << e.what() << '\n';
        rep.item("error", std::string(e.what()));
        return emit(2);
    } catch (const hm::UnknownName& e) {
        std::cerr << "error: " << e.what() << '\n';
        rep.item("error", std::string(e.what()));
        return emit(3);
    } catch (const hm::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        rep.item("error", std::string(e.what()));
        return emit(4);
    }
}
