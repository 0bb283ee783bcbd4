#include "hypermass/io/scene.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace hypermass::io {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw SceneError("scene: " + msg); }

void check_keys(const json& o, const std::string& ctx,
                std::initializer_list<const char*> allowed) {
    for (auto it = o.begin(); it != o.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) fail(ctx + ": unknown key \"" + it.key() + "\"");
    }
}

const json& need(const json& o, const char* key, const std::string& ctx) {
    const auto it = o.find(key);
    if (it == o.end()) fail(ctx + ": missing key \"" + key + "\"");
    return *it;
}

double num(const json& v, const std::string& ctx) {
    if (!v.is_number()) fail(ctx + ": expected a number");
    return v.get<double>();
}

int integer(const json& v, const std::string& ctx) {
    if (!v.is_number_integer()) fail(ctx + ": expected an integer");
    return v.get<int>();
}

// Builds a Scene from parsed JSON. Maps are filled in dependency order
// (points, lines, densities, then the composites), so later sections can
// refer to earlier ones by name.
struct Builder {
    Scene s;

    HPoint<double> point(const json& v, const std::string& ctx) {
        if (v.is_string()) {
            const auto name = v.get<std::string>();
            const auto it = s.points.find(name);
            if (it == s.points.end())
                fail(ctx + ": unknown point \"" + name + "\"");
            return it->second;
        }
        if (!v.is_array())
            fail(ctx + ": expected a point name or a coordinate array");
        std::vector<double> c;
        c.reserve(v.size());
        for (const auto& e : v) c.push_back(num(e, ctx + " coordinate"));
        return point_in_model(s.model, c);
    }

    DirectedLine<double> line(const json& v, const std::string& ctx) {
        if (v.is_string()) {
            const auto name = v.get<std::string>();
            const auto it = s.lines.find(name);
            if (it == s.lines.end())
                fail(ctx + ": unknown line \"" + name + "\"");
            return it->second;
        }
        if (!v.is_object())
            fail(ctx + ": expected a line name or a line object");
        check_keys(v, ctx, {"through", "reverse"});
        const json& th = need(v, "through", ctx);
        if (!th.is_array() || th.size() != 2)
            fail(ctx + ": \"through\" takes exactly two points");
        DirectedLine<double> m = line_through(point(th[0], ctx + " first point"),
                                              point(th[1], ctx + " second point"));
        if (v.contains("reverse")) {
            if (!v["reverse"].is_boolean())
                fail(ctx + ": \"reverse\" must be a boolean");
            if (v["reverse"].get<bool>()) m = m.reverse();
        }
        return m;
    }

    Density<double> density(const json& v, const std::string& ctx) {
        if (v.is_number()) return ConstantDensity<double>(num(v, ctx));
        if (v.is_string()) {
            const auto name = v.get<std::string>();
            const auto it = s.densities.find(name);
            if (it == s.densities.end())
                fail(ctx + ": unknown density \"" + name + "\"");
            return it->second;
        }
        if (!v.is_object())
            fail(ctx + ": expected a number, a density name, or a density object");
        const json& t = need(v, "type", ctx);
        if (!t.is_string()) fail(ctx + ": \"type\" must be a string");
        const auto type = t.get<std::string>();
        if (type == "constant") {
            check_keys(v, ctx, {"type", "value"});
            return ConstantDensity<double>(num(need(v, "value", ctx), ctx));
        }
        if (type == "radial-affine") {
            check_keys(v, ctx, {"type", "a", "b", "center"});
            return RadialAffineDensity<double>{
                num(need(v, "a", ctx), ctx + " \"a\""),
                num(need(v, "b", ctx), ctx + " \"b\""),
                point(need(v, "center", ctx), ctx + " center")};
        }
        fail(ctx + ": unknown density type \"" + type + "\"");
    }

    Region<double> region(const json& v, const std::string& ctx) {
        if (!v.is_object()) fail(ctx + ": expected a region object");
        const json& t = need(v, "type", ctx);
        if (!t.is_string()) fail(ctx + ": \"type\" must be a string");
        const auto type = t.get<std::string>();
        if (type == "triangle") {
            check_keys(v, ctx, {"type", "vertices"});
            const json& vs = need(v, "vertices", ctx);
            if (!vs.is_array() || vs.size() != 3)
                fail(ctx + ": \"vertices\" takes exactly three points");
            return GeodesicTriangle<double>(point(vs[0], ctx + " vertex"),
                                            point(vs[1], ctx + " vertex"),
                                            point(vs[2], ctx + " vertex"));
        }
        if (type == "disk") {
            check_keys(v, ctx, {"type", "center", "radius"});
            return Disk<double>(point(need(v, "center", ctx), ctx + " center"),
                                num(need(v, "radius", ctx), ctx + " radius"));
        }
        if (type == "wedge") {
            check_keys(v, ctx, {"type", "center", "radius", "theta0", "theta1"});
            return Wedge<double>(point(need(v, "center", ctx), ctx + " center"),
                                 num(need(v, "radius", ctx), ctx + " radius"),
                                 num(need(v, "theta0", ctx), ctx + " theta0"),
                                 num(need(v, "theta1", ctx), ctx + " theta1"));
        }
        if (type == "regular-polygon") {
            check_keys(v, ctx, {"type", "center", "sides", "in_radius", "phase"});
            const double phase =
                v.contains("phase") ? num(v["phase"], ctx + " phase") : 0.0;
            return RegularPolygon<double>(
                point(need(v, "center", ctx), ctx + " center"),
                integer(need(v, "sides", ctx), ctx + " sides"),
                num(need(v, "in_radius", ctx), ctx + " in_radius"), phase);
        }
        if (type == "polar-graph") {
            check_keys(v, ctx, {"type", "samples", "phase"});
            const json& ss = need(v, "samples", ctx);
            if (!ss.is_array()) fail(ctx + ": \"samples\" must be an array");
            std::vector<double> samples;
            samples.reserve(ss.size());
            for (const auto& e : ss) samples.push_back(num(e, ctx + " sample"));
            const double phase =
                v.contains("phase") ? num(v["phase"], ctx + " phase") : 0.0;
            return PolarGraph<double>(std::move(samples), phase);
        }
        fail(ctx + ": unknown region type \"" + type + "\"");
    }

    LineDensity<double> line_density(const json& v, const std::string& ctx) {
        if (v.is_number())
            return ConstantLineDensity<double>(num(v, ctx));
        if (v.is_object()) {
            check_keys(v, ctx, {"type", "value"});
            const json& t = need(v, "type", ctx);
            if (!t.is_string() || t.get<std::string>() != "constant")
                fail(ctx + ": only constant line densities can be written in a scene");
            return ConstantLineDensity<double>(num(need(v, "value", ctx), ctx));
        }
        fail(ctx + ": expected a number or a constant density object");
    }
};

std::string checked_name(const json::const_iterator& it, const std::string& ctx) {
    if (it.key().empty()) fail(ctx + ": names must be non-empty");
    return it.key();
}

}  // namespace

TargetKind target_kind(const Scene& s, const std::string& name) {
    if (s.systems.count(name)) return TargetKind::system;
    if (s.laminae.count(name)) return TargetKind::lamina;
    if (s.linear_sets.count(name)) return TargetKind::linear_set;
    throw UnknownName("no point-mass system, lamina, or linear set named \"" +
                      name + "\"");
}

HPoint<double> point_in_model(Model m, const std::vector<double>& c) {
    if (m == Model::hyperboloid) {
        if (c.size() != 3)
            throw SceneError("scene: hyperboloid coordinates take three numbers");
        return HPoint<double>(c[0], c[1], c[2]);
    }
    if (c.size() != 2)
        throw SceneError("scene: " + model_to_string(m) +
                         " coordinates take two numbers");
    switch (m) {
        case Model::poincare:
            return from_disk(c[0], c[1]);
        case Model::half_plane:
            return from_half_plane(c[0], c[1]);
        default:
            return from_gauss_polar(c[0], c[1]);
    }
}

std::vector<double> coords_in_model(const HPoint<double>& p, Model m) {
    switch (m) {
        case Model::hyperboloid:
            return {p.t(), p.u(), p.v()};
        case Model::poincare: {
            const auto d = to_disk(p);
            return {d.x, d.y};
        }
        case Model::half_plane: {
            const auto h = to_half_plane(p);
            return {h.x, h.y};
        }
        default: {
            const auto g = to_gauss_polar(p);
            return {g.rho, g.theta};
        }
    }
}

Scene parse_scene(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string("JSON parse failed: ") + e.what());
    }
    if (!root.is_object()) fail("top level must be an object");
    check_keys(root, "scene",
               {"model", "quadrature", "points", "lines", "densities",
                "systems", "laminae", "linear_sets"});

    Builder b;

    const json& mt = need(root, "model", "scene");
    if (!mt.is_string()) fail("\"model\" must be a string");
    try {
        b.s.model = model_from_string(mt.get<std::string>());
    } catch (const Error& e) {
        fail(e.what());
    }

    if (root.contains("quadrature")) {
        const json& q = root["quadrature"];
        if (!q.is_object()) fail("\"quadrature\" must be an object");
        check_keys(q, "quadrature",
                   {"rel_tol", "radial_order", "angular_order", "max_depth"});
        if (q.contains("rel_tol"))
            b.s.quad.rel_tol = num(q["rel_tol"], "quadrature rel_tol");
        if (q.contains("radial_order"))
            b.s.quad.radial_order = integer(q["radial_order"], "quadrature radial_order");
        if (q.contains("angular_order"))
            b.s.quad.angular_order =
                integer(q["angular_order"], "quadrature angular_order");
        if (q.contains("max_depth"))
            b.s.quad.max_depth = integer(q["max_depth"], "quadrature max_depth");
        b.s.quad.validate();
    }

    if (root.contains("points")) {
        const json& ps = root["points"];
        if (!ps.is_object()) fail("\"points\" must be an object");
        for (auto it = ps.begin(); it != ps.end(); ++it) {
            const auto name = checked_name(it, "points");
            if (!it->is_array())
                fail("point \"" + name + "\": expected a coordinate array");
            b.s.points.emplace(name, b.point(*it, "point \"" + name + "\""));
        }
    }

    if (root.contains("lines")) {
        const json& ls = root["lines"];
        if (!ls.is_object()) fail("\"lines\" must be an object");
        for (auto it = ls.begin(); it != ls.end(); ++it) {
            const auto name = checked_name(it, "lines");
            b.s.lines.emplace(name, b.line(*it, "line \"" + name + "\""));
        }
    }

    if (root.contains("densities")) {
        const json& ds = root["densities"];
        if (!ds.is_object()) fail("\"densities\" must be an object");
        for (auto it = ds.begin(); it != ds.end(); ++it) {
            const auto name = checked_name(it, "densities");
            b.s.densities.emplace(name,
                                  b.density(*it, "density \"" + name + "\""));
        }
    }

    auto claim_target = [&](const std::string& name, const std::string& ctx) {
        if (b.s.systems.count(name) || b.s.laminae.count(name) ||
            b.s.linear_sets.count(name))
            fail(ctx + " \"" + name +
                 "\": target names must be unique across systems, laminae, "
                 "and linear sets");
    };

    if (root.contains("systems")) {
        const json& ss = root["systems"];
        if (!ss.is_object()) fail("\"systems\" must be an object");
        for (auto it = ss.begin(); it != ss.end(); ++it) {
            const auto name = checked_name(it, "systems");
            claim_target(name, "system");
            const std::string ctx = "system \"" + name + "\"";
            if (!it->is_array() || it->empty())
                fail(ctx + ": expected a non-empty array of point masses");
            PointMassSystem<double> sys;
            for (const auto& e : *it) {
                if (!e.is_object()) fail(ctx + ": each entry is an object");
                check_keys(e, ctx, {"at", "weight"});
                sys.emplace_back(b.point(need(e, "at", ctx), ctx + " \"at\""),
                                 num(need(e, "weight", ctx), ctx + " weight"));
            }
            b.s.systems.emplace(name, std::move(sys));
        }
    }

    if (root.contains("laminae")) {
        const json& ls = root["laminae"];
        if (!ls.is_object()) fail("\"laminae\" must be an object");
        for (auto it = ls.begin(); it != ls.end(); ++it) {
            const auto name = checked_name(it, "laminae");
            claim_target(name, "lamina");
            const std::string ctx = "lamina \"" + name + "\"";
            if (!it->is_object()) fail(ctx + ": expected an object");
            check_keys(*it, ctx, {"region", "density"});
            b.s.laminae.emplace(
                name, Lamina<double>(b.region(need(*it, "region", ctx), ctx),
                                     b.density(need(*it, "density", ctx), ctx)));
        }
    }

    if (root.contains("linear_sets")) {
        const json& ls = root["linear_sets"];
        if (!ls.is_object()) fail("\"linear_sets\" must be an object");
        for (auto it = ls.begin(); it != ls.end(); ++it) {
            const auto name = checked_name(it, "linear_sets");
            claim_target(name, "linear set");
            const std::string ctx = "linear set \"" + name + "\"";
            if (!it->is_object()) fail(ctx + ": expected an object");
            check_keys(*it, ctx, {"carrier", "intervals", "density"});
            const json& ivs = need(*it, "intervals", ctx);
            if (!ivs.is_array() || ivs.empty())
                fail(ctx + ": \"intervals\" must be a non-empty array");
            std::vector<ArcInterval<double>> support;
            for (const auto& e : ivs) {
                if (!e.is_array() || e.size() != 2)
                    fail(ctx + ": each interval is a [lo, hi] pair");
                support.push_back({num(e[0], ctx + " interval"),
                                   num(e[1], ctx + " interval")});
            }
            b.s.linear_sets.emplace(
                name,
                LinearSet<double>(b.line(need(*it, "carrier", ctx), ctx),
                                  std::move(support),
                                  b.line_density(need(*it, "density", ctx), ctx)));
        }
    }

    return std::move(b.s);
}

Scene load_scene(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SceneError("scene: cannot read file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str());
}

}  // namespace hypermass::io
