#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypermass/lamina.hpp"
#include "hypermass/line.hpp"
#include "hypermass/linear_set.hpp"
#include "hypermass/models.hpp"
#include "hypermass/point.hpp"
#include "hypermass/point_mass.hpp"
#include "hypermass/quadrature.hpp"

namespace hypermass::io {

// A scene is one JSON object holding named inputs. Every coordinate in the
// file is written in the model named by the top-level "model" tag; internally
// everything is converted to the hyperboloid, so the same geometric content
// expressed in different models computes the same results.
//
// Schema (all maps optional, all names unique within their map):
//
//   {
//     "model": "poincare",                      // or "hyperboloid",
//                                               // "half-plane", "gauss-polar"
//     "quadrature": {"rel_tol": 1e-8, "radial_order": 24,
//                    "angular_order": 16, "max_depth": 12},
//     "points":   {"A": [0.1, 0.2]},
//     "lines":    {"ax": {"through": ["A", [0.4, 0.1]], "reverse": false}},
//     "systems":  {"pair": [{"at": "A", "weight": 2.0},
//                           {"at": [0.3, 0.0], "weight": 1.0}]},
//     "densities": {"ramp": {"type": "radial-affine", "a": 2.0, "b": -1.0,
//                            "center": [0, 0]}},
//     "laminae":  {"plate": {"region": {"type": "disk", "center": [0, 0],
//                                       "radius": 1.0},
//                            "density": 1.0}},
//     "linear_sets": {"rod": {"carrier": "ax",
//                             "intervals": [[0.0, 1.0], [2.0, 3.0]],
//                             "density": 1.0}}
//   }
//
// A point is an inline coordinate array (two numbers, or three in the
// hyperboloid model) or the name of an entry in "points". A density is a
// number (constant), a name from "densities", or an object with "type"
// "constant" or "radial-affine". Region types: "triangle" (vertices),
// "disk" (center, radius), "wedge" (center, radius, theta0, theta1),
// "regular-polygon" (center, sides, in_radius, phase), "polar-graph"
// (samples, phase). Angles are radians; lengths are absolute (curvature -1).
struct Scene {
    Model model = Model::poincare;
    QuadratureConfig<double> quad;
    std::map<std::string, HPoint<double>> points;
    std::map<std::string, DirectedLine<double>> lines;
    std::map<std::string, Density<double>> densities;
    std::map<std::string, PointMassSystem<double>> systems;
    std::map<std::string, Lamina<double>> laminae;
    std::map<std::string, LinearSet<double>> linear_sets;
};

// What a command target name refers to. Target names are unique across the
// three maps; the parser rejects scenes that reuse one.
enum class TargetKind { system, lamina, linear_set };

// Throws UnknownName if `name` is in none of the target maps.
TargetKind target_kind(const Scene& s, const std::string& name);

// Throws SceneError on malformed input; construction errors from the
// geometry types propagate unchanged.
Scene parse_scene(const std::string& text);
Scene load_scene(const std::string& path);

// Coordinates of p in model m: three numbers for the hyperboloid, two
// otherwise.
std::vector<double> coords_in_model(const HPoint<double>& p, Model m);

// Parse a coordinate array written in model m.
HPoint<double> point_in_model(Model m, const std::vector<double>& c);

}  // namespace hypermass::io
