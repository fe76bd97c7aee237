#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hyperball/lab.hpp"
#include "hyperball/linf.hpp"
#include "hyperball/metric.hpp"
#include "hyperball/refine.hpp"

namespace hyperball {

// Instance documents. Every document is a JSON object; rationals are "p/q"
// strings. The "type" field selects the kind:
//
//   matrix   {"type":"matrix","dist":[["0/1","1/1"],["1/1","0/1"]]}
//   graph    {"type":"graph","n":5,"edges":[[0,1],...],"weights":["2/1",...]}
//   region   {"polyhedron":{"dim":2,"rows":[{"a":[...],"b":"..."}]}}
//            {"region":{"dim":2,"pieces":[{"dim":2,"rows":[...]},...]}}
//            {"ball":{"center":[...],"r":"..."}}
//   family   {"type":"family","balls":[{"center":[...],"r":"..."}],"subset":<region>,"k":2}
//   helly    {"type":"helly","n":3,"sets":[{"dim":3,"rows":[...]}],"witnesses":[[...]]}
//   points   {"type":"points","points":[[...],...]}
//   refine   {"type":"refine","scheme":"cauchy-halving","sets":[...],"family":[...],...}
//
// A region document without "type" is recognised by its single key.

struct MetricDoc {
  FiniteMetricSpace space;
};

struct GraphDoc {
  GraphInstance graph;
  FiniteMetricSpace space;
};

struct RegionDoc {
  Region region;
};

struct FamilyDoc {
  LinfFamily family;
  std::optional<std::size_t> k;
};

struct PointsDoc {
  std::vector<LinfPoint> points;
};

/// Input of the `refine` subcommand. Which fields matter depends on the scheme:
///   cauchy-halving  sets[0], family, rounds, scale, level
///   chain-walk      sets[0..1], x, r, y, eps, delta, refine_rounds
///   triple-34       sets[0..2], start, rounds
struct RefineDoc {
  Scheme scheme = Scheme::cauchy_halving;
  std::vector<HPolyhedron> sets;
  std::vector<Ball> family;
  LinfPoint x, y, start;
  Scalar r, eps, delta;
  Scalar scale = 1;
  std::size_t rounds = 40;
  std::size_t refine_rounds = 0;
  std::optional<std::size_t> level;
};

using Instance = std::variant<MetricDoc, GraphDoc, RegionDoc, FamilyDoc, HellyInstance, PointsDoc, RefineDoc>;

/// Kind name as used in the "type" field ("region" for every region form).
std::string_view instance_kind(const Instance& instance);

/// ParseError carries the line number (1-based) as its only index for JSON
/// syntax errors; ValidationError names the offending field.
Instance parse_instance_text(std::string_view text);
Instance parse_instance(const std::string& path);

/// Canonical form: sorted keys, two-space indentation, trailing newline.
Json instance_to_json(const Instance& instance);
std::string serialize_instance(const Instance& instance);

// Pieces shared with the CLI and the Python bindings.
HPolyhedron polyhedron_from_json(const Json& j);
Region region_from_json(const Json& j);
Ball ball_from_json(const Json& j);
LinfPoint point_from_json(const Json& j);
Json to_json(const HellyInstance& instance);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace hyperball
