#include "hyperball/io.hpp"

#include <fstream>
#include <sstream>

#include "hyperball/error.hpp"

namespace hyperball {

namespace {

// Thrown while walking a parsed document; `path` is a JSON pointer.
[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ValidationError, path + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) invalid(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) invalid(path, "missing field '" + key + "'");
  return *it;
}

Scalar scalar_at(const Json& j, const std::string& path) {
  if (!j.is_string()) invalid(path, "rational must be a \"p/q\" string");
  try {
    return parse_scalar(j.get<std::string>());
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.detail());
  }
}

std::size_t index_at(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned()) invalid(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

const Json& array_at(const Json& j, const std::string& path) {
  if (!j.is_array()) invalid(path, "expected an array");
  return j;
}

LinfPoint point_at(const Json& j, const std::string& path) {
  LinfPoint p;
  const Json& arr = array_at(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) p.push_back(scalar_at(arr[i], path + "/" + std::to_string(i)));
  return p;
}

HPolyhedron polyhedron_at(const Json& j, const std::string& path) {
  HPolyhedron p;
  p.dim = index_at(field(j, "dim", path), path + "/dim");
  const Json& rows = array_at(field(j, "rows", path), path + "/rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string rp = path + "/rows/" + std::to_string(i);
    LinearRow row{point_at(field(rows[i], "a", rp), rp + "/a"), scalar_at(field(rows[i], "b", rp), rp + "/b")};
    if (row.a.size() != p.dim) invalid(rp + "/a", "has " + std::to_string(row.a.size()) + " entries, dim is " + std::to_string(p.dim));
    p.rows.push_back(std::move(row));
  }
  return p;
}

Ball ball_at(const Json& j, const std::string& path) {
  Ball b{point_at(field(j, "center", path), path + "/center"), scalar_at(field(j, "r", path), path + "/r")};
  if (b.radius < 0) invalid(path + "/r", "radius must be non-negative");
  return b;
}

std::vector<Ball> balls_at(const Json& j, const std::string& path) {
  std::vector<Ball> out;
  const Json& arr = array_at(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(ball_at(arr[i], path + "/" + std::to_string(i)));
    if (out.back().dim() != out.front().dim()) invalid(path + "/" + std::to_string(i), "dimension differs from ball 0");
  }
  return out;
}

Region region_at(const Json& j, const std::string& path) {
  if (j.contains("polyhedron")) return polyhedron_at(j["polyhedron"], path + "/polyhedron");
  if (j.contains("ball")) return box_polyhedron(to_box(ball_at(j["ball"], path + "/ball")));
  if (j.contains("region")) {
    const std::string rp = path + "/region";
    const Json& r = j["region"];
    Region out;
    out.dim = index_at(field(r, "dim", rp), rp + "/dim");
    const Json& pieces = array_at(field(r, "pieces", rp), rp + "/pieces");
    if (pieces.empty()) invalid(rp + "/pieces", "a region needs at least one piece");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      out.pieces.push_back(polyhedron_at(pieces[i], rp + "/pieces/" + std::to_string(i)));
      if (out.pieces.back().dim != out.dim) invalid(rp + "/pieces/" + std::to_string(i), "dimension differs from the region");
    }
    return out;
  }
  invalid(path, "expected 'polyhedron', 'region' or 'ball'");
}

// Re-raises metric validation failures as ValidationError with the same indices.
template <class F>
auto validated(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError || e.code() == ErrorCode::ValidationError) throw;
    throw Error(ErrorCode::ValidationError, e.what(), e.indices());
  }
}

Instance parse_matrix(const Json& j) {
  Matrix m;
  const Json& rows = array_at(field(j, "dist", ""), "/dist");
  for (std::size_t i = 0; i < rows.size(); ++i) m.push_back(point_at(rows[i], "/dist/" + std::to_string(i)));
  return MetricDoc{validated([&] { return validate_metric(m); })};
}

Instance parse_graph(const Json& j) {
  GraphInstance g;
  g.n = index_at(field(j, "n", ""), "/n");
  const Json& edges = array_at(field(j, "edges", ""), "/edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string ep = "/edges/" + std::to_string(i);
    if (!edges[i].is_array() || edges[i].size() != 2) invalid(ep, "edge must be a pair of vertex indices");
    g.edges.emplace_back(index_at(edges[i][0], ep + "/0"), index_at(edges[i][1], ep + "/1"));
  }
  if (j.contains("weights")) g.weights = point_at(j["weights"], "/weights");
  FiniteMetricSpace space = validated([&] { return graph_metric(g); });
  return GraphDoc{std::move(g), std::move(space)};
}

Instance parse_family(const Json& j) {
  FamilyDoc doc;
  doc.family.balls = balls_at(field(j, "balls", ""), "/balls");
  if (doc.family.balls.empty()) invalid("/balls", "a family needs at least one ball");
  if (j.contains("subset")) {
    doc.family.subset = region_at(j["subset"], "/subset");
    if (doc.family.subset->dim != doc.family.balls.front().dim()) invalid("/subset", "dimension differs from the balls");
  }
  if (j.contains("k")) doc.k = index_at(j["k"], "/k");
  return doc;
}

Instance parse_helly(const Json& j) {
  HellyInstance h;
  h.n = index_at(field(j, "n", ""), "/n");
  const Json& sets = array_at(field(j, "sets", ""), "/sets");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    h.sets.push_back(polyhedron_at(sets[i], "/sets/" + std::to_string(i)));
    if (h.sets.back().dim != h.n) invalid("/sets/" + std::to_string(i), "dimension differs from n");
  }
  const Json& ws = array_at(field(j, "witnesses", ""), "/witnesses");
  for (std::size_t i = 0; i < ws.size(); ++i) {
    h.witnesses.push_back(point_at(ws[i], "/witnesses/" + std::to_string(i)));
    if (h.witnesses.back().size() != h.n) invalid("/witnesses/" + std::to_string(i), "dimension differs from n");
  }
  if (h.sets.size() != h.n + 1 || h.witnesses.size() != h.n + 1) invalid("", "expected n + 1 sets and witnesses");
  return h;
}

Instance parse_points(const Json& j) {
  PointsDoc doc;
  const Json& pts = array_at(field(j, "points", ""), "/points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    doc.points.push_back(point_at(pts[i], "/points/" + std::to_string(i)));
    if (doc.points.back().size() != doc.points.front().size()) {
      invalid("/points/" + std::to_string(i), "dimension differs from point 0");
    }
  }
  if (doc.points.empty()) invalid("/points", "need at least one point");
  return doc;
}

Instance parse_refine(const Json& j) {
  RefineDoc doc;
  const Json& name = field(j, "scheme", "");
  auto scheme = name.is_string() ? scheme_from_string(name.get<std::string>()) : std::nullopt;
  if (!scheme || *scheme == Scheme::ip_lift) invalid("/scheme", "expected cauchy-halving, chain-walk or triple-34");
  doc.scheme = *scheme;
  const Json& sets = array_at(field(j, "sets", ""), "/sets");
  for (std::size_t i = 0; i < sets.size(); ++i) doc.sets.push_back(polyhedron_at(sets[i], "/sets/" + std::to_string(i)));
  const std::size_t need = doc.scheme == Scheme::cauchy_halving ? 1 : doc.scheme == Scheme::chain_walk ? 2 : 3;
  if (doc.sets.size() != need) invalid("/sets", "scheme needs " + std::to_string(need) + " sets");
  for (std::size_t i = 1; i < doc.sets.size(); ++i) {
    if (doc.sets[i].dim != doc.sets[0].dim) invalid("/sets/" + std::to_string(i), "dimension differs from set 0");
  }
  const std::size_t dim = doc.sets[0].dim;
  auto check_dim = [&](const LinfPoint& p, const std::string& path) {
    if (p.size() != dim) invalid(path, "dimension differs from the sets");
  };
  if (j.contains("rounds")) doc.rounds = index_at(j["rounds"], "/rounds");
  switch (doc.scheme) {
    case Scheme::cauchy_halving:
      doc.family = balls_at(field(j, "family", ""), "/family");
      for (std::size_t i = 0; i < doc.family.size(); ++i) check_dim(doc.family[i].center, "/family/" + std::to_string(i));
      if (j.contains("scale")) doc.scale = scalar_at(j["scale"], "/scale");
      if (doc.scale <= 0) invalid("/scale", "must be positive");
      if (j.contains("level")) doc.level = index_at(j["level"], "/level");
      break;
    case Scheme::chain_walk:
      doc.x = point_at(field(j, "x", ""), "/x");
      doc.y = point_at(field(j, "y", ""), "/y");
      check_dim(doc.x, "/x");
      check_dim(doc.y, "/y");
      doc.r = scalar_at(field(j, "r", ""), "/r");
      doc.eps = scalar_at(field(j, "eps", ""), "/eps");
      doc.delta = scalar_at(field(j, "delta", ""), "/delta");
      if (j.contains("refine_rounds")) doc.refine_rounds = index_at(j["refine_rounds"], "/refine_rounds");
      break;
    default:
      doc.start = point_at(field(j, "start", ""), "/start");
      check_dim(doc.start, "/start");
      break;
  }
  return doc;
}

Json points_json(const std::vector<LinfPoint>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(p);
  return arr;
}

Json balls_json(const std::vector<Ball>& balls) {
  Json arr = Json::array();
  for (const auto& b : balls) arr.push_back(to_json(b));
  return arr;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

}  // namespace

HPolyhedron polyhedron_from_json(const Json& j) { return polyhedron_at(j, ""); }
Region region_from_json(const Json& j) { return region_at(j, ""); }
Ball ball_from_json(const Json& j) { return ball_at(j, ""); }
LinfPoint point_from_json(const Json& j) { return point_at(j, ""); }

std::string_view instance_kind(const Instance& instance) {
  static constexpr std::string_view names[] = {"matrix", "graph", "region", "family", "helly", "points", "refine"};
  return names[instance.index()];
}

Instance parse_instance_text(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + e.what(), {line});
  }
  try {
    if (!j.is_object()) invalid("", "instance must be a JSON object");
    if (!j.contains("type")) return RegionDoc{region_at(j, "")};
    const Json& type = j["type"];
    const std::string kind = type.is_string() ? type.get<std::string>() : "";
    if (kind == "matrix") return parse_matrix(j);
    if (kind == "graph") return parse_graph(j);
    if (kind == "region") return RegionDoc{region_at(j, "")};
    if (kind == "family") return parse_family(j);
    if (kind == "helly") return parse_helly(j);
    if (kind == "points") return parse_points(j);
    if (kind == "refine") return parse_refine(j);
    invalid("/type", "unknown instance type '" + kind + "'");
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ParseError) throw;
    // Point at the first line holding the offending rational when it can be found.
    const std::string& msg = e.detail();
    const auto quote = msg.find('\'');
    if (quote != std::string::npos) {
      const auto end = msg.find('\'', quote + 1);
      const std::string literal = "\"" + msg.substr(quote + 1, end - quote - 1) + "\"";
      const auto at = text.find(literal);
      if (at != std::string_view::npos) {
        const std::size_t line = line_of(text, at);
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg, {line});
      }
    }
    throw;
  }
}

Instance parse_instance(const std::string& path) { return parse_instance_text(read_file(path)); }

Json to_json(const HellyInstance& h) {
  Json sets = Json::array();
  for (const auto& s : h.sets) sets.push_back(to_json(s));
  return {{"type", "helly"}, {"n", h.n}, {"sets", sets}, {"witnesses", points_json(h.witnesses)}};
}

Json instance_to_json(const Instance& instance) {
  struct Visitor {
    Json operator()(const MetricDoc& d) const {
      Json rows = Json::array();
      for (const auto& row : d.space.matrix()) rows.push_back(row);
      return {{"type", "matrix"}, {"dist", rows}};
    }
    Json operator()(const GraphDoc& d) const {
      Json edges = Json::array();
      for (const auto& [u, v] : d.graph.edges) edges.push_back({u, v});
      Json j{{"type", "graph"}, {"n", d.graph.n}, {"edges", edges}};
      if (!d.graph.weights.empty()) j["weights"] = d.graph.weights;
      return j;
    }
    Json operator()(const RegionDoc& d) const { return to_json(d.region); }
    Json operator()(const FamilyDoc& d) const {
      Json j{{"type", "family"}, {"balls", balls_json(d.family.balls)}};
      if (d.family.subset) j["subset"] = to_json(*d.family.subset);
      if (d.k) j["k"] = *d.k;
      return j;
    }
    Json operator()(const HellyInstance& h) const { return to_json(h); }
    Json operator()(const PointsDoc& d) const { return {{"type", "points"}, {"points", points_json(d.points)}}; }
    Json operator()(const RefineDoc& d) const {
      Json sets = Json::array();
      for (const auto& s : d.sets) sets.push_back(to_json(s));
      Json j{{"type", "refine"}, {"scheme", std::string(to_string(d.scheme))}, {"sets", sets}, {"rounds", d.rounds}};
      switch (d.scheme) {
        case Scheme::cauchy_halving:
          j["family"] = balls_json(d.family);
          j["scale"] = d.scale;
          if (d.level) j["level"] = *d.level;
          break;
        case Scheme::chain_walk:
          j["x"] = d.x;
          j["y"] = d.y;
          j["r"] = d.r;
          j["eps"] = d.eps;
          j["delta"] = d.delta;
          j["refine_rounds"] = d.refine_rounds;
          break;
        default:
          j["start"] = d.start;
          break;
      }
      return j;
    }
  };
  return std::visit(Visitor{}, instance);
}

std::string serialize_instance(const Instance& instance) { return instance_to_json(instance).dump(2) + "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::UsageError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::UsageError, "cannot write '" + path + "'");
  out << contents;
}

}  // namespace hyperball
