#include "pforest/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pforest {

namespace {

using nlohmann::json;

json rational_fields(const Rat& q) {
  return json::array({q.get_num().get_str(), q.get_den().get_str()});
}

Rat parse_rational(const json& num, const json& den) {
  if (!num.is_string() || !den.is_string())
    throw std::invalid_argument("graph_from_json: coordinate entries must be digit strings");
  return rat_parse(num.get<std::string>() + "/" + den.get<std::string>());
}

}  // namespace

std::string graph_to_json(const GeometricGraph& g) {
  json verts = json::array();
  for (const Point& p : g.verts) {
    json v = rational_fields(p.x);
    json w = rational_fields(p.y);
    v.push_back(w[0]);
    v.push_back(w[1]);
    verts.push_back(std::move(v));
  }
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back(json::array({e.tail, e.head}));

  json doc;
  doc["version"] = 1;
  doc["oriented"] = g.oriented;
  doc["vertices"] = std::move(verts);
  doc["edges"] = std::move(edges);
  return doc.dump() + "\n";
}

GeometricGraph graph_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("graph_from_json: ") + ex.what());
  }
  if (!doc.is_object() || !doc.contains("version") || doc["version"] != 1)
    throw std::invalid_argument("graph_from_json: unsupported version");
  if (!doc.contains("oriented") || !doc["oriented"].is_boolean())
    throw std::invalid_argument("graph_from_json: missing oriented flag");
  if (!doc.contains("vertices") || !doc["vertices"].is_array() || !doc.contains("edges") ||
      !doc["edges"].is_array())
    throw std::invalid_argument("graph_from_json: missing vertices/edges");

  std::vector<Point> verts;
  for (const json& v : doc["vertices"]) {
    if (!v.is_array() || v.size() != 4)
      throw std::invalid_argument("graph_from_json: vertex entries need 4 fields");
    verts.push_back(Point{parse_rational(v[0], v[1]), parse_rational(v[2], v[3])});
  }
  std::vector<GeometricGraph::Edge> edges;
  for (const json& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw std::invalid_argument("graph_from_json: edge entries need 2 integers");
    edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return make_graph(std::move(verts), std::move(edges), doc["oriented"].get<bool>());
}

void write_graph_file(const GeometricGraph& g, const std::string& path) {
  write_text_file(path, graph_to_json(g));
}

GeometricGraph read_graph_file(const std::string& path) {
  return graph_from_json(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace pforest
