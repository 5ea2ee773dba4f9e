#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pforest/geometry.hpp"

namespace pforest {

// Straight-line embedded graph. Edges are stored directed; with oriented unset
// a directed 2-cycle (u,v),(v,u) represents one undirected edge and validators
// deduplicate it for planarity, degree and connectivity purposes.
struct GeometricGraph {
  struct Edge {
    int tail, head;
  };
  std::vector<Point> verts;
  std::vector<Edge> edges;
  bool oriented = false;

  int vertex_count() const { return (int)verts.size(); }
  int edge_count() const { return (int)edges.size(); }
  Segment edge_segment(int e) const {
    return Segment(verts[edges[e].tail], verts[edges[e].head]);
  }
};

// Structural invariants: indices in range, no self-loops, vertex positions
// pairwise distinct, and (when oriented) no directed 2-cycles.
void validate_graph(const GeometricGraph& g);
GeometricGraph make_graph(std::vector<Point> verts, std::vector<GeometricGraph::Edge> edges,
                          bool oriented);

// Representative edge ids after collapsing duplicate segments (parallel edges
// and, for unoriented graphs, directed 2-cycles).
std::vector<int> canonical_edges(const GeometricGraph& g);

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n);
  int find(int x);
  bool unite(int x, int y);  // false if already joined
};

// Per-vertex component labels, dense ordinals in order of first appearance.
struct Components {
  std::vector<int> comp;
  int count = 0;
};
Components connected_components(const GeometricGraph& g);

// Pairs of canonical edge ids whose segments violate "intersect only at common
// extremities". Empty result == planar embedding. The default version buckets
// segments on the integer grid and checks candidates in parallel; the serial
// version is the quadratic reference it is tested against.
std::vector<std::pair<int, int>> validate_planarity(const GeometricGraph& g);
std::vector<std::pair<int, int>> validate_planarity_serial(const GeometricGraph& g);

struct ForestCheck {
  bool ok = false;
  std::vector<int> cycle;  // canonical edge ids of a witness cycle when !ok
};
ForestCheck validate_forest(const GeometricGraph& g);

// Mean number of edges meeting each sample box (exact rational).
Rat edge_intensity(const GeometricGraph& g, const std::vector<Box>& sample_boxes);

// Deterministic grid of axis-aligned unit boxes inside region, keeping a margin
// off the region boundary; the grid is strided uniformly so at most max_boxes
// boxes are produced.
std::vector<Box> unit_box_grid(const Box& region, const Rat& margin, int max_boxes);

// Number of edges meeting the boundary of origin + [0,n]^2.
long chi_n(const GeometricGraph& g, long n, const Point& origin);

// Analysis window: concentric closed boxes origin + [-inner_half, inner_half]^2
// and origin + [-outer_half, outer_half]^2.
struct WindowSpec {
  Point origin;
  Rat inner_half, outer_half;
  WindowSpec(Point o, Rat inner, Rat outer);
};
Box inner_box(const WindowSpec& w);
Box outer_box(const WindowSpec& w);

enum class EndsKind { FiniteComponent, OneEnded, TwoEnded, Trifurcating };

struct EndsClass {
  EndsKind kind;
  int escape_count = 0;
};

struct ComponentReport {
  int component = 0;  // ordinal among reported components
  int vertex_count_in_window = 0;
  EndsClass ends{EndsKind::FiniteComponent, 0};
  std::vector<Point> escape_points;  // one outer-boundary contact per escaping branch
};

struct ClassifyResult {
  std::vector<ComponentReport> reports;
  long n0 = 0, n1 = 0, n2 = 0, n3plus = 0;
  // component label (from connected_components) -> index into reports, or -1
  std::vector<int> report_of_component;
};

// Windowed ends estimate: a component with a vertex in the inner box is graded
// by the number of its branches (connected pieces of component minus the closed
// inner box, crossing edges split exactly at the box boundary) containing an
// edge that meets the outer box boundary.
ClassifyResult classify_components(const GeometricGraph& g, const WindowSpec& w);

// Number of neighbors u of v whose component in G - v contains an edge meeting
// the outer box boundary. Requires v inside the closed inner box.
int escape_degree(const GeometricGraph& g, int v, const WindowSpec& w);

// Vertices s connected to v all of whose routes to an outer-boundary-meeting
// edge pass through v: components of G - v with no such edge, plus v itself.
std::vector<int> pendant_tree(const GeometricGraph& g, int v, const WindowSpec& w);

// Union of pendant_tree over the head vertices of edges meeting K.
std::vector<int> pendant_of_box(const GeometricGraph& g, const Box& k, const WindowSpec& w);

// One simultaneous removal of all degree-1 vertices (isolated vertices stay).
GeometricGraph peel(const GeometricGraph& g);
// Mask form used to iterate without reindexing.
std::vector<char> peel_step(const GeometricGraph& g, const std::vector<char>& alive);
GeometricGraph induced_subgraph(const GeometricGraph& g, const std::vector<char>& alive);
// Smallest n >= 1 with v removed from Peel^n(G); nullopt = not removed within max_iter.
std::optional<int> peeling_depth(const GeometricGraph& g, int v, int max_iter);

// Follow out-edges from v until a vertex with no successor; requires oriented
// out-degree <= 1, throws on a revisit (cycle).
std::vector<Point> forward_path(const GeometricGraph& g, int v);

// BFS path between two vertices through canonical undirected edges (vertex ids,
// from and to included); empty if disconnected.
std::vector<int> graph_path(const GeometricGraph& g, int from, int to);

}  // namespace pforest
