#include "pforest/forest.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pforest {

void validate_graph(const GeometricGraph& g) {
  int n = g.vertex_count();
  for (const auto& e : g.edges) {
    if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n)
      throw std::invalid_argument("graph: edge index out of range");
    if (e.tail == e.head) throw std::invalid_argument("graph: self-loop");
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; i++) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return g.verts[a] < g.verts[b]; });
  for (int i = 0; i + 1 < n; i++)
    if (g.verts[order[i]] == g.verts[order[i + 1]])
      throw std::invalid_argument("graph: duplicate vertex position");
  if (g.oriented) {
    std::unordered_set<long long> seen;
    for (const auto& e : g.edges) {
      long long fwd = (long long)e.tail * (long long)n + e.head;
      long long rev = (long long)e.head * (long long)n + e.tail;
      if (seen.count(rev)) throw std::invalid_argument("graph: directed 2-cycle in oriented graph");
      seen.insert(fwd);
    }
  }
}

GeometricGraph make_graph(std::vector<Point> verts, std::vector<GeometricGraph::Edge> edges,
                          bool oriented) {
  GeometricGraph g;
  g.verts = std::move(verts);
  g.edges = std::move(edges);
  g.oriented = oriented;
  validate_graph(g);
  return g;
}

std::vector<int> canonical_edges(const GeometricGraph& g) {
  std::unordered_set<long long> seen;
  std::vector<int> out;
  long long n = g.vertex_count();
  for (int e = 0; e < g.edge_count(); e++) {
    int a = g.edges[e].tail, b = g.edges[e].head;
    if (a > b) std::swap(a, b);
    long long key = (long long)a * n + b;
    if (seen.insert(key).second) out.push_back(e);
  }
  return out;
}

UnionFind::UnionFind(int n) : parent(n) {
  for (int i = 0; i < n; i++) parent[i] = i;
}
int UnionFind::find(int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}
bool UnionFind::unite(int x, int y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (x > y) std::swap(x, y);  // keep the smaller id as root: deterministic labels
  parent[y] = x;
  return true;
}

Components connected_components(const GeometricGraph& g) {
  UnionFind uf(g.vertex_count());
  for (const auto& e : g.edges) uf.unite(e.tail, e.head);
  Components c;
  c.comp.assign(g.vertex_count(), -1);
  for (int v = 0; v < g.vertex_count(); v++) {
    int r = uf.find(v);
    if (c.comp[r] == -1) c.comp[r] = c.count++;
    c.comp[v] = c.comp[r];
  }
  return c;
}

namespace {

struct CellIndex {
  std::unordered_map<unsigned long long, std::vector<int>> cells;

  static unsigned long long key(long cx, long cy) {
    return ((unsigned long long)(unsigned int)(cx + (1L << 30)) << 32) |
           (unsigned long long)(unsigned int)(cy + (1L << 30));
  }

  void insert_segment(int id, const Segment& s) {
    long x0 = rat_floor_long(std::min(s.a.x, s.b.x));
    long x1 = rat_floor_long(std::max(s.a.x, s.b.x));
    long y0 = rat_floor_long(std::min(s.a.y, s.b.y));
    long y1 = rat_floor_long(std::max(s.a.y, s.b.y));
    for (long cx = x0; cx <= x1; cx++)
      for (long cy = y0; cy <= y1; cy++) cells[key(cx, cy)].push_back(id);
  }

  std::vector<int> box_candidates(const Box& b) const {
    long x0 = rat_floor_long(b.x0), x1 = rat_floor_long(b.x1);
    long y0 = rat_floor_long(b.y0), y1 = rat_floor_long(b.y1);
    std::vector<int> out;
    for (long cx = x0; cx <= x1; cx++)
      for (long cy = y0; cy <= y1; cy++) {
        auto it = cells.find(key(cx, cy));
        if (it != cells.end()) out.insert(out.end(), it->second.begin(), it->second.end());
      }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

}  // namespace

std::vector<std::pair<int, int>> validate_planarity(const GeometricGraph& g) {
  std::vector<int> canon = canonical_edges(g);
  CellIndex index;
  for (int e : canon) index.insert_segment(e, g.edge_segment(e));
  std::unordered_set<unsigned long long> pair_seen;
  std::vector<std::pair<int, int>> cand;
  for (const auto& [k, ids] : index.cells) {
    (void)k;
    for (size_t i = 0; i < ids.size(); i++)
      for (size_t j = i + 1; j < ids.size(); j++) {
        int a = std::min(ids[i], ids[j]), b = std::max(ids[i], ids[j]);
        unsigned long long pk = ((unsigned long long)a << 32) | (unsigned int)b;
        if (pair_seen.insert(pk).second) cand.emplace_back(a, b);
      }
  }
  std::vector<char> bad(cand.size(), 0);
#pragma omp parallel for schedule(dynamic, 64)
  for (long i = 0; i < (long)cand.size(); i++) {
    SegRelation r = segment_relation(g.edge_segment(cand[i].first), g.edge_segment(cand[i].second));
    if (r == SegRelation::ImproperIntersection) bad[i] = 1;
  }
  std::vector<std::pair<int, int>> out;
  for (size_t i = 0; i < cand.size(); i++)
    if (bad[i]) out.push_back(cand[i]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<int, int>> validate_planarity_serial(const GeometricGraph& g) {
  std::vector<int> canon = canonical_edges(g);
  std::vector<std::pair<int, int>> out;
  for (size_t i = 0; i < canon.size(); i++)
    for (size_t j = i + 1; j < canon.size(); j++) {
      SegRelation r = segment_relation(g.edge_segment(canon[i]), g.edge_segment(canon[j]));
      if (r == SegRelation::ImproperIntersection) out.emplace_back(canon[i], canon[j]);
    }
  std::sort(out.begin(), out.end());
  return out;
}

ForestCheck validate_forest(const GeometricGraph& g) {
  std::vector<int> canon = canonical_edges(g);
  UnionFind uf(g.vertex_count());
  std::vector<std::vector<std::pair<int, int>>> adj(g.vertex_count());
  for (int e : canon) {
    int u = g.edges[e].tail, v = g.edges[e].head;
    if (!uf.unite(u, v)) {
      // witness: BFS path u..v through the edges added so far, plus e
      std::vector<int> prev_edge(g.vertex_count(), -1), prev(g.vertex_count(), -1);
      std::deque<int> q{u};
      std::vector<char> vis(g.vertex_count(), 0);
      vis[u] = 1;
      while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        if (x == v) break;
        for (auto [y, ey] : adj[x])
          if (!vis[y]) {
            vis[y] = 1;
            prev[y] = x;
            prev_edge[y] = ey;
            q.push_back(y);
          }
      }
      ForestCheck fc;
      fc.ok = false;
      for (int x = v; x != u; x = prev[x]) fc.cycle.push_back(prev_edge[x]);
      std::reverse(fc.cycle.begin(), fc.cycle.end());
      fc.cycle.push_back(e);
      return fc;
    }
    adj[u].push_back({v, e});
    adj[v].push_back({u, e});
  }
  ForestCheck fc;
  fc.ok = true;
  return fc;
}

Rat edge_intensity(const GeometricGraph& g, const std::vector<Box>& sample_boxes) {
  if (sample_boxes.empty()) throw std::invalid_argument("edge_intensity: no sample boxes");
  CellIndex index;
  for (int e = 0; e < g.edge_count(); e++) index.insert_segment(e, g.edge_segment(e));
  long total = 0;
  for (const Box& b : sample_boxes) {
    for (int e : index.box_candidates(b))
      if (segment_meets_box(g.edge_segment(e), b)) total++;
  }
  return rat(total, (long)sample_boxes.size());
}

std::vector<Box> unit_box_grid(const Box& region, const Rat& margin, int max_boxes) {
  auto ceil_long = [](const Rat& q) { return -rat_floor_long(-q); };
  long x_lo = ceil_long(region.x0 + margin), x_hi = rat_floor_long(region.x1 - margin);
  long y_lo = ceil_long(region.y0 + margin), y_hi = rat_floor_long(region.y1 - margin);
  long nx = x_hi - x_lo, ny = y_hi - y_lo;  // unit boxes with integer corners
  if (nx <= 0 || ny <= 0) throw std::invalid_argument("unit_box_grid: region too small");
  long stride = 1;
  while (((nx + stride - 1) / stride) * ((ny + stride - 1) / stride) > max_boxes) stride++;
  std::vector<Box> out;
  for (long x = x_lo; x < x_hi; x += stride)
    for (long y = y_lo; y < y_hi; y += stride)
      out.push_back(Box(rat(x), rat(y), rat(x + 1), rat(y + 1)));
  return out;
}

long chi_n(const GeometricGraph& g, long n, const Point& origin) {
  if (n <= 0) throw std::invalid_argument("chi_n: n must be positive");
  Box b(origin.x, origin.y, origin.x + rat(n), origin.y + rat(n));
  long count = 0;
  for (int e = 0; e < g.edge_count(); e++)
    if (segment_meets_boundary(g.edge_segment(e), b)) count++;
  return count;
}

WindowSpec::WindowSpec(Point o, Rat inner, Rat outer)
    : origin(std::move(o)), inner_half(std::move(inner)), outer_half(std::move(outer)) {
  if (!(sign(inner_half) > 0 && inner_half < outer_half))
    throw std::invalid_argument("WindowSpec: need 0 < inner_half < outer_half");
}

Box inner_box(const WindowSpec& w) {
  return Box(w.origin.x - w.inner_half, w.origin.y - w.inner_half, w.origin.x + w.inner_half,
             w.origin.y + w.inner_half);
}
Box outer_box(const WindowSpec& w) {
  return Box(w.origin.x - w.outer_half, w.origin.y - w.outer_half, w.origin.x + w.outer_half,
             w.origin.y + w.outer_half);
}

namespace {

Point segment_point(const Segment& s, const Rat& t) {
  return Point{s.a.x + t * (s.b.x - s.a.x), s.a.y + t * (s.b.y - s.a.y)};
}

// Does the part s([t0,t1]) meet the boundary of b?
bool part_meets_boundary(const Segment& s, const Rat& t0, const Rat& t1, const Box& b) {
  Point a = segment_point(s, t0), c = segment_point(s, t1);
  if (b.strictly_contains(a) && b.strictly_contains(c)) return false;
  auto clip = clip_segment_box(s, b);
  if (!clip) return false;
  return !(clip->second < t0) && !(t1 < clip->first);
}

// First contact point of s([t0,t1]) with the boundary of b (minimal parameter).
Point first_boundary_contact(const Segment& s, const Rat& t0, const Rat& t1, const Box& b) {
  LinearPiece part{s.a, Dir{s.b.x - s.a.x, s.b.y - s.a.y}, t0, t1};
  std::optional<Rat> best;
  for (const Segment& side : b.sides()) {
    LinearPiece sp{side.a, Dir{side.b.x - side.a.x, side.b.y - side.a.y}, rat(0), rat(1)};
    PieceHit h = piece_intersect(part, sp);
    if (h.kind == PieceHit::At) {
      if (!best || h.s1 < *best) best = h.s1;
    } else if (h.kind == PieceHit::Along) {
      if (!best || h.a1 < *best) best = h.a1;
    }
  }
  if (!best) throw std::logic_error("first_boundary_contact: no contact");
  return segment_point(s, *best);
}

}  // namespace

ClassifyResult classify_components(const GeometricGraph& g, const WindowSpec& w) {
  Box bin = inner_box(w), bout = outer_box(w);
  std::vector<int> canon = canonical_edges(g);
  Components cc = connected_components(g);
  int n = g.vertex_count();

  std::vector<char> inside(n);
  std::vector<char> comp_has_inner(cc.count, 0), comp_in_outer(cc.count, 1);
  std::vector<int> comp_window_verts(cc.count, 0);
  for (int v = 0; v < n; v++) {
    inside[v] = bin.contains(g.verts[v]);
    if (inside[v]) {
      comp_has_inner[cc.comp[v]] = 1;
      comp_window_verts[cc.comp[v]]++;
    }
    if (!bout.contains(g.verts[v])) comp_in_outer[cc.comp[v]] = 0;
  }

  // Branches: connected pieces of (component minus closed inner box), with
  // crossing edges split exactly at the box boundary.
  UnionFind piece(n);
  struct Part {
    int vertex;  // outside endpoint the part dangles from
    int edge;
    Rat t0, t1;  // sub-segment parameters on the edge
  };
  std::vector<Part> parts;
  for (int e : canon) {
    int u = g.edges[e].tail, v = g.edges[e].head;
    bool ou = !inside[u], ov = !inside[v];
    if (!ou && !ov) continue;
    Segment s = g.edge_segment(e);
    auto clip = clip_segment_box(s, bin);
    if (ou && ov) {
      if (!clip) {
        piece.unite(u, v);
        parts.push_back({u, e, rat(0), rat(1)});  // whole edge, one record suffices
      } else {
        parts.push_back({u, e, rat(0), clip->first});
        parts.push_back({v, e, clip->second, rat(1)});
      }
    } else if (ou) {
      parts.push_back({u, e, rat(0), clip->first});
    } else {
      parts.push_back({v, e, clip->second, rat(1)});
    }
  }

  // Escape marking: a piece escapes if one of its parts meets the outer boundary.
  struct Escape {
    int edge = -1;
    Rat t0, t1;
  };
  std::unordered_map<int, Escape> esc;  // piece root -> witness with minimal edge id
  for (const Part& p : parts) {
    if (!part_meets_boundary(g.edge_segment(p.edge), p.t0, p.t1, bout)) continue;
    int r = piece.find(p.vertex);
    auto it = esc.find(r);
    if (it == esc.end() || p.edge < it->second.edge) esc[r] = {p.edge, p.t0, p.t1};
  }

  // Count pieces per component (distinct piece roots among outside vertices).
  std::vector<std::pair<int, int>> comp_root;  // (component, piece root)
  for (int v = 0; v < n; v++) {
    if (inside[v]) continue;
    if (!comp_has_inner[cc.comp[v]]) continue;
    comp_root.emplace_back(cc.comp[v], piece.find(v));
  }
  std::sort(comp_root.begin(), comp_root.end());
  comp_root.erase(std::unique(comp_root.begin(), comp_root.end()), comp_root.end());

  std::vector<int> escape_count(cc.count, 0);
  std::vector<std::vector<Point>> escape_pts(cc.count);
  for (auto [c, r] : comp_root) {
    auto it = esc.find(r);
    if (it == esc.end()) continue;
    escape_count[c]++;
    escape_pts[c].push_back(
        first_boundary_contact(g.edge_segment(it->second.edge), it->second.t0, it->second.t1, bout));
  }

  ClassifyResult res;
  res.report_of_component.assign(cc.count, -1);
  for (int c = 0; c < cc.count; c++) {
    if (!comp_has_inner[c]) continue;
    ComponentReport r;
    r.component = (int)res.reports.size();
    r.vertex_count_in_window = comp_window_verts[c];
    int e = escape_count[c];
    if (e == 0) {
      if (!comp_in_outer[c])
        throw std::logic_error("classify_components: no escape but component leaves outer box");
      r.ends = {EndsKind::FiniteComponent, 0};
      res.n0++;
    } else if (e == 1) {
      r.ends = {EndsKind::OneEnded, 1};
      res.n1++;
    } else if (e == 2) {
      r.ends = {EndsKind::TwoEnded, 2};
      res.n2++;
    } else {
      r.ends = {EndsKind::Trifurcating, e};
      res.n3plus++;
    }
    r.escape_points = escape_pts[c];
    std::sort(r.escape_points.begin(), r.escape_points.end());
    res.report_of_component[c] = (int)res.reports.size();
    res.reports.push_back(std::move(r));
  }
  return res;
}

int escape_degree(const GeometricGraph& g, int v, const WindowSpec& w) {
  if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("escape_degree: bad vertex");
  if (!inner_box(w).contains(g.verts[v]))
    throw std::invalid_argument("escape_degree: vertex outside inner box");
  Box bout = outer_box(w);
  std::vector<int> canon = canonical_edges(g);
  UnionFind uf(g.vertex_count());
  for (int e : canon) {
    if (g.edges[e].tail == v || g.edges[e].head == v) continue;
    uf.unite(g.edges[e].tail, g.edges[e].head);
  }
  std::unordered_set<int> escaping_roots;
  for (int e : canon) {
    if (g.edges[e].tail == v || g.edges[e].head == v) continue;
    if (segment_meets_boundary(g.edge_segment(e), bout)) escaping_roots.insert(uf.find(g.edges[e].tail));
  }
  std::vector<int> nbrs;
  for (int e : canon) {
    if (g.edges[e].tail == v) nbrs.push_back(g.edges[e].head);
    if (g.edges[e].head == v) nbrs.push_back(g.edges[e].tail);
  }
  std::sort(nbrs.begin(), nbrs.end());
  nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  int count = 0;
  for (int u : nbrs)
    if (escaping_roots.count(uf.find(u))) count++;
  return count;
}

std::vector<int> pendant_tree(const GeometricGraph& g, int v, const WindowSpec& w) {
  if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("pendant_tree: bad vertex");
  Box bout = outer_box(w);
  std::vector<int> canon = canonical_edges(g);
  UnionFind uf(g.vertex_count());
  for (int e : canon) {
    if (g.edges[e].tail == v || g.edges[e].head == v) continue;
    uf.unite(g.edges[e].tail, g.edges[e].head);
  }
  std::unordered_set<int> escaping_roots;
  for (int e : canon) {
    if (g.edges[e].tail == v || g.edges[e].head == v) continue;
    if (segment_meets_boundary(g.edge_segment(e), bout)) escaping_roots.insert(uf.find(g.edges[e].tail));
  }
  std::unordered_set<int> pendant_roots;
  for (int e : canon) {
    int u = -1;
    if (g.edges[e].tail == v) u = g.edges[e].head;
    if (g.edges[e].head == v) u = g.edges[e].tail;
    if (u < 0) continue;
    int r = uf.find(u);
    if (!escaping_roots.count(r)) pendant_roots.insert(r);
  }
  std::vector<int> out{v};
  for (int z = 0; z < g.vertex_count(); z++)
    if (z != v && pendant_roots.count(uf.find(z))) out.push_back(z);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> pendant_of_box(const GeometricGraph& g, const Box& k, const WindowSpec& w) {
  std::unordered_set<int> targets;
  for (int e = 0; e < g.edge_count(); e++) {
    if (!segment_meets_box(g.edge_segment(e), k)) continue;
    targets.insert(g.edges[e].head);
  }
  std::vector<int> ordered(targets.begin(), targets.end());
  std::sort(ordered.begin(), ordered.end());
  std::vector<int> out;
  for (int t : ordered) {
    std::vector<int> p = pendant_tree(g, t, w);
    out.insert(out.end(), p.begin(), p.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<char> peel_step(const GeometricGraph& g, const std::vector<char>& alive) {
  std::vector<int> deg(g.vertex_count(), 0);
  for (int e : canonical_edges(g)) {
    int u = g.edges[e].tail, v = g.edges[e].head;
    if (alive[u] && alive[v]) {
      deg[u]++;
      deg[v]++;
    }
  }
  std::vector<char> next = alive;
  for (int v = 0; v < g.vertex_count(); v++)
    if (alive[v] && deg[v] == 1) next[v] = 0;  // leaves only; isolated vertices stay
  return next;
}

GeometricGraph induced_subgraph(const GeometricGraph& g, const std::vector<char>& alive) {
  std::vector<int> remap(g.vertex_count(), -1);
  GeometricGraph out;
  out.oriented = g.oriented;
  for (int v = 0; v < g.vertex_count(); v++)
    if (alive[v]) {
      remap[v] = (int)out.verts.size();
      out.verts.push_back(g.verts[v]);
    }
  for (const auto& e : g.edges)
    if (alive[e.tail] && alive[e.head]) out.edges.push_back({remap[e.tail], remap[e.head]});
  return out;
}

GeometricGraph peel(const GeometricGraph& g) {
  std::vector<char> alive(g.vertex_count(), 1);
  return induced_subgraph(g, peel_step(g, alive));
}

std::optional<int> peeling_depth(const GeometricGraph& g, int v, int max_iter) {
  if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("peeling_depth: bad vertex");
  std::vector<char> alive(g.vertex_count(), 1);
  for (int it = 1; it <= max_iter; it++) {
    std::vector<char> next = peel_step(g, alive);
    if (!next[v]) return it;
    if (next == alive) return std::nullopt;  // fixed point: nothing will ever be removed
    alive = std::move(next);
  }
  return std::nullopt;
}

std::vector<Point> forward_path(const GeometricGraph& g, int v) {
  if (!g.oriented) throw std::invalid_argument("forward_path: graph not oriented");
  std::vector<int> succ(g.vertex_count(), -1);
  for (const auto& e : g.edges) {
    if (succ[e.tail] != -1) throw std::invalid_argument("forward_path: out-degree > 1");
    succ[e.tail] = e.head;
  }
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<Point> out;
  int x = v;
  while (x != -1) {
    if (seen[x]) throw std::runtime_error("forward_path: cycle detected");
    seen[x] = 1;
    out.push_back(g.verts[x]);
    x = succ[x];
  }
  return out;
}

std::vector<int> graph_path(const GeometricGraph& g, int from, int to) {
  std::vector<std::vector<int>> adj(g.vertex_count());
  for (int e : canonical_edges(g)) {
    adj[g.edges[e].tail].push_back(g.edges[e].head);
    adj[g.edges[e].head].push_back(g.edges[e].tail);
  }
  std::vector<int> prev(g.vertex_count(), -2);
  std::deque<int> q{from};
  prev[from] = -1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    if (x == to) break;
    for (int y : adj[x])
      if (prev[y] == -2) {
        prev[y] = x;
        q.push_back(y);
      }
  }
  if (prev[to] == -2) return {};
  std::vector<int> path;
  for (int x = to; x != -1; x = prev[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace pforest
