#include "pforest/generators.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "pforest/rng.hpp"

namespace pforest {

GridSpec::GridSpec(int m, int h, Point o) : width(m), height(h), origin(std::move(o)) {
  if (m < 2 || h < 2) throw std::invalid_argument("GridSpec: need width, height >= 2");
}

PhiSchedule::PhiSchedule(std::vector<long> values) : phi(std::move(values)) {
  if (phi.empty()) throw std::invalid_argument("PhiSchedule: empty");
  for (size_t i = 0; i < phi.size(); i++) {
    if (phi[i] < 0) throw std::invalid_argument("PhiSchedule: negative");
    if (i > 0 && phi[i] <= phi[i - 1]) throw std::invalid_argument("PhiSchedule: not increasing");
  }
}

DrainageSpec::DrainageSpec(int w, int h, long num, long den, TieBreak tb, std::uint64_t s)
    : width(w), height(h), p_num(num), p_den(den), tie_break(tb), seed(s) {
  if (w < 1 || h < 1) throw std::invalid_argument("DrainageSpec: bad box");
  if (num <= 0 || den <= 0 || num > den) throw std::invalid_argument("DrainageSpec: p not in (0,1]");
}

GeometricGraph ust_wilson(const GridSpec& spec, std::uint64_t seed) {
  const int m = spec.width, h = spec.height, n = m * h;
  Rng rng(seed);
  std::vector<int> next(n, -1);
  std::vector<char> in_tree(n, 0);
  in_tree[0] = 1;

  auto neighbors = [&](int u, int* out) {
    int i = u % m, j = u / m, k = 0;
    if (i + 1 < m) out[k++] = u + 1;
    if (i > 0) out[k++] = u - 1;
    if (j + 1 < h) out[k++] = u + m;
    if (j > 0) out[k++] = u - m;
    return k;
  };

  std::vector<GeometricGraph::Edge> edges;
  edges.reserve(n - 1);
  int nbr[4];
  for (int v = 0; v < n; v++) {
    if (in_tree[v]) continue;
    int u = v;
    while (!in_tree[u]) {  // random walk, loops erased by overwriting next
      int k = neighbors(u, nbr);
      next[u] = nbr[rng.pick(k)];
      u = next[u];
    }
    u = v;
    while (!in_tree[u]) {
      in_tree[u] = 1;
      edges.push_back({u, next[u]});
      u = next[u];
    }
  }

  std::vector<Point> verts;
  verts.reserve(n);
  for (int j = 0; j < h; j++)
    for (int i = 0; i < m; i++)
      verts.push_back(Point{spec.origin.x + rat(i), spec.origin.y + rat(j)});
  return make_graph(std::move(verts), std::move(edges), false);
}

namespace {

std::map<Point, int> position_index(const GeometricGraph& g) {
  std::map<Point, int> m;
  for (int v = 0; v < g.vertex_count(); v++) m[g.verts[v]] = v;
  return m;
}

struct EdgeSet {
  std::unordered_set<long long> s;
  long long n;
  explicit EdgeSet(const GeometricGraph& g) : n(g.vertex_count()) {
    for (const auto& e : g.edges) {
      int a = std::min(e.tail, e.head), b = std::max(e.tail, e.head);
      s.insert((long long)a * n + b);
    }
  }
  bool has(int a, int b) const {
    if (a > b) std::swap(a, b);
    return s.count((long long)a * n + b) != 0;
  }
};

}  // namespace

GeometricGraph dual_tree(const GeometricGraph& ust, const GridSpec& spec) {
  const int m = spec.width, h = spec.height;
  auto pos = position_index(ust);
  auto at = [&](int i, int j) {
    auto it = pos.find(Point{spec.origin.x + rat(i), spec.origin.y + rat(j)});
    if (it == pos.end()) throw std::invalid_argument("dual_tree: grid vertex missing");
    return it->second;
  };
  EdgeSet es(ust);

  const Rat half = rat(1, 2);
  std::vector<Point> verts;
  for (int j = 0; j + 1 < h; j++)
    for (int i = 0; i + 1 < m; i++)
      verts.push_back(Point{spec.origin.x + rat(i) + half, spec.origin.y + rat(j) + half});
  auto face = [&](int i, int j) { return j * (m - 1) + i; };

  std::vector<GeometricGraph::Edge> edges;
  for (int j = 0; j + 1 < h; j++)
    for (int i = 0; i + 1 < m; i++) {
      if (i + 2 < m && !es.has(at(i + 1, j), at(i + 1, j + 1)))
        edges.push_back({face(i, j), face(i + 1, j)});
      if (j + 2 < h && !es.has(at(i, j + 1), at(i + 1, j + 1)))
        edges.push_back({face(i, j), face(i, j + 1)});
    }
  return make_graph(std::move(verts), std::move(edges), false);
}

GeometricGraph contour(const GeometricGraph& z, const Rat& eps) {
  if (!(sign(eps) > 0 && eps < rat(1, 2))) throw std::invalid_argument("contour: eps not in (0,1/2)");
  auto pos = position_index(z);
  EdgeSet es(z);

  // corner c encodes delta: bit0 = x sign, bit1 = y sign
  auto delta_x = [](int c) { return (c & 1) ? 1 : -1; };
  auto delta_y = [](int c) { return (c & 2) ? 1 : -1; };

  std::vector<Point> verts(4 * z.vertex_count(), Point{rat(0), rat(0)});
  for (int v = 0; v < z.vertex_count(); v++)
    for (int c = 0; c < 4; c++)
      verts[4 * v + c] = Point{z.verts[v].x + rat(delta_x(c)) * eps,
                               z.verts[v].y + rat(delta_y(c)) * eps};

  auto neighbor_edge = [&](int v, int ux, int uy) {
    auto it = pos.find(Point{z.verts[v].x + rat(ux), z.verts[v].y + rat(uy)});
    return it != pos.end() && es.has(v, it->second);
  };

  std::vector<GeometricGraph::Edge> edges;
  // side pairs around each vertex, one per edge-free side
  // sides: +x joins corners {1,3}; -x {0,2}; +y {2,3}; -y {0,1}
  const int side_corners[4][2] = {{1, 3}, {0, 2}, {2, 3}, {0, 1}};
  const int side_dir[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int v = 0; v < z.vertex_count(); v++)
    for (int s = 0; s < 4; s++)
      if (!neighbor_edge(v, side_dir[s][0], side_dir[s][1]))
        edges.push_back({4 * v + side_corners[s][0], 4 * v + side_corners[s][1]});

  // connector pairs along each present edge
  std::unordered_set<long long> seen;
  for (const auto& e : z.edges) {
    int a = std::min(e.tail, e.head), b = std::max(e.tail, e.head);
    if (!seen.insert((long long)a * z.vertex_count() + b).second) continue;
    Rat dx = z.verts[b].x - z.verts[a].x, dy = z.verts[b].y - z.verts[a].y;
    if (dx == rat(-1) || dy == rat(-1)) {  // orient the step positive
      std::swap(a, b);
      dx = -dx;
      dy = -dy;
    }
    int ux, uy;
    if (dx == rat(1) && dy == rat(0)) {
      ux = 1;
      uy = 0;
    } else if (dx == rat(0) && dy == rat(1)) {
      ux = 0;
      uy = 1;
    } else {
      throw std::invalid_argument("contour: input edge is not a unit axis step");
    }
    for (int sgn = 0; sgn < 2; sgn++) {
      int wx = uy * (sgn ? 1 : -1), wy = ux * (sgn ? 1 : -1);  // perpendicular offset
      int ca = (ux + wx > 0 ? 1 : 0) + (uy + wy > 0 ? 2 : 0);
      int cb = (-ux + wx > 0 ? 1 : 0) + (-uy + wy > 0 ? 2 : 0);
      edges.push_back({4 * a + ca, 4 * b + cb});
    }
  }
  return make_graph(std::move(verts), std::move(edges), false);
}

GeometricGraph g_phi(const GeometricGraph& ust, const PhiSchedule& sched) {
  std::vector<char> alive(ust.vertex_count(), 1);
  long depth = 0;
  std::vector<GeometricGraph> layers;
  for (int n = 4; n <= sched.n_max(); n++) {
    long want = sched.phi[n - 4];
    while (depth < want) {
      std::vector<char> nxt = peel_step(ust, alive);
      if (nxt == alive) break;  // fixed point; deeper peels are identical
      alive = std::move(nxt);
      depth++;
    }
    GeometricGraph layer = induced_subgraph(ust, alive);
    if (layer.vertex_count() == 0) break;
    layers.push_back(contour(layer, rat(1, n)));
  }
  if (layers.empty()) return GeometricGraph{};
  return graph_union(layers);
}

PhiSchedule quantile_schedule(const std::vector<int>& depth_samples, int n_cap) {
  if (depth_samples.empty()) throw std::invalid_argument("quantile_schedule: no samples");
  const long N = (long)depth_samples.size();
  std::vector<int> removed;
  long never = 0;
  for (int d : depth_samples) {
    if (d < 0)
      never++;
    else
      removed.push_back(d);
  }
  std::sort(removed.begin(), removed.end());

  // exceed(d) = #{samples with depth > d}, never-removed counting as infinite
  auto exceed = [&](long d) {
    auto it = std::upper_bound(removed.begin(), removed.end(), d);
    return (long)(removed.end() - it) + never;
  };

  std::vector<long> phi;
  long prev = -1;
  for (int n = 4; n <= n_cap; n++) {
    // target 2^-(n-3) as a fraction of N: exceed*2^(n-3) <= N
    long shift = n - 3;
    if (shift > 60) break;
    long scaled_target_den = 1L << shift;
    if (never * scaled_target_den > N) break;  // mass that never leaves exceeds the target
    long d = prev + 1;
    while (exceed(d) * scaled_target_den > N) d++;
    phi.push_back(d);
    prev = d;
  }
  if (phi.empty()) throw std::invalid_argument("quantile_schedule: no achievable level");
  return PhiSchedule(phi);
}

int nearest_open_target(const std::vector<char>& open_row, int x, TieBreak tb) {
  const int w = (int)open_row.size();
  if (x >= 0 && x < w && open_row[x]) return x;
  for (int d = 1; d < w; d++) {
    bool l = x - d >= 0 && open_row[x - d];
    bool r = x + d < w && open_row[x + d];
    if (l && r) return tb == TieBreak::Left ? x - d : x + d;
    if (l) return x - d;
    if (r) return x + d;
  }
  return -1;
}

GeometricGraph drainage_grs(const DrainageSpec& spec) {
  Rng rng(spec.seed);
  const int w = spec.width, h = spec.height;
  std::vector<std::vector<char>> open(h, std::vector<char>(w, 0));
  std::vector<std::vector<int>> id(h, std::vector<int>(w, -1));
  std::vector<Point> verts;
  for (int y = 0; y < h; y++)
    for (int x = 0; x < w; x++)
      if (rng.bernoulli((std::uint64_t)spec.p_num, (std::uint64_t)spec.p_den)) {
        open[y][x] = 1;
        id[y][x] = (int)verts.size();
        verts.push_back(Point{rat(x), rat(y)});
      }

  std::vector<GeometricGraph::Edge> edges;
  for (int y = 0; y + 1 < h; y++)
    for (int x = 0; x < w; x++) {
      if (!open[y][x]) continue;
      int t = nearest_open_target(open[y + 1], x, spec.tie_break);
      if (t >= 0) edges.push_back({id[y][x], id[y + 1][t]});
    }
  return make_graph(std::move(verts), std::move(edges), true);
}

GeometricGraph iso_points(const GridSpec& spec) {
  std::vector<Point> verts;
  const Rat third = rat(1, 3);
  for (int j = 0; j < spec.height; j++)
    for (int i = 0; i < spec.width; i++)
      verts.push_back(Point{spec.origin.x + rat(i) + third, spec.origin.y + rat(j) + third});
  return make_graph(std::move(verts), {}, false);
}

GeometricGraph graph_union(const std::vector<GeometricGraph>& gs) {
  if (gs.empty()) return GeometricGraph{};
  GeometricGraph u;
  u.oriented = true;
  for (const auto& g : gs) {
    int off = u.vertex_count();
    u.verts.insert(u.verts.end(), g.verts.begin(), g.verts.end());
    for (const auto& e : g.edges) u.edges.push_back({e.tail + off, e.head + off});
    u.oriented = u.oriented && g.oriented;
  }
  validate_graph(u);
  auto bad = validate_planarity(u);
  if (!bad.empty())
    throw std::runtime_error("graph_union: " + std::to_string(bad.size()) +
                             " improper segment intersections between layers");
  return u;
}

GeometricGraph fixture_corridor(int L, bool teeth) {
  if (L < 8) throw std::invalid_argument("fixture_corridor: L >= 8 required");
  std::map<Point, int> index;
  std::vector<Point> verts;
  std::vector<GeometricGraph::Edge> edges;
  auto vertex = [&](long x, long y) {
    Point p{rat(x), rat(y)};
    auto it = index.find(p);
    if (it != index.end()) return it->second;
    int v = (int)verts.size();
    index[p] = v;
    verts.push_back(p);
    return v;
  };
  auto edge = [&](int a, int b) { edges.push_back({a, b}); };

  for (long sy : {3L, -3L}) {
    for (long x = -L + 1; x <= L; x++) {
      int v = vertex(x, sy);
      if (x > -L + 1) edge(vertex(x - 1, sy), v);
      bool even = ((x % 2) + 2) % 2 == 0;
      if (teeth && even && x >= -L + 2 && x <= L - 2) edge(v, vertex(x, sy > 0 ? 2 : -2));
    }
  }
  for (long x = -L; x <= L; x++) {
    int v = vertex(x, 0);
    if (x > -L) edge(vertex(x - 1, 0), v);
  }
  return make_graph(std::move(verts), std::move(edges), false);
}

WindowSpec fixture_window(int L) {
  return WindowSpec(Point{rat(0), rat(0)}, rat(L - 2), rat(L));
}

}  // namespace pforest
