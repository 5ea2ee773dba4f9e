#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "pforest/forest.hpp"
#include "pforest/generators.hpp"

using namespace pforest;

namespace {

Point P(long x, long y) { return Point{rat(x), rat(y)}; }

std::vector<int> degrees(const GeometricGraph& g) {
  std::vector<int> deg(g.vertex_count(), 0);
  for (int e : canonical_edges(g)) {
    deg[g.edges[e].tail]++;
    deg[g.edges[e].head]++;
  }
  return deg;
}

std::set<std::pair<Point, Point>> edge_set(const GeometricGraph& g) {
  std::set<std::pair<Point, Point>> s;
  for (int e : canonical_edges(g)) {
    Point a = g.verts[g.edges[e].tail], b = g.verts[g.edges[e].head];
    if (b < a) std::swap(a, b);
    s.insert({a, b});
  }
  return s;
}

bool unit_axis_edge(const Segment& s) {
  Rat dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
  return (dx == rat(0) && (dy == rat(1) || dy == rat(-1))) ||
         (dy == rat(0) && (dx == rat(1) || dx == rat(-1)));
}

}  // namespace

TEST_CASE("spec validation") {
  CHECK_THROWS(GridSpec(1, 5));
  CHECK_THROWS(GridSpec(5, 1));
  CHECK_THROWS(PhiSchedule({}));
  CHECK_THROWS(PhiSchedule({-1}));
  CHECK_THROWS(PhiSchedule({2, 2}));
  CHECK_THROWS(PhiSchedule({3, 1}));
  CHECK_THROWS(DrainageSpec(5, 5, 0, 2, TieBreak::Left, 1));
  CHECK_THROWS(DrainageSpec(5, 5, 3, 2, TieBreak::Left, 1));
  CHECK_THROWS(DrainageSpec(5, 5, 1, 0, TieBreak::Left, 1));
}

TEST_CASE("wilson trees span the grid") {
  GridSpec spec(6, 5, P(2, -1));
  auto g = ust_wilson(spec, 17);
  CHECK(g.vertex_count() == 30);
  CHECK(g.edge_count() == 29);
  CHECK(!g.oriented);
  CHECK(connected_components(g).count == 1);
  CHECK(validate_forest(g).ok);
  CHECK(validate_planarity(g).empty());
  for (int e = 0; e < g.edge_count(); e++) CHECK(unit_axis_edge(g.edge_segment(e)));
  // vertices are exactly the translated grid sites
  std::set<Point> seen(g.verts.begin(), g.verts.end());
  for (long i = 0; i < 6; i++)
    for (long j = 0; j < 5; j++) CHECK(seen.count(P(2 + i, -1 + j)) == 1);
}

TEST_CASE("wilson determinism and seed sensitivity") {
  GridSpec spec(10, 10);
  auto a = ust_wilson(spec, 424242);
  auto b = ust_wilson(spec, 424242);
  CHECK(a.verts == b.verts);
  REQUIRE(a.edge_count() == b.edge_count());
  for (int e = 0; e < a.edge_count(); e++) {
    CHECK(a.edges[e].tail == b.edges[e].tail);
    CHECK(a.edges[e].head == b.edges[e].head);
  }
  auto c = ust_wilson(spec, 424243);
  CHECK(edge_set(a) != edge_set(c));
}

TEST_CASE("wilson trees do not favor an axis") {
  // diagonal reflection is a grid automorphism, so horizontal and vertical
  // edge counts agree in expectation
  GridSpec spec(20, 20);
  double sum_frac = 0;
  const int seeds = 200;
  for (int s = 0; s < seeds; s++) {
    auto g = ust_wilson(spec, 90000 + (std::uint64_t)s);
    int horiz = 0;
    for (int e = 0; e < g.edge_count(); e++) {
      Segment seg = g.edge_segment(e);
      if (seg.a.y == seg.b.y) horiz++;
    }
    double frac = (double)horiz / g.edge_count();
    CHECK(frac > 0.3);
    CHECK(frac < 0.7);
    sum_frac += frac;
  }
  CHECK(std::abs(sum_frac / seeds - 0.5) < 0.02);
}

TEST_CASE("dual graph counts") {
  GridSpec small(2, 2);
  auto t = ust_wilson(small, 1);
  auto d = dual_tree(t, small);
  CHECK(d.vertex_count() == 1);
  CHECK(d.edge_count() == 0);
  CHECK(d.verts[0] == Point{rat(1, 2), rat(1, 2)});

  GridSpec spec(3, 3);
  auto d3 = dual_tree(ust_wilson(spec, 2), spec);
  CHECK(d3.vertex_count() == 4);
  CHECK(validate_forest(d3).ok);
}

TEST_CASE("dual graph crosses exactly the absent grid edges") {
  GridSpec spec(7, 6, P(-3, 4));
  for (std::uint64_t seed : {5ULL, 6ULL, 7ULL}) {
    auto t = ust_wilson(spec, seed);
    auto d = dual_tree(t, spec);
    CHECK(d.vertex_count() == 30);
    CHECK(validate_forest(d).ok);

    auto primal = edge_set(t), dual = edge_set(d);

    // boundary census pins the shape: the dual picks up one edge per tree
    // edge on the frame and splits into one piece per absent frame edge
    int frame_in_tree = 0;
    const int frame_total = 22;
    for (auto& [a, b] : primal) {
      bool vertical_side = (a.x == b.x) && (a.x == rat(-3) || a.x == rat(3));
      bool horizontal_side = (a.y == b.y) && (a.y == rat(4) || a.y == rat(9));
      if (vertical_side || horizontal_side) frame_in_tree++;
    }
    CHECK(d.edge_count() == 8 + frame_in_tree);
    CHECK(connected_components(d).count == frame_total - frame_in_tree);
    auto at = [&](long num_x2, long num_y2) {  // coordinates in half units
      return Point{rat(-6 + num_x2, 2), rat(8 + num_y2, 2)};
    };
    // horizontal face adjacency across the vertical grid edge it crosses
    for (long i = 0; i + 1 < 6; i++)
      for (long j = 0; j < 5; j++) {
        bool dual_has = dual.count({at(2 * i + 1, 2 * j + 1), at(2 * i + 3, 2 * j + 1)}) > 0;
        bool primal_has = primal.count({at(2 * (i + 1), 2 * j), at(2 * (i + 1), 2 * j + 2)}) > 0;
        CHECK(dual_has != primal_has);
      }
    // vertical face adjacency across the horizontal grid edge it crosses
    for (long i = 0; i < 6; i++)
      for (long j = 0; j + 1 < 5; j++) {
        bool dual_has = dual.count({at(2 * i + 1, 2 * j + 1), at(2 * i + 1, 2 * j + 3)}) > 0;
        bool primal_has = primal.count({at(2 * i, 2 * (j + 1)), at(2 * i + 2, 2 * (j + 1))}) > 0;
        CHECK(dual_has != primal_has);
      }

    // tree and dual interleave without touching
    auto u = graph_union({t, d});
    CHECK(u.vertex_count() == 72);
    CHECK(u.edge_count() == 41 + d.edge_count());
  }
}

TEST_CASE("contour of small shapes") {
  auto dot = make_graph({P(0, 0)}, {}, false);
  auto c1 = contour(dot, rat(1, 4));
  CHECK(c1.vertex_count() == 4);
  CHECK(c1.edge_count() == 4);
  for (int d : degrees(c1)) CHECK(d == 2);
  std::set<Point> corners(c1.verts.begin(), c1.verts.end());
  CHECK(corners.count(Point{rat(1, 4), rat(1, 4)}) == 1);
  CHECK(corners.count(Point{rat(-1, 4), rat(-1, 4)}) == 1);

  auto edge = make_graph({P(0, 0), P(1, 0)}, {{0, 1}}, false);
  auto c2 = contour(edge, rat(1, 4));
  CHECK(c2.vertex_count() == 8);
  CHECK(c2.edge_count() == 8);
  for (int d : degrees(c2)) CHECK(d == 2);
  CHECK(connected_components(c2).count == 1);

  auto path = make_graph({P(0, 0), P(1, 0), P(1, 1)}, {{0, 1}, {1, 2}}, false);
  auto c3 = contour(path, rat(1, 3));
  CHECK(c3.vertex_count() == 12);
  CHECK(c3.edge_count() == 12);
  for (int d : degrees(c3)) CHECK(d == 2);
  CHECK(connected_components(c3).count == 1);
}

TEST_CASE("contour of a spanning tree is a single cycle") {
  GridSpec spec(5, 5);
  for (std::uint64_t seed : {3ULL, 4ULL}) {
    auto t = ust_wilson(spec, seed);
    auto c = contour(t, rat(1, 4));
    CHECK(c.vertex_count() == 100);
    CHECK(c.edge_count() == 100);
    for (int d : degrees(c)) CHECK(d == 2);
    CHECK(connected_components(c).count == 1);
    CHECK(validate_planarity(c).empty());
    // the drawing stays clear of the tree it surrounds
    auto u = graph_union({t, c});
    CHECK(u.vertex_count() == 125);
  }
}

TEST_CASE("nearest open target") {
  std::vector<char> row{0, 1, 0, 1, 0};
  CHECK(nearest_open_target(row, 2, TieBreak::Left) == 1);
  CHECK(nearest_open_target(row, 2, TieBreak::Right) == 3);
  CHECK(nearest_open_target(row, 0, TieBreak::Left) == 1);
  CHECK(nearest_open_target(row, 0, TieBreak::Right) == 1);
  CHECK(nearest_open_target(row, 1, TieBreak::Left) == 1);
  CHECK(nearest_open_target(row, 4, TieBreak::Left) == 3);
  std::vector<char> empty_row{0, 0, 0};
  CHECK(nearest_open_target(empty_row, 1, TieBreak::Left) == -1);
}

TEST_CASE("drainage with every site open is a column forest") {
  auto g = drainage_grs(DrainageSpec(5, 4, 1, 1, TieBreak::Right, 123));
  CHECK(g.oriented);
  CHECK(g.vertex_count() == 20);
  CHECK(g.edge_count() == 15);
  CHECK(validate_forest(g).ok);
  CHECK(validate_planarity(g).empty());
  for (int e = 0; e < g.edge_count(); e++) {
    Segment s = g.edge_segment(e);
    CHECK(s.a.x == s.b.x);
    CHECK(s.b.y - s.a.y == rat(1));
  }
  // start of each column walks straight to the top
  for (int v = 0; v < g.vertex_count(); v++) {
    if (g.verts[v].y != rat(0)) continue;
    auto walk = forward_path(g, v);
    CHECK(walk.size() == 4);
    CHECK(walk.back() == Point{g.verts[v].x, rat(3)});
  }
}

TEST_CASE("drainage streams never cross") {
  for (TieBreak tb : {TieBreak::Left, TieBreak::Right}) {
    for (std::uint64_t seed = 0; seed < 10; seed++) {
      DrainageSpec spec(30, 20, 1, 2, tb, 5000 + seed);
      auto g = drainage_grs(spec);
      CHECK(validate_planarity(g).empty());
      CHECK(validate_forest(g).ok);

      // out-degree at most one, and only the reachable top rows lack one
      std::vector<int> outdeg(g.vertex_count(), 0);
      for (const auto& e : g.edges) outdeg[e.tail]++;
      for (int d : outdeg) CHECK(d <= 1);

      // successor column is monotone in the source column, row by row
      std::map<std::pair<Rat, Rat>, Rat> target;  // (y, x) -> successor x
      for (const auto& e : g.edges) target[{g.verts[e.tail].y, g.verts[e.tail].x}] = g.verts[e.head].x;
      Rat cur_y = rat(-1), last_target = rat(0);
      bool have_last = false;
      for (auto& [key, tx] : target) {
        if (key.first != cur_y) {
          cur_y = key.first;
          have_last = false;
        }
        if (have_last) CHECK(last_target <= tx);
        last_target = tx;
        have_last = true;
      }

      // determinism
      auto g2 = drainage_grs(spec);
      CHECK(g.verts == g2.verts);
      CHECK(g.edge_count() == g2.edge_count());
    }
  }
}

TEST_CASE("isolated point field") {
  auto g = iso_points(GridSpec(3, 2, P(5, 7)));
  CHECK(g.vertex_count() == 6);
  CHECK(g.edge_count() == 0);
  std::set<Point> pts(g.verts.begin(), g.verts.end());
  for (long i = 0; i < 3; i++)
    for (long j = 0; j < 2; j++)
      CHECK(pts.count(Point{rat(5) + rat(i) + rat(1, 3), rat(7) + rat(j) + rat(1, 3)}) == 1);
}

TEST_CASE("graph union concatenates disjoint graphs") {
  auto a = make_graph({P(0, 0), P(1, 0)}, {{0, 1}}, true);
  auto b = make_graph({P(0, 5), P(1, 5), P(2, 5)}, {{0, 1}, {1, 2}}, true);
  auto u = graph_union({a, b});
  CHECK(u.vertex_count() == 5);
  CHECK(u.edge_count() == 3);
  CHECK(u.oriented);
  CHECK(u.verts[2] == P(0, 5));
  CHECK(u.edges[1].tail == 2);
  CHECK(u.edges[1].head == 3);

  auto c = make_graph({P(9, 9)}, {}, false);
  CHECK(!graph_union({a, c}).oriented);

  CHECK(graph_union({}).vertex_count() == 0);

  // coincident vertex positions are rejected
  auto dup = make_graph({P(0, 0)}, {}, false);
  CHECK_THROWS(graph_union({a, dup}));

  // crossing edges are rejected
  auto x1 = make_graph({P(0, 0), P(2, 2)}, {{0, 1}}, false);
  auto x2 = make_graph({P(0, 2), P(2, 0)}, {{0, 1}}, false);
  CHECK_THROWS_AS(graph_union({x1, x2}), std::runtime_error);
}

TEST_CASE("quantile schedule from depth samples") {
  std::vector<int> samples{1, 1, 1, 1, 2, 2, 3, 8};
  auto sched = quantile_schedule(samples, 8);
  CHECK(sched.phi == std::vector<long>{1, 2, 3, 8, 9});
  CHECK(sched.n_max() == 8);

  // truncation: mass that never peels away caps the reachable levels
  auto trunc = quantile_schedule({1, 2, -1, -1}, 12);
  CHECK(trunc.phi == std::vector<long>{2});
  CHECK(trunc.n_max() == 4);

  CHECK_THROWS(quantile_schedule({}, 8));
  CHECK_THROWS(quantile_schedule({-1, -1}, 8));  // no achievable level at all
}

TEST_CASE("nested contour union") {
  auto path = make_graph({P(0, 0), P(1, 0), P(2, 0)}, {{0, 1}, {1, 2}}, false);

  auto single = g_phi(path, PhiSchedule({0}));
  CHECK(single.vertex_count() == 12);
  CHECK(single.edge_count() == 12);

  auto two = g_phi(path, PhiSchedule({0, 1}));
  CHECK(two.vertex_count() == 16);
  CHECK(two.edge_count() == 16);
  CHECK(validate_planarity(two).empty());
  // layer scales: outer ring at quarter offsets, inner square at fifths
  std::set<Point> pts(two.verts.begin(), two.verts.end());
  CHECK(pts.count(Point{rat(-1, 4), rat(-1, 4)}) == 1);
  CHECK(pts.count(Point{rat(1) + rat(-1, 5), rat(-1, 5)}) == 1);

  // peeling to nothing stops the union early
  auto edge = make_graph({P(0, 0), P(1, 0)}, {{0, 1}}, false);
  auto stopped = g_phi(edge, PhiSchedule({0, 2}));
  CHECK(stopped.vertex_count() == 8);
  CHECK(stopped.edge_count() == 8);

  // larger composite stays planar and two-regular per layer
  auto t = ust_wilson(GridSpec(6, 6), 11);
  auto layered = g_phi(t, PhiSchedule({0, 1, 2}));
  CHECK(validate_planarity(layered).empty());
  CHECK(layered.vertex_count() == layered.edge_count());
}

TEST_CASE("corridor fixture geometry") {
  CHECK_THROWS(fixture_corridor(7));

  auto g = fixture_corridor(8);
  CHECK(g.vertex_count() == 63);
  CHECK(g.edge_count() == 60);
  CHECK(connected_components(g).count == 3);
  CHECK(validate_forest(g).ok);
  CHECK(validate_planarity(g).empty());

  std::set<Point> pts(g.verts.begin(), g.verts.end());
  CHECK(pts.count(P(-7, 3)) == 1);   // west end of the top spine
  CHECK(pts.count(P(8, 3)) == 1);    // east end reaches the frame
  CHECK(pts.count(P(-8, 3)) == 0);
  CHECK(pts.count(P(-6, 2)) == 1);   // tooth below the top spine
  CHECK(pts.count(P(-7, 2)) == 0);   // odd columns have no teeth
  CHECK(pts.count(P(0, -2)) == 1);   // tooth above the bottom spine
  CHECK(pts.count(P(-8, 0)) == 1);   // bare middle path spans the frame
  CHECK(pts.count(P(8, 0)) == 1);

  auto bare = fixture_corridor(8, false);
  CHECK(bare.vertex_count() == 49);
  CHECK(bare.edge_count() == 46);

  WindowSpec w = fixture_window(8);
  CHECK(w.origin == P(0, 0));
  CHECK(w.inner_half == rat(6));
  CHECK(w.outer_half == rat(8));
  auto r = classify_components(g, w);
  CHECK(r.n0 == 0);
  CHECK(r.n1 == 2);
  CHECK(r.n2 == 1);
  CHECK(r.n3plus == 0);
}
