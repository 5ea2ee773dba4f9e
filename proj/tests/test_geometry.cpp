#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "pforest/geometry.hpp"

using namespace pforest;

namespace {

Point P(long x, long y) { return Point{rat(x), rat(y)}; }
Point Pq(long xn, long xd, long yn, long yd) { return Point{rat(xn, xd), rat(yn, yd)}; }

Point random_point(std::mt19937& g) {
  auto num = [&] { return (long)(g() % 41) - 20; };
  auto den = [&] { return (long)(g() % 4) + 1; };
  return Point{rat(num(), den()), rat(num(), den())};
}

// Andrew monotone chain on exact points; returns a CCW simple polygon.
std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return {};
  std::vector<Point> h(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); i++) {
    while (k >= 2 && orient(h[k - 2], h[k - 1], pts[i]) <= 0) k--;
    h[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orient(h[k - 2], h[k - 1], pts[i]) <= 0) k--;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(rat_str(rat(3, 6)) == "1/2");
  CHECK(rat_str(rat(-4, 2)) == "-2");
  CHECK(rat_parse("22/7") == rat(22, 7));
  CHECK(rat_parse("-5") == rat(-5));
  CHECK(rat_parse("6/4") == rat(3, 2));
  CHECK_THROWS(rat_parse("1/0"));
  CHECK_THROWS(rat_parse("abc"));
  CHECK(rat_floor_long(rat(-7, 2)) == -4);
  CHECK(rat_floor_long(rat(7, 2)) == 3);
}

TEST_CASE("segment relation classification") {
  Segment far1(P(0, 0), P(1, 0)), far2(P(2, 0), P(3, 0));
  CHECK(segment_relation(far1, far2) == SegRelation::Disjoint);

  Segment touch1(P(0, 0), P(1, 0)), touch2(P(1, 0), P(1, 1));
  CHECK(segment_relation(touch1, touch2) == SegRelation::SharedEndpointOnly);

  Segment cross1(P(0, 0), P(2, 2)), cross2(P(0, 2), P(2, 0));
  CHECK(segment_relation(cross1, cross2) == SegRelation::ImproperIntersection);

  // collinear overlap, T-touch, collinear endpoint contact
  CHECK(segment_relation(Segment(P(0, 0), P(2, 0)), Segment(P(1, 0), P(3, 0))) ==
        SegRelation::ImproperIntersection);
  CHECK(segment_relation(Segment(P(0, 0), P(2, 0)), Segment(P(1, 0), P(1, 1))) ==
        SegRelation::ImproperIntersection);
  CHECK(segment_relation(Segment(P(0, 0), P(1, 0)), Segment(P(1, 0), P(2, 0))) ==
        SegRelation::SharedEndpointOnly);
  // identical segments overlap improperly
  CHECK(segment_relation(Segment(P(0, 0), P(1, 1)), Segment(P(1, 1), P(0, 0))) ==
        SegRelation::ImproperIntersection);
  // containment
  CHECK(segment_relation(Segment(P(0, 0), P(4, 0)), Segment(P(1, 0), P(2, 0))) ==
        SegRelation::ImproperIntersection);
}

TEST_CASE("segment relation is symmetric on random input") {
  std::mt19937 g(12345);
  int checked = 0;
  while (checked < 1000) {
    Point a = random_point(g), b = random_point(g), c = random_point(g), d = random_point(g);
    if (a == b || c == d) continue;
    Segment s1(a, b), s2(c, d);
    CHECK(segment_relation(s1, s2) == segment_relation(s2, s1));
    checked++;
  }
}

TEST_CASE("point in polygon on the unit square") {
  JordanPolygon sq({P(0, 0), P(1, 0), P(1, 1), P(0, 1)});
  CHECK(point_in_polygon(Pq(1, 2, 1, 2), sq) == Region::Interior);
  CHECK(point_in_polygon(P(2, 0), sq) == Region::Exterior);
  CHECK(point_in_polygon(Pq(1, 1, 1, 2), sq) == Region::Boundary);
  CHECK(point_in_polygon(P(0, 0), sq) == Region::Boundary);
  CHECK(point_in_polygon(Pq(1, 2, 0, 1), sq) == Region::Boundary);
}

TEST_CASE("point in polygon agrees with the winding oracle") {
  std::mt19937 g(777);

  // fixed concave shapes
  std::vector<std::vector<Point>> polys = {
      {P(0, 0), P(4, 0), P(4, 1), P(1, 1), P(1, 3), P(4, 3), P(4, 4), P(0, 4)},          // C
      {P(0, 0), P(6, 0), P(6, 4), P(4, 4), P(4, 2), P(2, 2), P(2, 4), P(0, 4)},          // U
      {P(0, 0), P(8, 0), P(8, 1), P(7, 1), P(7, 3), P(5, 3), P(5, 1), P(3, 1), P(3, 3),
       P(1, 3), P(1, 1), P(0, 1)},                                                       // comb
  };
  // plus random convex hulls
  for (int r = 0; r < 40; r++) {
    std::vector<Point> cloud;
    for (int i = 0; i < 12; i++) cloud.push_back(random_point(g));
    auto h = convex_hull(cloud);
    if (h.size() >= 3) polys.push_back(h);
  }

  int agree_checked = 0;
  for (const auto& vs : polys) {
    JordanPolygon poly(vs);
    for (int i = 0; i < 40; i++) {
      Point p = random_point(g);
      Region r = point_in_polygon(p, poly);
      if (r == Region::Boundary) continue;
      int w = winding_number(p, poly);
      CHECK((r == Region::Interior) == (w != 0));
      agree_checked++;
    }
  }
  CHECK(agree_checked >= 1000);
}

TEST_CASE("polygon construction rejects degenerate input") {
  CHECK_THROWS(JordanPolygon({P(0, 0), P(1, 0)}));
  CHECK_THROWS(JordanPolygon({P(0, 0), P(1, 0), P(2, 0)}));          // zero area
  CHECK_THROWS(JordanPolygon({P(0, 0), P(2, 0), P(2, 2), P(0, 0)})); // repeated vertex
  CHECK_THROWS(JordanPolygon({P(0, 0), P(2, 0), P(0, 2), P(2, 2)})); // bowtie
  // collinear triple on the outline is fine
  JordanPolygon ok({P(0, 0), P(1, 0), P(2, 0), P(2, 2), P(0, 2)});
  CHECK(ok.size() == 5);
}

TEST_CASE("curve against polygon") {
  JordanPolygon sq({P(0, 0), P(1, 0), P(1, 1), P(0, 1)});
  CHECK(curve_vs_polygon(Polyline({P(0, 0), P(1, 1)}), sq) == CurveSide::InClosureOfInterior);
  CHECK(curve_vs_polygon(Polyline({P(2, 0), P(3, 0)}), sq) == CurveSide::InClosureOfExterior);
  CHECK(curve_vs_polygon(Polyline({Pq(1, 2, 1, 2), Pq(2, 1, 1, 2)}), sq) == CurveSide::Mixed);
  // touching the boundary from outside stays in the closed exterior
  CHECK(curve_vs_polygon(Polyline({P(1, 0), P(2, 0)}), sq) == CurveSide::InClosureOfExterior);
  // running along an edge is neutral
  CHECK(curve_vs_polygon(Polyline({P(0, 0), P(1, 0)}), sq) == CurveSide::InClosureOfInterior);
  // inside, touching boundary, back inside
  CHECK(curve_vs_polygon(Polyline({Pq(1, 2, 1, 2), P(1, 0), Pq(1, 2, 1, 4)}), sq) ==
        CurveSide::InClosureOfInterior);
}

TEST_CASE("interior points cannot reach far away inside the closed exterior") {
  JordanPolygon comb({P(0, 0), P(8, 0), P(8, 1), P(7, 1), P(7, 3), P(5, 3), P(5, 1), P(3, 1),
                      P(3, 3), P(1, 3), P(1, 1), P(0, 1)});
  std::mt19937 g(4242);
  int tested = 0;
  while (tested < 50) {
    Point p = random_point(g);
    if (point_in_polygon(p, comb) != Region::Interior) continue;
    Point far_away = P(100, 77);
    CHECK(curve_vs_polygon(Polyline({p, far_away}), comb) != CurveSide::InClosureOfExterior);
    tested++;
  }
}

TEST_CASE("path first hit and last exit") {
  Box b(rat(-1), rat(-1), rat(1), rat(1));

  auto he = path_first_hit_last_exit(Polyline({P(-2, 0), P(2, 0)}), b);
  REQUIRE(he.has_value());
  CHECK(he->first_hit.seg == 0);
  CHECK(he->first_hit.t == rat(1, 4));
  CHECK(he->first_hit.p == P(-1, 0));
  CHECK(he->last_exit.seg == 0);
  CHECK(he->last_exit.t == rat(3, 4));
  CHECK(he->last_exit.p == P(1, 0));

  CHECK(!path_first_hit_last_exit(Polyline({P(2, 2), P(3, 3)}), b).has_value());

  auto hook = path_first_hit_last_exit(Polyline({P(-2, 0), P(0, 0), P(0, 2), P(-2, 2)}), b);
  REQUIRE(hook.has_value());
  CHECK(hook->first_hit.seg == 0);
  CHECK(hook->first_hit.t == rat(1, 2));
  CHECK(hook->first_hit.p == P(-1, 0));
  CHECK(hook->last_exit.seg == 1);
  CHECK(hook->last_exit.t == rat(1, 2));
  CHECK(hook->last_exit.p == P(0, 1));

  // path dipping out of the box and back: last exit is on the later pass
  auto dip = path_first_hit_last_exit(
      Polyline({P(0, 0), P(3, 0), P(3, 3), Pq(1, 2, 3, 1), Pq(1, 2, 1, 2)}), b);
  REQUIRE(dip.has_value());
  CHECK(dip->first_hit.seg == 0);
  CHECK(dip->first_hit.t == rat(0));
  CHECK(dip->last_exit.seg == 3);
  CHECK(dip->last_exit.t == rat(1));
}

TEST_CASE("box clipping") {
  Box b(rat(0), rat(0), rat(2), rat(2));
  auto full = clip_segment_box(Segment(P(-2, 1), P(4, 1)), b);
  REQUIRE(full.has_value());
  CHECK(full->first == rat(1, 3));
  CHECK(full->second == rat(2, 3));

  auto inside = clip_segment_box(Segment(Pq(1, 2, 1, 2), P(1, 1)), b);
  REQUIRE(inside.has_value());
  CHECK(inside->first == rat(0));
  CHECK(inside->second == rat(1));

  auto corner = clip_segment_box(Segment(P(-1, 1), P(1, 3)), b);  // grazes (0,2)
  REQUIRE(corner.has_value());
  CHECK(corner->first == corner->second);
  CHECK(corner->first == rat(1, 2));

  CHECK(!clip_segment_box(Segment(P(3, 0), P(3, 3)), b).has_value());

  CHECK(segment_meets_boundary(Segment(P(1, 1), P(1, 5)), b));
  CHECK(!segment_meets_boundary(Segment(Pq(1, 2, 1, 2), P(1, 1)), b));
  CHECK(segment_meets_boundary(Segment(P(0, 0), P(0, 2)), b));  // along a side
}

TEST_CASE("linear piece intersection") {
  auto piece = [](Point o, long dx, long dy, Rat lo, std::optional<Rat> hi) {
    return LinearPiece{o, normalize_dir(rat(dx), rat(dy)), lo, hi};
  };

  // transversal crossing
  PieceHit h = piece_intersect(piece(P(0, 0), 1, 0, rat(0), rat(4)),
                               piece(P(2, -1), 0, 1, rat(0), rat(3)));
  CHECK(h.kind == PieceHit::At);
  CHECK(h.s1 == rat(2));
  CHECK(h.s2 == rat(1));

  // crossing outside the domain
  CHECK(piece_intersect(piece(P(0, 0), 1, 0, rat(0), rat(1)),
                        piece(P(2, -1), 0, 1, rat(0), rat(3))).kind == PieceHit::None);

  // collinear overlap
  h = piece_intersect(piece(P(0, 0), 1, 0, rat(0), rat(4)), piece(P(2, 0), 1, 0, rat(0), rat(5)));
  CHECK(h.kind == PieceHit::Along);
  CHECK(h.a1 == rat(2));
  REQUIRE(h.b1.has_value());
  CHECK(*h.b1 == rat(4));

  // collinear overlap with an unbounded piece
  h = piece_intersect(piece(P(0, 0), 1, 0, rat(0), std::nullopt),
                      piece(P(3, 0), 1, 0, rat(0), std::nullopt));
  CHECK(h.kind == PieceHit::Along);
  CHECK(h.a1 == rat(3));
  CHECK(!h.b1.has_value());

  // collinear single-point contact
  h = piece_intersect(piece(P(0, 0), 1, 0, rat(0), rat(2)), piece(P(2, 0), 1, 0, rat(0), rat(1)));
  CHECK(h.kind == PieceHit::At);
  CHECK(h.s1 == rat(2));
  CHECK(h.s2 == rat(0));

  // parallel, never meet
  CHECK(piece_intersect(piece(P(0, 0), 1, 0, rat(0), std::nullopt),
                        piece(P(0, 1), 1, 0, rat(0), std::nullopt)).kind == PieceHit::None);

  // anti-parallel overlap still reports the interval on piece 1
  h = piece_intersect(piece(P(0, 0), 1, 0, rat(0), rat(4)), piece(P(3, 0), -1, 0, rat(0), rat(2)));
  CHECK(h.kind == PieceHit::Along);
  CHECK(h.a1 == rat(1));
  REQUIRE(h.b1.has_value());
  CHECK(*h.b1 == rat(3));
}

TEST_CASE("direction normalization") {
  CHECK(normalize_dir(rat(4), rat(-2)) == normalize_dir(rat(2), rat(-1)));
  CHECK(normalize_dir(rat(1, 3), rat(1, 6)) == normalize_dir(rat(2), rat(1)));
  Dir d = normalize_dir(rat(0), rat(-5));
  CHECK(d.dx == rat(0));
  CHECK(d.dy == rat(-1));
  CHECK_THROWS(normalize_dir(rat(0), rat(0)));
}

TEST_CASE("topological line parametrization") {
  PLTopoLine axis(normalize_dir(rat(-1), rat(0)), Polyline({P(0, 0), P(1, 0)}),
                  normalize_dir(rat(1), rat(0)));
  CHECK(axis.at(rat(-2)) == P(-2, 0));
  CHECK(axis.at(rat(1, 2)) == Pq(1, 2, 0, 1));
  CHECK(axis.at(rat(3)) == P(3, 0));

  PLTopoLine bump(normalize_dir(rat(-1), rat(0)), Polyline({P(-1, 0), P(0, 2), P(1, 0)}),
                  normalize_dir(rat(1), rat(0)));
  CHECK(bump.at(rat(1, 2)) == Pq(-1, 2, 1, 1));
  CHECK(bump.at(rat(2)) == P(1, 0));
  CHECK(bump.at(rat(4)) == P(3, 0));
  CHECK(bump.pieces().size() == 4);

  // global parameters of the pieces agree with at()
  for (const auto& ip : bump.pieces()) {
    Rat local = ip.piece.lo + rat(1, 3);
    if (ip.piece.hi && *ip.piece.hi < local) local = (*ip.piece.hi + ip.piece.lo) / 2;
    Rat global = ip.offset + ip.scale * local;
    CHECK(bump.at(global) == ip.piece.at(local));
  }

  // left ray folded back over the chain is not simple
  CHECK_THROWS(PLTopoLine(normalize_dir(rat(1), rat(0)), Polyline({P(0, 0), P(1, 0)}),
                          normalize_dir(rat(1), rat(0))));
  // rays colliding with each other
  CHECK_THROWS(PLTopoLine(normalize_dir(rat(0), rat(1)), Polyline({P(0, 0), P(1, 0)}),
                          normalize_dir(rat(-1), rat(1))));
  // chain self-intersection
  CHECK_THROWS(PLTopoLine(normalize_dir(rat(0), rat(-1)),
                          Polyline({P(0, 0), P(2, 0), P(2, 2), P(1, -1)}),
                          normalize_dir(rat(0), rat(1))));
}

TEST_CASE("exactness prevents drifting classifications") {
  // A point microscopically off a diagonal stays classified by exact sign.
  JordanPolygon tri({P(0, 0), P(1000000, 1), P(0, 2)});
  Point nearly(rat(500000), rat(1, 2) + rat(1, 1000000000000L));
  CHECK(point_in_polygon(nearly, tri) == Region::Interior);
  Point on_edge(rat(500000), rat(1, 2));
  CHECK(point_in_polygon(on_edge, tri) == Region::Boundary);
}
