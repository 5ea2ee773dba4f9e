#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pforest/rat.hpp"

namespace pforest {

struct Point {
  Rat x, y;
};

inline bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(const Point& a, const Point& b) { return !(a == b); }
// Total order: lexicographic on (x, y).
inline bool operator<(const Point& a, const Point& b) {
  int c = cmp(a.x, b.x);
  if (c != 0) return c < 0;
  return cmp(a.y, b.y) < 0;
}

// sign of the cross product (b-a) x (c-a): >0 left turn, <0 right turn, 0 collinear
int orient(const Point& a, const Point& b, const Point& c);

// Non-degenerate segment (endpoints distinct).
struct Segment {
  Point a, b;
  Segment(Point a_, Point b_);
};

// p lies on the closed segment (endpoints included)
bool on_segment(const Point& p, const Segment& s);

enum class SegRelation {
  Disjoint,             // closed segments do not meet
  SharedEndpointOnly,   // meet in exactly one point which is an endpoint of both
  ImproperIntersection  // anything else: interior crossing, T-touch, overlap
};

// Symmetric exact classification of two closed segments.
SegRelation segment_relation(const Segment& s, const Segment& t);

// true iff the closed segments share at least one point
bool segments_meet(const Segment& s, const Segment& t);

// Closed axis-aligned box [x0,x1] x [y0,y1].
struct Box {
  Rat x0, y0, x1, y1;
  Box(Rat x0_, Rat y0_, Rat x1_, Rat y1_);
  bool contains(const Point& p) const;           // closed
  bool strictly_contains(const Point& p) const;  // open interior
  std::vector<Segment> sides() const;            // 4 boundary sides, fixed order
};

// Parameter interval [t0,t1] of seg(t)=a+t(b-a) inside the closed box; nullopt if disjoint.
std::optional<std::pair<Rat, Rat>> clip_segment_box(const Segment& s, const Box& b);

bool segment_meets_box(const Segment& s, const Box& b);
bool segment_meets_boundary(const Segment& s, const Box& b);  // meets the box's topological boundary

// Open polygonal path: >= 2 points, consecutive points distinct.
struct Polyline {
  std::vector<Point> pts;
  explicit Polyline(std::vector<Point> p);
  size_t segment_count() const { return pts.size() - 1; }
  Segment seg(size_t i) const { return Segment(pts[i], pts[i + 1]); }
  bool is_simple() const;
};

// Simple closed polygon, counterclockwise or clockwise, nonzero area.
// Collinear consecutive triples are allowed as long as the cycle stays simple.
struct JordanPolygon {
  std::vector<Point> v;
  explicit JordanPolygon(std::vector<Point> pts);
  size_t size() const { return v.size(); }
  Segment edge(size_t i) const { return Segment(v[i], v[(i + 1) % v.size()]); }
  Polyline closed_polyline() const;  // v0..vn-1,v0
  Box bounding_box() const;
};

// Twice the signed area (shoelace); nonzero for any valid JordanPolygon.
Rat polygon_area2(const std::vector<Point>& v);

enum class Region { Interior, Boundary, Exterior };

// Even-odd rule with exact boundary detection.
Region point_in_polygon(const Point& p, const JordanPolygon& poly);

// Signed winding number; p must not lie on the boundary. Kept as a test oracle
// against the even-odd classifier (they agree on simple polygons).
int winding_number(const Point& p, const JordanPolygon& poly);

enum class CurveSide { InClosureOfInterior, InClosureOfExterior, Mixed };

// Splits the curve at every boundary crossing and classifies each open piece by
// its midpoint. Pieces running along the boundary are neutral (they lie in both
// closures); a curve contained in the boundary reports InClosureOfInterior.
CurveSide curve_vs_polygon(const Polyline& c, const JordanPolygon& poly);

struct PathParam {
  size_t seg;  // segment index
  Rat t;       // parameter in [0,1] on that segment
  Point p;
};
struct HitExit {
  PathParam first_hit;   // first parameter where the path meets the closed box
  PathParam last_exit;   // last parameter where the path lies in the closed box
};
std::optional<HitExit> path_first_hit_last_exit(const Polyline& path, const Box& b);

// Rational direction, normalized to the primitive integer vector (unique exact
// representative of the ray direction).
struct Dir {
  Rat dx, dy;
};
Dir normalize_dir(const Rat& dx, const Rat& dy);
inline bool operator==(const Dir& a, const Dir& b) { return a.dx == b.dx && a.dy == b.dy; }

// One straight piece of a curve: o + s*d for s in [lo, hi], hi absent = +inf.
struct LinearPiece {
  Point o;
  Dir d;
  Rat lo;
  std::optional<Rat> hi;
  Point at(const Rat& s) const;
};

struct PieceHit {
  enum Kind { None, At, Along } kind = None;
  Rat s1, s2;              // At: parameters on piece 1 / piece 2
  Rat a1;                  // Along: overlap interval on piece 1 ...
  std::optional<Rat> b1;   // ... upper end, absent = unbounded
};
// Exact intersection of two linear pieces. Along is returned only for a
// positive-length collinear overlap; single-point contact reports At.
PieceHit piece_intersect(const LinearPiece& p1, const LinearPiece& p2);

// Simple bi-infinite piecewise-linear curve: left ray, chain, right ray.
// left_ray_dir points away from chain.front(), right_ray_dir away from chain.back().
// Global parameter: t<=0 on the left ray (point = front + (-t)*left_ray_dir),
// t in [i,i+1] linear on chain segment i, t>=m-1 on the right ray.
struct PLTopoLine {
  Dir left_ray_dir;
  Polyline chain;
  Dir right_ray_dir;
  PLTopoLine(Dir left, Polyline chain_, Dir right);

  Point at(const Rat& t) const;
  Rat right_base() const { return rat((long)chain.pts.size() - 1); }
  // decomposition into linear pieces with their global-parameter affine maps:
  // global = offset + scale * local
  struct IndexedPiece {
    LinearPiece piece;
    Rat offset, scale;
  };
  std::vector<IndexedPiece> pieces() const;
};

}  // namespace pforest
