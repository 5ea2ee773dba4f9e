#include "pforest/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace pforest {

int orient(const Point& a, const Point& b, const Point& c) {
  Rat v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return sign(v);
}

Segment::Segment(Point a_, Point b_) : a(std::move(a_)), b(std::move(b_)) {
  if (a == b) throw std::invalid_argument("Segment: endpoints must be distinct");
}

bool on_segment(const Point& p, const Segment& s) {
  if (orient(s.a, s.b, p) != 0) return false;
  const Point lo = std::min(s.a, s.b), hi = std::max(s.a, s.b);
  return !(p < lo) && !(hi < p);
}

namespace {

// Collinear points are totally ordered by the lexicographic point order along
// their common line (possibly reversed), so 1-d overlap logic can reuse it.
SegRelation collinear_relation(const Segment& s, const Segment& t) {
  Point slo = std::min(s.a, s.b), shi = std::max(s.a, s.b);
  Point tlo = std::min(t.a, t.b), thi = std::max(t.a, t.b);
  Point lo = std::max(slo, tlo), hi = std::min(shi, thi);
  if (hi < lo) return SegRelation::Disjoint;
  if (lo == hi) return SegRelation::SharedEndpointOnly;  // endpoint of both by construction
  return SegRelation::ImproperIntersection;              // positive-length overlap
}

}  // namespace

SegRelation segment_relation(const Segment& s, const Segment& t) {
  int d1 = orient(s.a, s.b, t.a);
  int d2 = orient(s.a, s.b, t.b);
  int d3 = orient(t.a, t.b, s.a);
  int d4 = orient(t.a, t.b, s.b);
  if (d1 == 0 && d2 == 0) return collinear_relation(s, t);
  if (d1 * d2 > 0 || d3 * d4 > 0) return SegRelation::Disjoint;
  // Exactly one contact point; identify it when it is a segment endpoint.
  Point p{rat(0), rat(0)};
  if (d1 == 0)
    p = t.a;
  else if (d2 == 0)
    p = t.b;
  else if (d3 == 0)
    p = s.a;
  else if (d4 == 0)
    p = s.b;
  else
    return SegRelation::ImproperIntersection;  // transversal interior crossing
  bool end_s = (p == s.a || p == s.b);
  bool end_t = (p == t.a || p == t.b);
  return (end_s && end_t) ? SegRelation::SharedEndpointOnly : SegRelation::ImproperIntersection;
}

bool segments_meet(const Segment& s, const Segment& t) {
  return segment_relation(s, t) != SegRelation::Disjoint;
}

Box::Box(Rat x0_, Rat y0_, Rat x1_, Rat y1_)
    : x0(std::move(x0_)), y0(std::move(y0_)), x1(std::move(x1_)), y1(std::move(y1_)) {
  if (!(x0 < x1) || !(y0 < y1)) throw std::invalid_argument("Box: need x0<x1 and y0<y1");
}

bool Box::contains(const Point& p) const {
  return !(p.x < x0) && !(x1 < p.x) && !(p.y < y0) && !(y1 < p.y);
}

bool Box::strictly_contains(const Point& p) const {
  return x0 < p.x && p.x < x1 && y0 < p.y && p.y < y1;
}

std::vector<Segment> Box::sides() const {
  Point a{x0, y0}, b{x1, y0}, c{x1, y1}, d{x0, y1};
  return {Segment(a, b), Segment(b, c), Segment(c, d), Segment(d, a)};
}

std::optional<std::pair<Rat, Rat>> clip_segment_box(const Segment& s, const Box& b) {
  Rat dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
  Rat t0 = rat(0), t1 = rat(1);
  // Liang-Barsky, exact: constraints p*t <= q.
  const Rat ps[4] = {-dx, dx, -dy, dy};
  const Rat qs[4] = {s.a.x - b.x0, b.x1 - s.a.x, s.a.y - b.y0, b.y1 - s.a.y};
  for (int i = 0; i < 4; i++) {
    int sp = sign(ps[i]);
    if (sp == 0) {
      if (sign(qs[i]) < 0) return std::nullopt;
    } else {
      Rat r = qs[i] / ps[i];
      if (sp < 0) {
        if (r > t0) t0 = r;
      } else {
        if (r < t1) t1 = r;
      }
    }
  }
  if (t0 > t1) return std::nullopt;
  return std::make_pair(t0, t1);
}

bool segment_meets_box(const Segment& s, const Box& b) { return clip_segment_box(s, b).has_value(); }

bool segment_meets_boundary(const Segment& s, const Box& b) {
  if (b.strictly_contains(s.a) && b.strictly_contains(s.b)) return false;
  return segment_meets_box(s, b);
}

Polyline::Polyline(std::vector<Point> p) : pts(std::move(p)) {
  if (pts.size() < 2) throw std::invalid_argument("Polyline: need at least 2 points");
  for (size_t i = 0; i + 1 < pts.size(); i++)
    if (pts[i] == pts[i + 1]) throw std::invalid_argument("Polyline: consecutive duplicate point");
}

bool Polyline::is_simple() const {
  size_t m = segment_count();
  for (size_t i = 0; i < m; i++)
    for (size_t j = i + 1; j < m; j++) {
      SegRelation r = segment_relation(seg(i), seg(j));
      if (j == i + 1) {
        if (r != SegRelation::SharedEndpointOnly) return false;
      } else {
        if (r != SegRelation::Disjoint) return false;
      }
    }
  return true;
}

Rat polygon_area2(const std::vector<Point>& v) {
  Rat s = rat(0);
  for (size_t i = 0; i < v.size(); i++) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % v.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return s;
}

JordanPolygon::JordanPolygon(std::vector<Point> pts) : v(std::move(pts)) {
  size_t n = v.size();
  if (n < 3) throw std::invalid_argument("JordanPolygon: need at least 3 vertices");
  for (size_t i = 0; i < n; i++)
    if (v[i] == v[(i + 1) % n]) throw std::invalid_argument("JordanPolygon: duplicate consecutive vertex");
  for (size_t i = 0; i < n; i++)
    for (size_t j = i + 1; j < n; j++) {
      bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      SegRelation r = segment_relation(edge(i), edge(j));
      if (adjacent) {
        if (r != SegRelation::SharedEndpointOnly)
          throw std::invalid_argument("JordanPolygon: adjacent edges overlap or fold back");
      } else {
        if (r != SegRelation::Disjoint) throw std::invalid_argument("JordanPolygon: cycle is not simple");
      }
    }
  if (sign(polygon_area2(v)) == 0) throw std::invalid_argument("JordanPolygon: zero area");
}

Polyline JordanPolygon::closed_polyline() const {
  std::vector<Point> p = v;
  p.push_back(v.front());
  return Polyline(std::move(p));
}

Box JordanPolygon::bounding_box() const {
  Rat x0 = v[0].x, x1 = v[0].x, y0 = v[0].y, y1 = v[0].y;
  for (const Point& p : v) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  return Box(x0 - 1, y0 - 1, x1 + 1, y1 + 1);
}

Region point_in_polygon(const Point& p, const JordanPolygon& poly) {
  size_t n = poly.size();
  for (size_t i = 0; i < n; i++)
    if (on_segment(p, poly.edge(i))) return Region::Boundary;
  // even-odd crossing count of the rightward horizontal ray; the half-open
  // rule below handles ray-through-vertex configurations consistently
  bool inside = false;
  for (size_t i = 0; i < n; i++) {
    const Point& a = poly.v[i];
    const Point& b = poly.v[(i + 1) % n];
    bool a_above = a.y > p.y, b_above = b.y > p.y;
    if (a_above == b_above) continue;
    Rat xint = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
    if (xint > p.x) inside = !inside;
  }
  return inside ? Region::Interior : Region::Exterior;
}

int winding_number(const Point& p, const JordanPolygon& poly) {
  size_t n = poly.size();
  for (size_t i = 0; i < n; i++)
    if (on_segment(p, poly.edge(i)))
      throw std::invalid_argument("winding_number: point on boundary");
  int wn = 0;
  for (size_t i = 0; i < n; i++) {
    const Point& a = poly.v[i];
    const Point& b = poly.v[(i + 1) % n];
    if (!(a.y > p.y)) {
      if (b.y > p.y && orient(a, b, p) > 0) wn++;
    } else {
      if (!(b.y > p.y) && orient(a, b, p) < 0) wn--;
    }
  }
  return wn;
}

CurveSide curve_vs_polygon(const Polyline& c, const JordanPolygon& poly) {
  bool saw_in = false, saw_out = false;
  for (size_t i = 0; i < c.segment_count(); i++) {
    Segment s = c.seg(i);
    const Point s_lo{std::min(s.a.x, s.b.x), std::min(s.a.y, s.b.y)};
    const Point s_hi{std::max(s.a.x, s.b.x), std::max(s.a.y, s.b.y)};
    LinearPiece sp{s.a, Dir{s.b.x - s.a.x, s.b.y - s.a.y}, rat(0), rat(1)};
    std::vector<Rat> ts;
    ts.push_back(rat(0));
    ts.push_back(rat(1));
    for (size_t j = 0; j < poly.size(); j++) {
      Segment e = poly.edge(j);
      if (std::max(e.a.x, e.b.x) < s_lo.x || std::min(e.a.x, e.b.x) > s_hi.x ||
          std::max(e.a.y, e.b.y) < s_lo.y || std::min(e.a.y, e.b.y) > s_hi.y)
        continue;  // boxes disjoint, no contact possible
      LinearPiece ep{e.a, Dir{e.b.x - e.a.x, e.b.y - e.a.y}, rat(0), rat(1)};
      PieceHit h = piece_intersect(sp, ep);
      if (h.kind == PieceHit::At) {
        ts.push_back(h.s1);
      } else if (h.kind == PieceHit::Along) {
        ts.push_back(h.a1);
        ts.push_back(*h.b1);
      }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (size_t k = 0; k + 1 < ts.size(); k++) {
      Rat mid = (ts[k] + ts[k + 1]) / 2;
      Point m{s.a.x + mid * (s.b.x - s.a.x), s.a.y + mid * (s.b.y - s.a.y)};
      switch (point_in_polygon(m, poly)) {
        case Region::Interior: saw_in = true; break;
        case Region::Exterior: saw_out = true; break;
        case Region::Boundary: break;  // piece runs along the boundary: neutral
      }
      if (saw_in && saw_out) return CurveSide::Mixed;
    }
  }
  if (saw_out) return CurveSide::InClosureOfExterior;
  return CurveSide::InClosureOfInterior;
}

std::optional<HitExit> path_first_hit_last_exit(const Polyline& path, const Box& b) {
  std::optional<PathParam> first, last;
  for (size_t i = 0; i < path.segment_count(); i++) {
    Segment s = path.seg(i);
    auto iv = clip_segment_box(s, b);
    if (!iv) continue;
    auto point_at = [&](const Rat& t) {
      return Point{s.a.x + t * (s.b.x - s.a.x), s.a.y + t * (s.b.y - s.a.y)};
    };
    if (!first) first = PathParam{i, iv->first, point_at(iv->first)};
    last = PathParam{i, iv->second, point_at(iv->second)};
  }
  if (!first) return std::nullopt;
  return HitExit{*first, *last};
}

Dir normalize_dir(const Rat& dx, const Rat& dy) {
  if (sign(dx) == 0 && sign(dy) == 0) throw std::invalid_argument("normalize_dir: zero vector");
  // scale to the primitive integer vector with the same orientation
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), dx.get_den_mpz_t(), dy.get_den_mpz_t());
  mpz_class ix = dx.get_num() * (l / dx.get_den());
  mpz_class iy = dy.get_num() * (l / dy.get_den());
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), ix.get_mpz_t(), iy.get_mpz_t());
  return Dir{Rat(ix / g), Rat(iy / g)};
}

Point LinearPiece::at(const Rat& s) const { return Point{o.x + s * d.dx, o.y + s * d.dy}; }

namespace {
Rat cross2(const Dir& u, const Dir& v) { return u.dx * v.dy - u.dy * v.dx; }
Rat dot2(const Dir& u, const Dir& v) { return u.dx * v.dx + u.dy * v.dy; }
}  // namespace

PieceHit piece_intersect(const LinearPiece& p1, const LinearPiece& p2) {
  PieceHit none;
  Dir w{p2.o.x - p1.o.x, p2.o.y - p1.o.y};
  Rat cr = cross2(p1.d, p2.d);
  if (sign(cr) != 0) {
    // domain tests on the numerators first; the divisions only run for hits
    Rat n1 = cross2(w, p2.d);
    Rat n2 = cross2(w, p1.d);
    const bool pos = sign(cr) > 0;
    auto below = [&](const Rat& num, const Rat& bound) {  // num/cr < bound
      return pos ? num < bound * cr : num > bound * cr;
    };
    auto above = [&](const Rat& num, const Rat& bound) {  // num/cr > bound
      return pos ? num > bound * cr : num < bound * cr;
    };
    if (below(n1, p1.lo) || (p1.hi && above(n1, *p1.hi))) return none;
    if (below(n2, p2.lo) || (p2.hi && above(n2, *p2.hi))) return none;
    PieceHit h;
    h.kind = PieceHit::At;
    h.s1 = n1 / cr;
    h.s2 = n2 / cr;
    return h;
  }
  if (sign(cross2(w, p1.d)) != 0) return none;  // parallel, distinct support lines
  // collinear: map p2's domain onto p1 parameters
  Rat dd = dot2(p1.d, p1.d);
  Rat base = dot2(w, p1.d) / dd;
  Rat slope = dot2(p2.d, p1.d) / dd;  // nonzero for collinear nonzero dirs
  std::optional<Rat> im_lo, im_hi;    // image interval; absent = unbounded
  if (sign(slope) > 0) {
    im_lo = base + slope * p2.lo;
    if (p2.hi) im_hi = base + slope * *p2.hi;
  } else {
    if (p2.hi) im_lo = base + slope * *p2.hi;
    im_hi = base + slope * p2.lo;
  }
  Rat a = p1.lo;
  if (im_lo && *im_lo > a) a = *im_lo;
  std::optional<Rat> bnd = p1.hi;
  if (im_hi && (!bnd || *im_hi < *bnd)) bnd = im_hi;
  if (bnd && a > *bnd) return none;
  if (bnd && a == *bnd) {
    PieceHit h;
    h.kind = PieceHit::At;
    h.s1 = a;
    h.s2 = (a - base) / slope;
    return h;
  }
  PieceHit h;
  h.kind = PieceHit::Along;
  h.a1 = a;
  h.b1 = bnd;
  return h;
}

PLTopoLine::PLTopoLine(Dir left, Polyline chain_, Dir right)
    : left_ray_dir(normalize_dir(left.dx, left.dy)),
      chain(std::move(chain_)),
      right_ray_dir(normalize_dir(right.dx, right.dy)) {
  if (!chain.is_simple()) throw std::invalid_argument("PLTopoLine: chain is not simple");
  size_t m = chain.segment_count();
  LinearPiece lray{chain.pts.front(), left_ray_dir, rat(0), std::nullopt};
  LinearPiece rray{chain.pts.back(), right_ray_dir, rat(0), std::nullopt};
  for (size_t i = 0; i < m; i++) {
    Segment s = chain.seg(i);
    LinearPiece sp{s.a, Dir{s.b.x - s.a.x, s.b.y - s.a.y}, rat(0), rat(1)};
    PieceHit hl = piece_intersect(lray, sp);
    if (i == 0) {
      if (!(hl.kind == PieceHit::At && sign(hl.s1) == 0 && sign(hl.s2) == 0))
        throw std::invalid_argument("PLTopoLine: left ray re-enters the chain");
    } else if (hl.kind != PieceHit::None) {
      throw std::invalid_argument("PLTopoLine: left ray hits the chain");
    }
    PieceHit hr = piece_intersect(rray, sp);
    if (i == m - 1) {
      if (!(hr.kind == PieceHit::At && sign(hr.s1) == 0 && hr.s2 == rat(1)))
        throw std::invalid_argument("PLTopoLine: right ray re-enters the chain");
    } else if (hr.kind != PieceHit::None) {
      throw std::invalid_argument("PLTopoLine: right ray hits the chain");
    }
  }
  if (piece_intersect(lray, rray).kind != PieceHit::None)
    throw std::invalid_argument("PLTopoLine: rays intersect");
}

Point PLTopoLine::at(const Rat& t) const {
  if (sign(t) <= 0) {
    const Point& f = chain.pts.front();
    return Point{f.x - t * left_ray_dir.dx, f.y - t * left_ray_dir.dy};
  }
  Rat rb = right_base();
  if (t >= rb) {
    const Point& bk = chain.pts.back();
    Rat s = t - rb;
    return Point{bk.x + s * right_ray_dir.dx, bk.y + s * right_ray_dir.dy};
  }
  long i = rat_floor_long(t);
  Rat local = t - rat(i);
  const Point& a = chain.pts[(size_t)i];
  const Point& b = chain.pts[(size_t)i + 1];
  return Point{a.x + local * (b.x - a.x), a.y + local * (b.y - a.y)};
}

std::vector<PLTopoLine::IndexedPiece> PLTopoLine::pieces() const {
  std::vector<IndexedPiece> out;
  out.push_back({LinearPiece{chain.pts.front(), left_ray_dir, rat(0), std::nullopt}, rat(0), rat(-1)});
  for (size_t i = 0; i + 1 < chain.pts.size(); i++) {
    const Point& a = chain.pts[i];
    const Point& b = chain.pts[i + 1];
    out.push_back({LinearPiece{a, Dir{b.x - a.x, b.y - a.y}, rat(0), rat(1)}, rat((long)i), rat(1)});
  }
  out.push_back({LinearPiece{chain.pts.back(), right_ray_dir, rat(0), std::nullopt}, right_base(), rat(1)});
  return out;
}

}  // namespace pforest
