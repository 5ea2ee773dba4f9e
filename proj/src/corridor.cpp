#include "pforest/corridor.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace pforest {

namespace {

// ---- parameter intervals on a topological line, endpoints may be infinite

struct ParamIv {
  std::optional<Rat> lo, hi;  // absent = unbounded on that side
};

bool iv_before(const ParamIv& a, const ParamIv& b) {
  if (!a.lo) return true;
  if (!b.lo) return false;
  return *a.lo < *b.lo;
}

// closed-interval union; touching intervals merge
std::vector<ParamIv> merge_intervals(std::vector<ParamIv> ivs) {
  std::sort(ivs.begin(), ivs.end(), iv_before);
  std::vector<ParamIv> out;
  for (ParamIv& iv : ivs) {
    if (!out.empty()) {
      ParamIv& last = out.back();
      bool joins = !last.hi || (iv.lo && *iv.lo <= *last.hi);
      if (joins) {
        if (last.hi && (!iv.hi || *iv.hi > *last.hi)) last.hi = iv.hi;
        continue;
      }
    }
    out.push_back(iv);
  }
  return out;
}

// global-parameter arcs of `a` shared with `b` (positive-length overlaps only)
std::vector<ParamIv> shared_arcs(const PLTopoLine& a, const PLTopoLine& b) {
  std::vector<ParamIv> ivs;
  for (const auto& pa : a.pieces()) {
    for (const auto& pb : b.pieces()) {
      if (sign(pa.piece.d.dx * pb.piece.d.dy - pa.piece.d.dy * pb.piece.d.dx) != 0)
        continue;  // crossing pieces cannot share an arc
      PieceHit h = piece_intersect(pa.piece, pb.piece);
      if (h.kind != PieceHit::Along) continue;
      ParamIv iv;
      if (pa.scale == rat(1)) {
        iv.lo = pa.offset + h.a1;
        if (h.b1) iv.hi = pa.offset + *h.b1;
      } else {
        if (h.b1) iv.lo = pa.offset - *h.b1;
        iv.hi = pa.offset - h.a1;
      }
      ivs.push_back(iv);
    }
  }
  return merge_intervals(std::move(ivs));
}

// local parameter of a point already known to lie on the piece's line
Rat piece_local_param(const LinearPiece& p, const Point& q) {
  if (p.d.dx != rat(0)) return (q.x - p.o.x) / p.d.dx;
  return (q.y - p.o.y) / p.d.dy;
}

// collinear nonzero dirs point the same way iff their component signs agree
bool same_direction(const Dir& u, const Dir& v) {
  return sign(u.dx) == sign(v.dx) && sign(u.dy) == sign(v.dy);
}

PortionResult portion_from_arcs(std::vector<ParamIv> ivs) {
  std::vector<ParamIv> shared = merge_intervals(std::move(ivs));
  PortionResult out;
  if (shared.size() != 2) return out;
  const ParamIv& lo_iv = shared[0];
  const ParamIv& hi_iv = shared[1];
  if (lo_iv.lo || !lo_iv.hi || !hi_iv.lo || hi_iv.hi) return out;
  out.is_portion = true;
  out.lo = *lo_iv.hi;
  out.hi = *hi_iv.lo;
  return out;
}

// both portion differences from a single pass over the piece pairs; each
// overlap is mapped into both lines' global parameters
std::pair<PortionResult, PortionResult> portion_pair(const PLTopoLine& a, const PLTopoLine& b) {
  std::vector<ParamIv> ivs_a, ivs_b;
  for (const auto& pa : a.pieces()) {
    for (const auto& pb : b.pieces()) {
      if (sign(pa.piece.d.dx * pb.piece.d.dy - pa.piece.d.dy * pb.piece.d.dx) != 0)
        continue;  // crossing pieces cannot share an arc
      PieceHit h = piece_intersect(pa.piece, pb.piece);
      if (h.kind != PieceHit::Along) continue;
      ParamIv iva;
      if (pa.scale == rat(1)) {
        iva.lo = pa.offset + h.a1;
        if (h.b1) iva.hi = pa.offset + *h.b1;
      } else {
        if (h.b1) iva.lo = pa.offset - *h.b1;
        iva.hi = pa.offset - h.a1;
      }
      ivs_a.push_back(iva);

      std::optional<Rat> s_lo, s_hi;
      Rat s0 = piece_local_param(pb.piece, pa.piece.at(h.a1));
      if (h.b1) {
        Rat s1 = piece_local_param(pb.piece, pa.piece.at(*h.b1));
        s_lo = std::min(s0, s1);
        s_hi = std::max(s0, s1);
      } else if (same_direction(pa.piece.d, pb.piece.d)) {
        s_lo = s0;
      } else {
        s_hi = s0;
      }
      ParamIv ivb;
      if (pb.scale == rat(1)) {
        if (s_lo) ivb.lo = pb.offset + *s_lo;
        if (s_hi) ivb.hi = pb.offset + *s_hi;
      } else {
        if (s_hi) ivb.lo = pb.offset - *s_hi;
        if (s_lo) ivb.hi = pb.offset - *s_lo;
      }
      ivs_b.push_back(ivb);
    }
  }
  return {portion_from_arcs(std::move(ivs_a)), portion_from_arcs(std::move(ivs_b))};
}

// vertex chain of `a` over the closed parameter range [lo, hi]
std::vector<Point> arc_points(const PLTopoLine& a, const Rat& lo, const Rat& hi) {
  std::vector<Point> pts{a.at(lo)};
  long m = (long)a.chain.pts.size();
  for (long i = 0; i < m; i++) {
    Rat t = rat(i);
    if (t > lo && t < hi) pts.push_back(a.chain.pts[(size_t)i]);
  }
  Point last = a.at(hi);
  if (last != pts.back()) pts.push_back(last);
  return pts;
}

std::vector<Point> reversed(std::vector<Point> pts) {
  std::reverse(pts.begin(), pts.end());
  return pts;
}

// direction-normalized vertex sequence, for the reversal tiebreak
std::vector<Point> canonical_sequence(std::vector<Point> pts) {
  std::vector<Point> rev = reversed(pts);
  return rev < pts ? rev : pts;
}

// first parameter in [0,1] where segment (a,b) touches the box boundary
std::optional<std::pair<Rat, Point>> first_side_contact(const Point& a, const Point& b,
                                                        const Box& box) {
  LinearPiece lp{a, Dir{b.x - a.x, b.y - a.y}, rat(0), rat(1)};
  std::optional<Rat> best;
  for (const Segment& side : box.sides()) {
    LinearPiece sp{side.a, Dir{side.b.x - side.a.x, side.b.y - side.a.y}, rat(0), rat(1)};
    PieceHit h = piece_intersect(lp, sp);
    if (h.kind == PieceHit::None) continue;
    Rat t = h.kind == PieceHit::At ? h.s1 : h.a1;
    if (!best || t < *best) best = t;
  }
  if (!best) return std::nullopt;
  return std::make_pair(*best, lp.at(*best));
}

void push_dedup(std::vector<Point>& pts, const Point& p) {
  if (pts.empty() || pts.back() != p) pts.push_back(p);
}

// escape path of `u`'s component: from u to the first contact with the outer
// boundary, then restricted to start at the last exit of the k-box
std::optional<Polyline> escape_germ(const GeometricGraph& g, const Components& cc, int u,
                                    const Box& kbox, const Box& outer) {
  int want = cc.comp[u];
  int exit_edge = -1;
  for (int e : canonical_edges(g)) {
    if (cc.comp[g.edges[e].tail] != want) continue;
    if (segment_meets_boundary(g.edge_segment(e), outer)) {
      exit_edge = e;
      break;
    }
  }
  if (exit_edge < 0) return std::nullopt;

  std::vector<int> to_tail = graph_path(g, u, g.edges[exit_edge].tail);
  std::vector<int> to_head = graph_path(g, u, g.edges[exit_edge].head);
  const std::vector<int>& walk = to_tail.size() > to_head.size() ? to_tail : to_head;
  if (walk.size() < 2) return std::nullopt;

  std::vector<Point> pts;
  bool contacted = false;
  for (size_t i = 0; i + 1 < walk.size() && !contacted; i++) {
    const Point& a = g.verts[walk[i]];
    const Point& b = g.verts[walk[i + 1]];
    push_dedup(pts, a);
    if (!segment_meets_boundary(Segment(a, b), outer)) continue;
    auto contact = first_side_contact(a, b, outer);
    if (!contact) return std::nullopt;
    push_dedup(pts, contact->second);
    contacted = true;
  }
  if (!contacted) push_dedup(pts, g.verts[walk.back()]);
  if (pts.size() < 2) return std::nullopt;

  Polyline full{pts};
  auto he = path_first_hit_last_exit(full, kbox);
  if (!he) return std::nullopt;

  std::vector<Point> germ{he->last_exit.p};
  for (size_t i = he->last_exit.seg + 1; i < full.pts.size(); i++) push_dedup(germ, full.pts[i]);
  if (germ.size() < 2) return std::nullopt;
  return Polyline{germ};
}

Dir tail_direction(const Polyline& p) {
  const Point& a = p.pts[p.pts.size() - 2];
  const Point& b = p.pts.back();
  return normalize_dir(b.x - a.x, b.y - a.y);
}

}  // namespace

Door::Door(std::pair<long, long> lat, Point c, Polyline g1, Polyline g2, int c1, int c2)
    : lattice(lat),
      center(std::move(c)),
      germ1(std::move(g1)),
      germ2(std::move(g2)),
      door_segment(germ1.pts.front(), germ2.pts.front()),
      component1(c1),
      component2(c2) {}

std::vector<Door> detect_doors(const GeometricGraph& g, long k, long l, const WindowSpec& w) {
  if (k < 1 || k >= l) throw std::invalid_argument("detect_doors: need 1 <= k < l");
  std::vector<Door> doors;
  if (g.vertex_count() == 0) return doors;

  ClassifyResult cls = classify_components(g, w);
  Components cc = connected_components(g);
  auto one_ended = [&](int comp) {
    int r = cls.report_of_component.size() > (size_t)comp ? cls.report_of_component[comp] : -1;
    return r >= 0 && cls.reports[r].ends.kind == EndsKind::OneEnded;
  };

  Box inner = inner_box(w), outer = outer_box(w);
  const Rat step = rat(2 * l);
  long i_min = -rat_floor_long((w.origin.x - inner.x0) / step);
  long i_max = rat_floor_long((inner.x1 - w.origin.x) / step);
  long j_min = -rat_floor_long((w.origin.y - inner.y0) / step);
  long j_max = rat_floor_long((inner.y1 - w.origin.y) / step);

  for (long i = i_min; i <= i_max; i++) {
    for (long j = j_min; j <= j_max; j++) {
      Point c{w.origin.x + step * rat(i), w.origin.y + step * rat(j)};
      Box kbox(c.x - rat(k), c.y - rat(k), c.x + rat(k), c.y + rat(k));
      if (kbox.x0 < outer.x0 || kbox.x1 > outer.x1 || kbox.y0 < outer.y0 || kbox.y1 > outer.y1)
        continue;

      // one-ended components touching the k-box, with their westmost-southmost
      // representatives
      std::map<int, int> rep;  // component -> vertex
      for (int v = 0; v < g.vertex_count(); v++) {
        if (!kbox.contains(g.verts[v])) continue;
        int comp = cc.comp[v];
        if (!one_ended(comp)) continue;
        auto it = rep.find(comp);
        if (it == rep.end() || g.verts[v] < g.verts[it->second]) rep[comp] = v;
      }
      if (rep.size() != 2) continue;

      Box lbox(c.x - rat(l), c.y - rat(l), c.x + rat(l), c.y + rat(l));
      bool confined = true;
      for (int v : pendant_of_box(g, kbox, w)) {
        if (!lbox.strictly_contains(g.verts[v])) {
          confined = false;
          break;
        }
      }
      if (!confined) continue;

      int u1 = rep.begin()->second, u2 = std::next(rep.begin())->second;
      if (g.verts[u2] < g.verts[u1]) std::swap(u1, u2);

      auto germ1 = escape_germ(g, cc, u1, kbox, outer);
      auto germ2 = escape_germ(g, cc, u2, kbox, outer);
      if (!germ1 || !germ2) continue;
      if (germ1->pts.front() == germ2->pts.front()) continue;

      Door door({i, j}, c, std::move(*germ1), std::move(*germ2), cc.comp[u1], cc.comp[u2]);
      try {
        build_gamma(door);
      } catch (const std::exception&) {
        continue;  // splice degenerates at this window; not a usable door
      }
      doors.push_back(std::move(door));
    }
  }
  return doors;
}

PLTopoLine build_gamma(const Door& door) {
  std::vector<Point> chain;
  for (auto it = door.germ1.pts.rbegin(); it != door.germ1.pts.rend(); ++it)
    push_dedup(chain, *it);
  for (const Point& p : door.germ2.pts) push_dedup(chain, p);
  Dir left = tail_direction(door.germ1);
  Dir right = tail_direction(door.germ2);
  return PLTopoLine(left, Polyline{chain}, right);
}

PortionResult portion_difference(const PLTopoLine& a, const PLTopoLine& b) {
  return portion_from_arcs(shared_arcs(a, b));
}

JordanPolygon jordan_from_pair(const PLTopoLine& a, const PLTopoLine& b) {
  auto [pa, pb] = portion_pair(a, b);
  if (!pa.is_portion || !pb.is_portion)
    throw std::invalid_argument("jordan_from_pair: differences are not portions");

  std::vector<Point> arc_a = arc_points(a, pa.lo, pa.hi);
  std::vector<Point> arc_b = arc_points(b, pb.lo, pb.hi);
  if (arc_b.front() == arc_a.back() && arc_b.back() == arc_a.front()) {
    // already oriented end-to-start
  } else if (arc_b.front() == arc_a.front() && arc_b.back() == arc_a.back()) {
    arc_b = reversed(std::move(arc_b));
  } else {
    throw std::invalid_argument("jordan_from_pair: arcs do not share both endpoints");
  }

  std::vector<Point> ring(arc_a.begin(), arc_a.end());
  for (size_t i = 1; i + 1 < arc_b.size(); i++) ring.push_back(arc_b[i]);
  return JordanPolygon(std::move(ring));  // ctor rejects non-simple rings
}

bool between(const PLTopoLine& a, const PLTopoLine& mid, const PLTopoLine& c) {
  JordanPolygon bounded = jordan_from_pair(a, mid);
  JordanPolygon frame = jordan_from_pair(a, c);
  CurveSide side = curve_vs_polygon(bounded.closed_polyline(), frame);
  if (side == CurveSide::Mixed)
    throw std::runtime_error("between: curves cross; family violates the portion hypothesis");
  return side == CurveSide::InClosureOfInterior;
}

std::vector<int> linear_order(const TopoLineFamily& fam) {
  const auto& ls = fam.lines;
  const int n = (int)ls.size();
  if (n == 0) throw std::invalid_argument("linear_order: empty family");
  if (n == 1) return {0};

  for (int i = 0; i < n; i++)
    for (int j = i + 1; j < n; j++)
      if (!portion_difference(ls[i], ls[j]).is_portion ||
          !portion_difference(ls[j], ls[i]).is_portion)
        throw std::invalid_argument("linear_order: pair fails the portion hypothesis");

  // betweenness reduces to curve-vs-polygon tests on pair polygons, so the
  // C(n,2) polygons are built once up front
  std::vector<std::optional<JordanPolygon>> polys((size_t)(n * n));
  std::vector<std::optional<Polyline>> rings((size_t)(n * n));
  for (int i = 0; i < n; i++)
    for (int j = i + 1; j < n; j++) {
      JordanPolygon jp = jordan_from_pair(ls[i], ls[j]);
      rings[(size_t)(i * n + j)] = jp.closed_polyline();
      polys[(size_t)(i * n + j)] = std::move(jp);
    }
  auto pair_id = [n](int x, int y) { return (size_t)(std::min(x, y) * n + std::max(x, y)); };
  auto bet = [&](int x, int y, int z) {
    CurveSide side = curve_vs_polygon(*rings[pair_id(x, y)], *polys[pair_id(x, z)]);
    if (side == CurveSide::Mixed)
      throw std::runtime_error("between: curves cross; family violates the portion hypothesis");
    return side == CurveSide::InClosureOfInterior;
  };

  std::vector<int> order{0, 1};
  for (int x = 2; x < n; x++) {
    const int m = (int)order.size();
    std::vector<int> slots;
    if (bet(x, order[0], order[1])) slots.push_back(0);
    for (int p = 1; p < m; p++)
      if (bet(order[p - 1], x, order[p])) slots.push_back(p);
    if (bet(order[m - 2], order[m - 1], x)) slots.push_back(m);
    if (slots.size() != 1)
      throw std::runtime_error("linear_order: insertion position is not unique");
    order.insert(order.begin() + slots[0], x);
  }

  // full verification: list position middleness must coincide with the
  // betweenness relation, in both symmetric readings
  for (int i = 0; i < n; i++)
    for (int j = i + 1; j < n; j++)
      for (int k = j + 1; k < n; k++) {
        bool mid_j = bet(order[i], order[j], order[k]);
        bool sym = bet(order[k], order[j], order[i]);
        bool mid_i = bet(order[j], order[i], order[k]);
        bool mid_k = bet(order[i], order[k], order[j]);
        if (!mid_j || !sym || mid_i || mid_k)
          throw std::runtime_error("linear_order: betweenness axioms fail on a triple");
      }

  // canonical representative of {order, reversed order}
  const PLTopoLine& first = ls[order.front()];
  const PLTopoLine& last = ls[order.back()];
  PortionResult pf = portion_difference(first, last);
  PortionResult pl = portion_difference(last, first);
  std::vector<Point> key_first = canonical_sequence(arc_points(first, pf.lo, pf.hi));
  std::vector<Point> key_last = canonical_sequence(arc_points(last, pl.lo, pl.hi));
  if (key_last < key_first) std::reverse(order.begin(), order.end());
  return order;
}

std::vector<int> door_trace(const std::vector<Segment>& component_segments,
                            const std::vector<Door>& doors) {
  std::vector<int> trace;
  for (size_t d = 0; d < doors.size(); d++) {
    PLTopoLine gamma = build_gamma(doors[d]);
    auto pieces = gamma.pieces();
    bool hit = false;
    for (const Segment& seg : component_segments) {
      LinearPiece sp{seg.a, Dir{seg.b.x - seg.a.x, seg.b.y - seg.a.y}, rat(0), rat(1)};
      for (const auto& ip : pieces) {
        PieceHit h = piece_intersect(ip.piece, sp);
        if (h.kind == PieceHit::None) continue;
        std::vector<Point> contacts;
        if (h.kind == PieceHit::At) {
          contacts.push_back(ip.piece.at(h.s1));
        } else {
          contacts.push_back(ip.piece.at(h.a1));
          if (!h.b1)
            throw std::runtime_error("door_trace: unbounded overlap with a finite segment");
          contacts.push_back(ip.piece.at(*h.b1));
        }
        for (const Point& p : contacts)
          if (!on_segment(p, doors[d].door_segment))
            throw std::runtime_error("door_trace: contact lies off the door segment");
        hit = true;
      }
    }
    if (hit) trace.push_back((int)d);
  }
  return trace;
}

std::vector<int> extreme_points(const std::vector<int>& xs, const std::vector<int>& order) {
  if (xs.empty()) return {};
  std::map<int, int> pos;
  for (int p = 0; p < (int)order.size(); p++) pos[order[p]] = p;
  int lo = -1, hi = -1;
  for (int x : xs) {
    auto it = pos.find(x);
    if (it == pos.end()) throw std::invalid_argument("extreme_points: element not in order");
    if (lo < 0 || it->second < pos[lo]) lo = x;
    if (hi < 0 || it->second > pos[hi]) hi = x;
  }
  if (lo == hi) return {lo};
  return {lo, hi};
}

bool check_trace_convex(const std::vector<int>& trace, const std::vector<int>& order) {
  if (trace.empty()) return true;
  std::map<int, int> pos;
  for (int p = 0; p < (int)order.size(); p++) pos[order[p]] = p;
  std::set<int> where;
  for (int x : trace) {
    auto it = pos.find(x);
    if (it == pos.end()) throw std::invalid_argument("check_trace_convex: element not in order");
    where.insert(it->second);
  }
  return *where.rbegin() - *where.begin() + 1 == (int)where.size();
}

}  // namespace pforest
