#pragma once

#include <utility>
#include <vector>

#include "pforest/forest.hpp"

namespace pforest {

// A detected door: two one-ended components approach each other near a
// lattice box and their pendant growth is locally confined. The germs are
// the two escape paths, truncated to start at the last exit of the k-box
// and to stop at the first contact with the outer window boundary; the door
// segment joins their starting points.
struct Door {
  std::pair<long, long> lattice;  // center in 2l units relative to window origin
  Point center;
  Polyline germ1, germ2;
  Segment door_segment;
  int component1 = -1, component2 = -1;  // labels from connected_components

  Door(std::pair<long, long> lat, Point c, Polyline g1, Polyline g2, int c1, int c2);
};

// Scan the 2l-grid of centers inside the inner window; a center qualifies
// when exactly two one-ended components (per classify_components on w) have
// vertices in its k-box and every pendant vertex of that box stays in the
// open l-box. Returned sorted by center (x, then y). Centers whose germ
// construction degenerates are skipped.
std::vector<Door> detect_doors(const GeometricGraph& g, long k, long l, const WindowSpec& w);

// Splice reversed germ1, the door segment, and germ2 into one topological
// line; escape rays extrapolate the outermost segments. Throws when the
// splice is not simple.
PLTopoLine build_gamma(const Door& door);

struct PortionResult {
  bool is_portion = false;
  Rat lo, hi;  // open parameter interval on the first line when is_portion
};

// a minus b as parameter arcs of a: the single bounded open interval when
// the portion hypothesis holds (identical lines report NotAPortion).
PortionResult portion_difference(const PLTopoLine& a, const PLTopoLine& b);

// Closure of the symmetric difference; throws when the two differing arcs
// fail to close into a simple polygon.
JordanPolygon jordan_from_pair(const PLTopoLine& a, const PLTopoLine& b);

// mid lies between a and c: J(a, mid) inside the closed interior of
// J(a, c). A Mixed classification means the family hypothesis is violated
// and throws.
bool between(const PLTopoLine& a, const PLTopoLine& mid, const PLTopoLine& c);

struct TopoLineFamily {
  std::vector<PLTopoLine> lines;
};

// Total order of the family by betweenness insertion; verifies the full
// triple table afterwards and throws on any axiom violation. Normalized so
// the sequence of vertex-set keys is lexicographically minimal vs reversal.
std::vector<int> linear_order(const TopoLineFamily& fam);

// Doors whose gamma meets any of the component segments. Intersections are
// asserted to lie on the door segment itself.
std::vector<int> door_trace(const std::vector<Segment>& component_segments,
                            const std::vector<Door>& doors);

// Min and max of xs with respect to positions in order; empty for empty xs.
std::vector<int> extreme_points(const std::vector<int>& xs, const std::vector<int>& order);

// True iff trace occupies a contiguous run of positions in order.
bool check_trace_convex(const std::vector<int>& trace, const std::vector<int>& order);

}  // namespace pforest
