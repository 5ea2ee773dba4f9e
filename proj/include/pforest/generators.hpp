#pragma once

#include <cstdint>
#include <vector>

#include "pforest/forest.hpp"

namespace pforest {

struct GridSpec {
  int width = 2, height = 2;  // vertex counts per axis
  Point origin{rat(0), rat(0)};
  GridSpec(int m, int h, Point o = Point{rat(0), rat(0)});
};

// phi[i] = value at n = 4 + i; strictly increasing.
struct PhiSchedule {
  std::vector<long> phi;
  explicit PhiSchedule(std::vector<long> values);
  int n_max() const { return 3 + (int)phi.size(); }
};

enum class TieBreak { Left, Right };

struct DrainageSpec {
  int width = 1, height = 1;
  long p_num = 1, p_den = 1;  // open-site probability, rational in (0,1]
  TieBreak tie_break = TieBreak::Right;
  std::uint64_t seed = 0;
  DrainageSpec(int w, int h, long num, long den, TieBreak tb, std::uint64_t s);
};

// Uniform spanning tree of the width x height grid, by loop-erased random
// walks. Unoriented; width*height vertices, one fewer edges.
GeometricGraph ust_wilson(const GridSpec& spec, std::uint64_t seed);

// Tree on the interior faces (centers at origin + (1/2,1/2) + Z^2) with an
// edge exactly where the shared primal grid edge is absent from the tree.
GeometricGraph dual_tree(const GeometricGraph& ust, const GridSpec& spec);

// Corner graph at distance eps around a lattice subgraph with unit axis
// edges: corners v + eps*delta, delta in {-1,1}^2. Side pairs (differing in
// one coordinate) are joined when the neighbor across that side is not an
// edge; connector pairs run along each present edge.
GeometricGraph contour(const GeometricGraph& z, const Rat& eps);

// Union over n = 4..n_max of contour(peel^{phi(n)}(ust), 1/n).
GeometricGraph g_phi(const GeometricGraph& ust, const PhiSchedule& sched);

// Schedule from empirical peeling depths: phi(n) = smallest depth d with
// P[sample > d] <= 2^-(n-3), truncated where the target drops below the
// never-removed mass; depth_samples use removed_at >= 1 and -1 for never.
PhiSchedule quantile_schedule(const std::vector<int>& depth_samples, int n_cap);

// Oriented out-degree-<=1 forest on the open sites of the width x height
// box: each open (x,y) points to the nearest open site in row y+1, ties per
// tie_break. Top row (and rows over an empty row) have no successor.
GeometricGraph drainage_grs(const DrainageSpec& spec);

// The successor column for a source at x facing the given open row, or -1
// if the row is empty. Exposed for the non-crossing property checks.
int nearest_open_target(const std::vector<char>& open_row, int x, TieBreak tb);

// Isolated vertices at origin + (1/3,1/3) + Z^2.
GeometricGraph iso_points(const GridSpec& spec);

// Disjoint-indexed union; throws if the union violates planarity or any
// vertex positions collide.
GeometricGraph graph_union(const std::vector<GeometricGraph>& gs);

// Deterministic three-component bed inside [-L,L]^2: a comb at y=3 (spine
// from x=-L+1 to L, optional unit teeth hanging at even x), its mirror at
// y=-3 with teeth up, and a bare full-width path at y=0.
GeometricGraph fixture_corridor(int L, bool teeth = true);

// Canonical analysis window for the fixture: origin 0, inner L-2, outer L.
WindowSpec fixture_window(int L);

}  // namespace pforest
