#include "pforest/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numeric>
#include <vector>

#include "pforest/corridor.hpp"
#include "pforest/experiment.hpp"
#include "pforest/generators.hpp"
#include "pforest/graph_io.hpp"
#include "pforest/rng.hpp"

namespace pforest {

namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double mean_of(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / (double)xs.size();
}

double stderr_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double m = mean_of(xs), ss = 0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / (double)(xs.size() - 1) / (double)xs.size());
}

// 1. Fifty spanning trees on the 15x15 grid: the 1/4-contour is one cycle
// visiting all 4*225 corners. Exact.
CriterionResult contour_cycle_law() {
  CriterionResult r{1, "contour-cycle-law", false, ""};
  const int S = 50;
  std::vector<int> bad(S, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int s = 0; s < S; s++) {
    auto t = ust_wilson(GridSpec(15, 15), split_seed(1001, s));
    auto c = contour(t, rat(1, 4));
    bool ok = c.vertex_count() == 900 && c.edge_count() == 900;
    std::vector<int> deg(c.vertex_count(), 0);
    for (int e : canonical_edges(c)) {
      deg[c.edges[e].tail]++;
      deg[c.edges[e].head]++;
    }
    for (int d : deg) ok = ok && d == 2;
    ok = ok && connected_components(c).count == 1;
    if (!ok) bad[s] = 1;
  }
  int failures = std::accumulate(bad.begin(), bad.end(), 0);
  r.pass = failures == 0;
  r.detail = fmt("%d/%d samples are a single 900-cycle on all 900 corners", S - failures, S);
  return r;
}

// 2. Fifty primal trees on 15x15: the interior-face graph must be a spanning
// tree of the 14x14 face grid (196 vertices, 195 edges, connected, acyclic)
// and the primal-dual union must stay planar. Exact.
CriterionResult primal_dual_spanning() {
  CriterionResult r{2, "primal-dual-spanning", false, ""};
  const int S = 50;
  std::vector<int> span_ok(S, 0), planar_ok(S, 0), acyclic_ok(S, 0);
  std::vector<long> edge_counts(S, 0), comp_counts(S, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int s = 0; s < S; s++) {
    GridSpec gs(15, 15);
    auto t = ust_wilson(gs, split_seed(1002, s));
    auto d = dual_tree(t, gs);
    edge_counts[s] = d.edge_count();
    comp_counts[s] = connected_components(d).count;
    acyclic_ok[s] = validate_forest(d).ok ? 1 : 0;
    span_ok[s] = (d.vertex_count() == 196 && d.edge_count() == 195 && comp_counts[s] == 1 &&
                  acyclic_ok[s])
                     ? 1
                     : 0;
    planar_ok[s] = validate_planarity(graph_union({t, d})).empty() ? 1 : 0;
  }
  int span = std::accumulate(span_ok.begin(), span_ok.end(), 0);
  int planar = std::accumulate(planar_ok.begin(), planar_ok.end(), 0);
  int acyclic = std::accumulate(acyclic_ok.begin(), acyclic_ok.end(), 0);
  double mean_edges = std::accumulate(edge_counts.begin(), edge_counts.end(), 0.0) / S;
  double mean_comps = std::accumulate(comp_counts.begin(), comp_counts.end(), 0.0) / S;
  r.pass = span == S && planar == S;
  r.detail = fmt(
      "spanning %d/%d (mean edges %.1f of 195, mean pieces %.1f, acyclic %d/%d); union planar "
      "%d/%d",
      span, S, mean_edges, mean_comps, acyclic, S, planar, S);
  return r;
}

// 3. Drainage at p=1/2 on 200x200, 100 seeds: mean boundary-crossing count
// chi_n stays below 4*Lambda*n plus three standard errors for n=5,10,20.
CriterionResult box_crossing_bound() {
  CriterionResult r{3, "box-crossing-bound", false, ""};
  const int S = 100;
  const std::vector<long> ns{5, 10, 20};
  std::vector<double> lams(S);
  std::vector<std::vector<double>> chis(ns.size(), std::vector<double>(S));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int s = 0; s < S; s++) {
    auto g = drainage_grs(DrainageSpec(200, 200, 1, 2, TieBreak::Right, split_seed(1003, s)));
    Box region(rat(0), rat(0), rat(199), rat(199));
    lams[s] = rat_double(edge_intensity(g, unit_box_grid(region, rat(199, 4), 400)));
    for (size_t i = 0; i < ns.size(); i++) {
      Point o{(rat(199) - rat(ns[i])) / 2, (rat(199) - rat(ns[i])) / 2};
      chis[i][s] = (double)chi_n(g, ns[i], o);
    }
  }
  double lam = mean_of(lams);
  r.pass = true;
  r.detail = fmt("lambda %.3f;", lam);
  for (size_t i = 0; i < ns.size(); i++) {
    double m = mean_of(chis[i]), se = stderr_of(chis[i]);
    double bound = 4.0 * lam * (double)ns[i] + 3.0 * se;
    if (m > bound) r.pass = false;
    r.detail += fmt(" chi_%ld %.2f <= %.2f;", ns[i], m, bound);
  }
  return r;
}

// 4. Trees on 2Lx2L for L=10,20,40: density of inner-box vertices with three
// escaping branches is nonincreasing and at least halves from L=10 to L=40.
CriterionResult trifurcation_decay() {
  CriterionResult r{4, "trifurcation-decay", false, ""};
  const int Ls[3] = {10, 20, 40};
  const int Ss[3] = {100, 60, 40};
  double density[3] = {0, 0, 0};
  for (int li = 0; li < 3; li++) {
    int L = Ls[li], S = Ss[li];
    std::vector<long> tot(S, 0), tri(S, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int s = 0; s < S; s++) {
      auto g = ust_wilson(GridSpec(2 * L, 2 * L), split_seed(101, (std::uint64_t)(L * 1000 + s)));
      Rat c = rat(2 * L - 1) / 2;
      WindowSpec w(Point{c, c}, rat(7, 2), rat(L - 1));
      Box in = inner_box(w);
      for (int v = 0; v < g.vertex_count(); v++) {
        const Point& p = g.verts[v];
        if (p.x < in.x0 || p.x > in.x1 || p.y < in.y0 || p.y > in.y1) continue;
        tot[s]++;
        if (escape_degree(g, v, w) >= 3) tri[s]++;
      }
    }
    density[li] = (double)std::accumulate(tri.begin(), tri.end(), 0L) /
                  (double)std::accumulate(tot.begin(), tot.end(), 0L);
  }
  r.pass = density[0] >= density[1] && density[1] >= density[2] &&
           density[2] <= density[0] / 2.0;
  r.detail = fmt("density L=10: %.5f, L=20: %.5f, L=40: %.5f; halving target %.5f", density[0],
                 density[1], density[2], density[0] / 2.0);
  return r;
}

// 5. Full vertical field: every inner-box column is one two-ended component,
// nothing one-ended or trifurcating. Exact.
CriterionResult two_ended_field() {
  CriterionResult r{5, "two-ended-field", false, ""};
  struct Case {
    int w, h;
    long ox, oy, inner, outer;
  };
  const Case cases[] = {{20, 20, 10, 10, 5, 9}, {17, 23, 8, 11, 4, 7}, {31, 25, 15, 12, 6, 11}};
  bool ok = true;
  std::string seen;
  for (const Case& c : cases) {
    auto g = drainage_grs(DrainageSpec(c.w, c.h, 1, 1, TieBreak::Right, 17));
    WindowSpec w(Point{rat(c.ox), rat(c.oy)}, rat(c.inner), rat(c.outer));
    auto cls = classify_components(g, w);
    long columns = 2 * c.inner + 1;
    ok = ok && cls.n1 == 0 && cls.n3plus == 0 && cls.n2 == columns;
    seen += fmt(" %dx%d: n1=%ld n2=%ld/%ld n3+=%ld;", c.w, c.h, cls.n1, cls.n2, columns,
                cls.n3plus);
  }
  r.pass = ok;
  r.detail = seen.substr(1);
  return r;
}

// 6. Drainage at p=1/2, window ratio 10, 50 seeds: inner-box vertex pairs
// coalesce at least 95% of the time and no seed reports a trifurcating
// component.
CriterionResult one_ended_coalescence() {
  CriterionResult r{6, "one-ended-coalescence", false, ""};
  const int S = 50;
  const long k = 2, L = 10 * k;
  std::vector<long> pairs(S, 0), conn(S, 0), n3(S, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int s = 0; s < S; s++) {
    auto g = drainage_grs(DrainageSpec(41, 250, 1, 2, TieBreak::Right, split_seed(55, s)));
    WindowSpec w(Point{rat(20), rat(L)}, rat(k), rat(L));
    Box in = inner_box(w);
    Components cc = connected_components(g);
    std::vector<int> inner;
    for (int v = 0; v < g.vertex_count(); v++) {
      const Point& p = g.verts[v];
      if (p.x >= in.x0 && p.x <= in.x1 && p.y >= in.y0 && p.y <= in.y1) inner.push_back(v);
    }
    for (size_t i = 0; i < inner.size(); i++)
      for (size_t j = i + 1; j < inner.size(); j++) {
        pairs[s]++;
        if (cc.comp[inner[i]] == cc.comp[inner[j]]) conn[s]++;
      }
    n3[s] = classify_components(g, w).n3plus;
  }
  long all_pairs = std::accumulate(pairs.begin(), pairs.end(), 0L);
  long all_conn = std::accumulate(conn.begin(), conn.end(), 0L);
  long tri_seeds = 0, tri_total = 0;
  for (int s = 0; s < S; s++) {
    if (n3[s] > 0) tri_seeds++;
    tri_total += n3[s];
  }
  double frac = all_pairs ? (double)all_conn / (double)all_pairs : 1.0;
  r.pass = frac >= 0.95 && tri_seeds == 0;
  r.detail = fmt("connected pairs %.4f (need >= 0.95); trifurcating reports on %ld/%d seeds "
                 "(total %ld, need 0)",
                 frac, tri_seeds, S, tri_total);
  return r;
}

// 7. Random tent families of 8: symmetry, trichotomy and transitivity on all
// oriented triples, and the computed order equals height order up to
// reversal. 100 seeds, exhaustive per family.
CriterionResult betweenness_axioms() {
  CriterionResult r{7, "betweenness-axioms", false, ""};
  const int S = 100, N = 8;
  std::vector<long> sym_bad(S, 0), tri_bad(S, 0), trans_bad(S, 0), order_bad(S, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int s = 0; s < S; s++) {
    Rng rng(split_seed(1007, s));
    std::vector<Rat> heights;
    while ((int)heights.size() < N) {
      Rat h = rat((long)rng.below(61) - 30, (long)rng.below(3) + 1);
      if (std::find(heights.begin(), heights.end(), h) == heights.end()) heights.push_back(h);
    }
    TopoLineFamily fam;
    for (const Rat& h : heights) {
      Polyline chain{{Point{rat(-1), rat(0)}, Point{rat(0), h}, Point{rat(1), rat(0)}}};
      fam.lines.push_back(PLTopoLine(Dir{rat(-1), rat(0)}, chain, Dir{rat(1), rat(0)}));
    }

    // one evaluation per (mid, {a, b}); symmetry audited explicitly
    std::map<std::tuple<int, int, int>, bool> memo;
    auto bet = [&](int a, int mid, int b) {
      auto key = std::make_tuple(mid, std::min(a, b), std::max(a, b));
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
      bool v = between(fam.lines[a], fam.lines[mid], fam.lines[b]);
      if (between(fam.lines[b], fam.lines[mid], fam.lines[a]) != v) sym_bad[s]++;
      memo[key] = v;
      return v;
    };

    for (int a = 0; a < N; a++)
      for (int b = a + 1; b < N; b++)
        for (int c = b + 1; c < N; c++) {
          int one = (bet(b, a, c) ? 1 : 0) + (bet(a, b, c) ? 1 : 0) + (bet(a, c, b) ? 1 : 0);
          if (one != 1) tri_bad[s]++;
        }
    for (int g = 0; g < N; g++)
      for (int x = 0; x < N; x++)
        for (int y = 0; y < N; y++)
          for (int z = 0; z < N; z++) {
            if (g == x || g == y || g == z || x == y || x == z || y == z) continue;
            if (bet(x, g, y) && !bet(x, g, z) && !bet(y, g, z)) trans_bad[s]++;
          }

    std::vector<int> order = linear_order(fam);
    std::vector<int> by_height(N);
    std::iota(by_height.begin(), by_height.end(), 0);
    std::sort(by_height.begin(), by_height.end(),
              [&](int a, int b) { return heights[a] < heights[b]; });
    std::vector<int> rev(by_height.rbegin(), by_height.rend());
    if (order != by_height && order != rev) order_bad[s]++;
  }
  long sym = std::accumulate(sym_bad.begin(), sym_bad.end(), 0L);
  long tri = std::accumulate(tri_bad.begin(), tri_bad.end(), 0L);
  long trans = std::accumulate(trans_bad.begin(), trans_bad.end(), 0L);
  long ord = std::accumulate(order_bad.begin(), order_bad.end(), 0L);
  r.pass = sym == 0 && tri == 0 && trans == 0 && ord == 0;
  r.detail = fmt("%d families of %d: symmetry breaks %ld, trichotomy breaks %ld, transitivity "
                 "breaks %ld, order mismatches %ld",
                 S, N, sym, tri, trans, ord);
  return r;
}

// 8. Corridor bed, k=4, l=6: at least one door, doors ordered by x, and the
// middle two-ended component crosses every door with a convex trace. Exact.
CriterionResult corridor_integration() {
  CriterionResult r{8, "corridor-integration", false, ""};
  auto g = fixture_corridor(16);
  WindowSpec w = fixture_window(16);
  auto doors = detect_doors(g, 4, 6, w);
  bool ordered = true;
  for (size_t i = 0; i + 1 < doors.size(); i++)
    if (!(doors[i].center.x < doors[i + 1].center.x)) ordered = false;

  auto cls = classify_components(g, w);
  Components cc = connected_components(g);
  long two_ended_crossing_all = 0, two_ended = 0;
  bool convex = true;
  std::vector<int> order((size_t)doors.size());
  std::iota(order.begin(), order.end(), 0);
  for (int comp = 0; comp < cc.count; comp++) {
    int rep = cls.report_of_component[comp];
    if (rep < 0 || cls.reports[rep].ends.kind != EndsKind::TwoEnded) continue;
    two_ended++;
    std::vector<Segment> segs;
    for (int e : canonical_edges(g))
      if (cc.comp[g.edges[e].tail] == comp) segs.push_back(g.edge_segment(e));
    auto trace = door_trace(segs, doors);
    if ((long)trace.size() == (long)doors.size()) two_ended_crossing_all++;
    if (!check_trace_convex(trace, order)) convex = false;
  }
  r.pass = !doors.empty() && ordered && two_ended == 1 && two_ended_crossing_all == two_ended &&
           convex;
  r.detail = fmt("%zu doors (x-ordered %s); %ld/%ld two-ended components cross all doors, traces "
                 "convex %s",
                 doors.size(), ordered ? "yes" : "no", two_ended_crossing_all, two_ended,
                 convex ? "yes" : "no");
  return r;
}

// 9. Peeling-depth tail at the grid center over 100 trees picks the layer
// schedule; the scheduled union's edge intensity must respect the series
// bound. Statistical.
CriterionResult phi_intensity_summability() {
  CriterionResult r{9, "phi-intensity-summability", false, ""};
  const int S_depth = 100, S_lambda = 20;
  std::vector<int> depths(S_depth);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int s = 0; s < S_depth; s++) {
    auto g = ust_wilson(GridSpec(40, 40), split_seed(300, s));
    int center = -1;
    for (int v = 0; v < g.vertex_count(); v++)
      if (g.verts[v] == Point{rat(19), rat(19)}) center = v;
    auto d = peeling_depth(g, center, 400);
    depths[s] = d ? *d : -1;
  }
  PhiSchedule sched = quantile_schedule(depths, 10);
  double series = 0;
  for (long p : sched.phi) {
    long exceed = 0;
    for (int d : depths)
      if (d < 0 || d > p) exceed++;
    series += (double)exceed / (double)S_depth;
  }
  double series_bound = 8.0 * series;

  std::vector<double> lams(S_lambda);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int s = 0; s < S_lambda; s++) {
    auto g = ust_wilson(GridSpec(40, 40), split_seed(301, s));
    auto gp = g_phi(g, sched);
    Box region(rat(0), rat(0), rat(39), rat(39));
    lams[s] = rat_double(edge_intensity(gp, unit_box_grid(region, rat(39, 4), 400)));
  }
  double lam = mean_of(lams), se = stderr_of(lams);
  r.pass = series_bound <= 16.0 && lam <= series_bound + 3.0 * se;
  std::string phis;
  for (long p : sched.phi) phis += fmt(" %ld", p);
  r.detail = fmt("schedule%s; 8*sum tail %.3f <= 16; lambda(G_phi) %.3f <= %.3f", phis.c_str(),
                 series_bound, lam, series_bound + 3.0 * se);
  return r;
}

// 10. The same config run twice writes byte-identical stats files.
CriterionResult replay_reproducibility(const std::string& scratch_dir) {
  CriterionResult r{10, "replay-reproducibility", false, ""};
  namespace fs = std::filesystem;
  fs::create_directories(scratch_dir);
  std::string a = (fs::path(scratch_dir) / "replay_a.csv").string();
  std::string b = (fs::path(scratch_dir) / "replay_b.csv").string();
  std::string cfg_text =
      R"({"model":"drainage","width":30,"height":30,"p":[2,3],"lambda":true,"chi":[5,10],)"
      R"("window":{"origin":[15,15],"inner":7,"outer":14},"classify":true,"seeds":8,)"
      R"("master_seed":21,"out_stats":")";
  auto ra = run_experiment(config_from_json(cfg_text + a + "\"}"));
  auto rb = run_experiment(config_from_json(cfg_text + b + "\"}"));
  bool same = read_text_file(a) == read_text_file(b);
  r.pass = ra.ok && rb.ok && same && ra.csv == rb.csv;
  r.detail = fmt("two runs, %zu rows each: stats files %s", ra.rows.size(),
                 same ? "byte-identical" : "differ");
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& scratch_dir) {
  return {
      contour_cycle_law(),
      primal_dual_spanning(),
      box_crossing_bound(),
      trifurcation_decay(),
      two_ended_field(),
      one_ended_coalescence(),
      betweenness_axioms(),
      corridor_integration(),
      phi_intensity_summability(),
      replay_reproducibility(scratch_dir),
  };
}

std::string format_criterion(const CriterionResult& r) {
  return fmt("%s %2d %s: %s", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
}

}  // namespace pforest
