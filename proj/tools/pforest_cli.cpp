// pforest: planar random forest models, window statistics, corridor reports.
//
// Exit codes: 0 success, 1 validation failure, 2 configuration error.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "pforest/acceptance.hpp"
#include "pforest/corridor.hpp"
#include "pforest/experiment.hpp"
#include "pforest/generators.hpp"
#include "pforest/graph_io.hpp"
#include "pforest/svg.hpp"

using namespace pforest;

namespace {

constexpr int kOk = 0, kValidationFailure = 1, kConfigError = 2;

Point parse_point(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("expected X,Y with rational coordinates: '" + s + "'");
  return Point{rat_parse(s.substr(0, comma)), rat_parse(s.substr(comma + 1))};
}

std::optional<WindowSpec> window_from_flags(const std::string& origin, const std::string& inner,
                                            const std::string& outer) {
  if (origin.empty() && inner.empty() && outer.empty()) return std::nullopt;
  if (origin.empty() || inner.empty() || outer.empty())
    throw std::invalid_argument("--origin, --inner and --outer must be given together");
  return WindowSpec(parse_point(origin), rat_parse(inner), rat_parse(outer));
}

struct Extent {
  Rat x0, x1, y0, y1;
};

std::optional<Extent> graph_extent(const GeometricGraph& g) {
  if (g.vertex_count() == 0) return std::nullopt;
  Extent e{g.verts[0].x, g.verts[0].x, g.verts[0].y, g.verts[0].y};
  for (const Point& p : g.verts) {
    e.x0 = std::min(e.x0, p.x);
    e.x1 = std::max(e.x1, p.x);
    e.y0 = std::min(e.y0, p.y);
    e.y1 = std::max(e.y1, p.y);
  }
  return e;
}

Box padded_viewport(const GeometricGraph& g) {
  auto e = graph_extent(g);
  if (!e) return Box(rat(0), rat(0), rat(1), rat(1));
  return Box(e->x0 - 1, e->y0 - 1, e->x1 + 1, e->y1 + 1);
}

std::string describe_point(const Point& p) {
  return "(" + rat_str(p.x) + ", " + rat_str(p.y) + ")";
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::fputs(text.c_str(), stdout);
  else
    write_text_file(out_path, text);
}

// ---- generate

int cmd_generate(const std::string& model, int width, int height, std::uint64_t seed,
                 const std::string& p, const std::string& tie, int fixture_l, bool no_teeth,
                 const std::string& contour_eps, const std::string& phi_list,
                 const std::string& out) {
  GeometricGraph g;
  if (model == "ust" || model == "ust_dual" || model == "dual") {
    GridSpec gs(width, height);
    auto t = ust_wilson(gs, seed);
    if (model == "ust")
      g = std::move(t);
    else if (model == "dual")
      g = dual_tree(t, gs);
    else
      g = graph_union({t, dual_tree(t, gs)});
  } else if (model == "drainage") {
    Rat pr = rat_parse(p);
    TieBreak tb = tie == "left" ? TieBreak::Left : TieBreak::Right;
    g = drainage_grs(DrainageSpec(width, height, pr.get_num().get_si(), pr.get_den().get_si(),
                                  tb, seed));
  } else if (model == "iso") {
    g = iso_points(GridSpec(width, height));
  } else if (model == "fixture") {
    g = fixture_corridor(fixture_l, !no_teeth);
  } else {
    throw std::invalid_argument("unknown model '" + model + "'");
  }

  if (!phi_list.empty()) {
    std::vector<long> phis;
    std::stringstream ss(phi_list);
    std::string item;
    while (std::getline(ss, item, ',')) phis.push_back(std::stol(item));
    g = g_phi(g, PhiSchedule(std::move(phis)));
  }
  if (!contour_eps.empty()) g = contour(g, rat_parse(contour_eps));

  write_graph_file(g, out);
  std::printf("wrote %s: %d vertices, %d edges\n", out.c_str(), g.vertex_count(),
              g.edge_count());
  return kOk;
}

// ---- analyze

int analyze_graph(const GeometricGraph& g, bool lambda, const std::vector<long>& chi_ns,
                  bool classify, bool trifurcation, const std::optional<WindowSpec>& w,
                  bool doors, long k, long l, const std::string& out) {
  std::string rep;
  rep += "vertices " + std::to_string(g.vertex_count()) + "\n";
  rep += "edges " + std::to_string(g.edge_count()) + "\n";
  rep += "components " + std::to_string(connected_components(g).count) + "\n";

  auto violations = validate_planarity(g);
  rep += "planar " + std::string(violations.empty() ? "yes" : "no") + "\n";
  if (!violations.empty())
    rep += "planarity_violations " + std::to_string(violations.size()) + "\n";
  rep += "forest " + std::string(validate_forest(g).ok ? "yes" : "no") + "\n";

  if (lambda) {
    auto e = graph_extent(g);
    if (!e || !(e->x0 < e->x1) || !(e->y0 < e->y1)) {
      rep += "lambda n/a\n";
    } else {
      Rat margin = std::min(e->x1 - e->x0, e->y1 - e->y0) / 4;
      Rat lam = edge_intensity(g, unit_box_grid(Box(e->x0, e->y0, e->x1, e->y1), margin, 400));
      rep += "lambda " + rat_str(lam) + " (~" + std::to_string(rat_double(lam)) + ")\n";
    }
  }
  if (!chi_ns.empty()) {
    if (!w) throw std::invalid_argument("--chi needs --origin/--inner/--outer");
    for (long n : chi_ns)
      rep += "chi_" + std::to_string(n) + " " + std::to_string(chi_n(g, n, w->origin)) + "\n";
  }
  if (classify || trifurcation || doors) {
    if (!w) throw std::invalid_argument("window analyses need --origin/--inner/--outer");
  }
  if (classify) {
    auto cls = classify_components(g, *w);
    rep += "n0 " + std::to_string(cls.n0) + "\n";
    rep += "n1 " + std::to_string(cls.n1) + "\n";
    rep += "n2 " + std::to_string(cls.n2) + "\n";
    rep += "n3plus " + std::to_string(cls.n3plus) + "\n";
  }
  if (trifurcation) {
    Box in = inner_box(*w);
    long tot = 0, tri = 0;
    for (int v = 0; v < g.vertex_count(); v++) {
      const Point& pt = g.verts[v];
      if (pt.x < in.x0 || pt.x > in.x1 || pt.y < in.y0 || pt.y > in.y1) continue;
      tot++;
      if (escape_degree(g, v, *w) >= 3) tri++;
    }
    rep += "trifurcation_density " + std::to_string(tri) + "/" + std::to_string(tot) + "\n";
  }
  if (doors) {
    auto ds = detect_doors(g, k, l, *w);
    rep += "doors " + std::to_string(ds.size()) + "\n";
  }

  emit(out, rep);
  return violations.empty() ? kOk : kValidationFailure;
}

// ---- corridor report

int cmd_corridor(const GeometricGraph& g, long k, long l, const WindowSpec& w,
                 const std::string& out) {
  auto cls = classify_components(g, w);
  auto ds = detect_doors(g, k, l, w);

  std::string rep;
  rep += "components in window: one-ended " + std::to_string(cls.n1) + ", two-ended " +
         std::to_string(cls.n2) + ", trifurcating " + std::to_string(cls.n3plus) + "\n";
  rep += "doors " + std::to_string(ds.size()) + " (k=" + std::to_string(k) +
         ", l=" + std::to_string(l) + ")\n";
  for (size_t i = 0; i < ds.size(); i++) {
    const Door& d = ds[i];
    rep += "door " + std::to_string(i) + ": lattice (" + std::to_string(d.lattice.first) + "," +
           std::to_string(d.lattice.second) + ") center " + describe_point(d.center) +
           " segment " + describe_point(d.door_segment.a) + " -> " +
           describe_point(d.door_segment.b) + " components {" + std::to_string(d.component1) +
           "," + std::to_string(d.component2) + "}\n";
  }
  std::vector<int> order((size_t)ds.size());
  for (size_t i = 0; i < ds.size(); i++) order[i] = (int)i;
  if (!ds.empty()) {
    rep += "order:";
    for (int i : order) rep += " " + std::to_string(i);
    rep += " (by center x, then y)\n";
  }

  bool all_convex = true;
  Components cc = connected_components(g);
  for (int comp = 0; comp < cc.count; comp++) {
    int r = cls.report_of_component[comp];
    if (r < 0 || cls.reports[r].ends.kind != EndsKind::TwoEnded) continue;
    std::vector<Segment> segs;
    for (int e : canonical_edges(g))
      if (cc.comp[g.edges[e].tail] == comp) segs.push_back(g.edge_segment(e));
    auto trace = door_trace(segs, ds);
    bool convex = check_trace_convex(trace, order);
    all_convex = all_convex && convex;
    rep += "two-ended component " + std::to_string(comp) + ": trace {";
    for (size_t i = 0; i < trace.size(); i++)
      rep += (i ? "," : "") + std::to_string(trace[i]);
    rep += "}";
    auto ext = extreme_points(trace, order);
    if (!ext.empty()) {
      rep += " extremes {";
      for (size_t i = 0; i < ext.size(); i++) rep += (i ? "," : "") + std::to_string(ext[i]);
      rep += "}";
    }
    rep += convex ? " convex" : " NOT convex";
    rep += "\n";
  }

  emit(out, rep);
  return all_convex ? kOk : kValidationFailure;
}

// ---- verify

int cmd_verify(const std::string& scratch) {
  auto results = run_acceptance(scratch);
  bool all = true;
  for (const auto& r : results) {
    std::printf("%s\n", format_criterion(r).c_str());
    all = all && r.pass;
  }
  return all ? kOk : kValidationFailure;
}

// ---- render

int cmd_render(const GeometricGraph& g, const std::string& style, bool doors, long k, long l,
               const std::optional<WindowSpec>& w, const std::string& out) {
  LayerStyle ls = LayerStyle::Primal;
  if (style == "dual") ls = LayerStyle::Dual;
  else if (style == "contour") ls = LayerStyle::Contour;
  else if (style == "iso") ls = LayerStyle::Iso;
  else if (style != "primal") throw std::invalid_argument("unknown style '" + style + "'");

  RenderDoc doc{{}, {}, padded_viewport(g)};
  doc.layers.push_back({g, ls});
  if (doors) {
    if (!w) throw std::invalid_argument("--doors needs --origin/--inner/--outer");
    doc.doors = detect_doors(g, k, l, *w);
  }
  write_text_file(out, render_svg(doc));
  std::printf("wrote %s\n", out.c_str());
  return kOk;
}

// ---- bench

int cmd_bench() {
  using Clock = std::chrono::steady_clock;
  auto ms = [](Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };
#ifdef _OPENMP
  std::printf("threads %d\n", omp_get_max_threads());
#else
  std::printf("threads 1 (no OpenMP)\n");
#endif

  struct Load {
    std::string name;
    GeometricGraph g;
  };
  std::vector<Load> loads;
  loads.push_back({"drainage 32x32", drainage_grs(DrainageSpec(32, 32, 1, 2, TieBreak::Right, 7))});
  {
    GridSpec gs(20, 20);
    auto t = ust_wilson(gs, 7);
    loads.push_back({"ust+dual 20x20", graph_union({t, dual_tree(t, gs)})});
  }
  {
    auto d = drainage_grs(DrainageSpec(16, 12, 1, 2, TieBreak::Left, 4));
    GeometricGraph merged = d;
    int off = merged.vertex_count();
    for (const Point& p : d.verts)
      merged.verts.push_back(Point{p.x + rat(1, 3), p.y + rat(1, 7)});
    for (const auto& e : d.edges) merged.edges.push_back({e.tail + off, e.head + off});
    loads.push_back({"overlap 16x12x2", std::move(merged)});
  }

  bool all_match = true;
  std::printf("%-16s %7s %14s %14s %8s %s\n", "workload", "edges", "parallel(ms)", "serial(ms)",
              "speedup", "agree");
  for (const Load& ld : loads) {
    auto t0 = Clock::now();
    auto par = validate_planarity(ld.g);
    auto t1 = Clock::now();
    auto ser = validate_planarity_serial(ld.g);
    auto t2 = Clock::now();
    bool match = par == ser;
    all_match = all_match && match;
    std::printf("%-16s %7d %14.1f %14.1f %7.1fx %s\n", ld.name.c_str(), ld.g.edge_count(),
                ms(t0, t1), ms(t1, t2), ms(t0, t1) > 0 ? ms(t1, t2) / ms(t0, t1) : 0.0,
                match ? "yes" : "NO");
  }
  return all_match ? kOk : kValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planar random forests: models, window statistics, corridors"};
  app.require_subcommand(1);

  int rc = kOk;

  // generate
  std::string gen_model = "ust", gen_p = "1/2", gen_tie = "right", gen_out;
  std::string gen_contour, gen_phi;
  int gen_w = 15, gen_h = 15, gen_fixture_l = 16;
  bool gen_no_teeth = false;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("generate", "sample a model and write a graph file");
  gen->add_option("--model", gen_model, "ust | ust_dual | dual | drainage | iso | fixture");
  gen->add_option("--width", gen_w, "grid width");
  gen->add_option("--height", gen_h, "grid height");
  gen->add_option("--seed", gen_seed, "sampler seed");
  gen->add_option("--p", gen_p, "drainage open probability (rational)");
  gen->add_option("--tie", gen_tie, "drainage tie break: left | right");
  gen->add_option("--fixture-l", gen_fixture_l, "fixture half-width");
  gen->add_flag("--no-teeth", gen_no_teeth, "fixture without comb teeth");
  gen->add_option("--contour", gen_contour, "post-process: contour at this epsilon (rational)");
  gen->add_option("--phi", gen_phi, "post-process: layered contour union, schedule d4,d5,...");
  gen->add_option("--out", gen_out, "output graph file")->required();
  gen->callback([&] {
    rc = cmd_generate(gen_model, gen_w, gen_h, gen_seed, gen_p, gen_tie, gen_fixture_l,
                      gen_no_teeth, gen_contour, gen_phi, gen_out);
  });

  // analyze
  std::string an_in, an_config, an_origin, an_inner, an_outer, an_out;
  std::vector<long> an_chi;
  bool an_lambda = false, an_classify = false, an_trifurcation = false, an_doors = false;
  long an_k = 1, an_l = 2;
  auto* an = app.add_subcommand("analyze", "window statistics for a graph file or a config run");
  an->add_option("--in", an_in, "graph file");
  an->add_option("--config", an_config, "experiment config file (runs all seeds)");
  an->add_flag("--lambda", an_lambda, "edge intensity over a box grid");
  an->add_option("--chi", an_chi, "boundary crossing counts at these n")->delimiter(',');
  an->add_flag("--classify", an_classify, "component ends classification");
  an->add_flag("--trifurcation", an_trifurcation, "inner-box trifurcation density");
  an->add_flag("--doors", an_doors, "count detected doors");
  an->add_option("--k", an_k, "door box half-width");
  an->add_option("--l", an_l, "door confinement half-width");
  an->add_option("--origin", an_origin, "window origin X,Y (rationals)");
  an->add_option("--inner", an_inner, "inner window half-width (rational)");
  an->add_option("--outer", an_outer, "outer window half-width (rational)");
  an->add_option("--out", an_out, "write the report here instead of stdout");
  an->callback([&] {
    if (an_in.empty() == an_config.empty())
      throw std::invalid_argument("analyze needs exactly one of --in or --config");
    if (!an_config.empty()) {
      auto result = run_experiment(config_from_json(read_text_file(an_config)));
      emit(an_out, result.csv);
      if (!result.ok) {
        std::fprintf(stderr, "experiment failed: %s\n", result.failure.c_str());
        rc = kValidationFailure;
      }
      return;
    }
    auto g = read_graph_file(an_in);
    auto w = window_from_flags(an_origin, an_inner, an_outer);
    rc = analyze_graph(g, an_lambda, an_chi, an_classify, an_trifurcation, w, an_doors, an_k,
                       an_l, an_out);
  });

  // corridor
  std::string co_in, co_origin, co_inner, co_outer, co_out;
  long co_k = 4, co_l = 6;
  auto* co = app.add_subcommand("corridor", "door detection and trace report");
  co->add_option("--in", co_in, "graph file")->required();
  co->add_option("--k", co_k, "door box half-width");
  co->add_option("--l", co_l, "door confinement half-width");
  co->add_option("--origin", co_origin, "window origin X,Y (rationals)")->required();
  co->add_option("--inner", co_inner, "inner window half-width (rational)")->required();
  co->add_option("--outer", co_outer, "outer window half-width (rational)")->required();
  co->add_option("--out", co_out, "write the report here instead of stdout");
  co->callback([&] {
    auto g = read_graph_file(co_in);
    auto w = window_from_flags(co_origin, co_inner, co_outer);
    rc = cmd_corridor(g, co_k, co_l, *w, co_out);
  });

  // verify
  std::string ve_scratch = "verify-scratch";
  auto* ve = app.add_subcommand("verify", "run the release gates");
  ve->add_option("--scratch", ve_scratch, "directory for the reproducibility stats files");
  ve->callback([&] { rc = cmd_verify(ve_scratch); });

  // render
  std::string re_in, re_style = "primal", re_origin, re_inner, re_outer, re_out;
  bool re_doors = false;
  long re_k = 4, re_l = 6;
  auto* re = app.add_subcommand("render", "graph file to SVG");
  re->add_option("--in", re_in, "graph file")->required();
  re->add_option("--style", re_style, "primal | dual | contour | iso");
  re->add_flag("--doors", re_doors, "overlay detected doors and the corridor band");
  re->add_option("--k", re_k, "door box half-width");
  re->add_option("--l", re_l, "door confinement half-width");
  re->add_option("--origin", re_origin, "window origin X,Y (rationals)");
  re->add_option("--inner", re_inner, "inner window half-width (rational)");
  re->add_option("--outer", re_outer, "outer window half-width (rational)");
  re->add_option("--out", re_out, "output SVG file")->required();
  re->callback([&] {
    auto g = read_graph_file(re_in);
    auto w = window_from_flags(re_origin, re_inner, re_outer);
    rc = cmd_render(g, re_style, re_doors, re_k, re_l, w, re_out);
  });

  // bench
  auto* be = app.add_subcommand("bench", "parallel vs serial planarity check");
  be->callback([&] { rc = cmd_bench(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  }
  return rc;
}
