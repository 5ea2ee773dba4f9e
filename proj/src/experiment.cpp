#include "pforest/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "pforest/corridor.hpp"
#include "pforest/generators.hpp"
#include "pforest/graph_io.hpp"
#include "pforest/rng.hpp"
#include "pforest/svg.hpp"

namespace pforest {

namespace {

using nlohmann::json;

Rat json_rat(const json& j, const char* what) {
  if (j.is_number_integer()) return rat(j.get<long>());
  if (j.is_string()) return rat_parse(j.get<std::string>());
  throw std::invalid_argument(std::string("config: ") + what + " must be an integer or a rational string");
}

struct Extent {
  Rat x0, x1, y0, y1;
};

std::optional<Extent> graph_extent(const GeometricGraph& g) {
  if (g.vertex_count() == 0) return std::nullopt;
  Extent b{g.verts[0].x, g.verts[0].x, g.verts[0].y, g.verts[0].y};
  for (const Point& p : g.verts) {
    if (p.x < b.x0) b.x0 = p.x;
    if (p.x > b.x1) b.x1 = p.x;
    if (p.y < b.y0) b.y0 = p.y;
    if (p.y > b.y1) b.y1 = p.y;
  }
  return b;
}

std::vector<std::vector<Segment>> segments_by_component(const GeometricGraph& g,
                                                        const Components& cc) {
  std::vector<std::vector<Segment>> segs(cc.count);
  for (int e : canonical_edges(g)) segs[cc.comp[g.edges[e].tail]].push_back(g.edge_segment(e));
  return segs;
}

void analyze_row(const ExperimentConfig& cfg, const GeometricGraph& g, StatsRow& row) {
  auto crossings = validate_planarity(g);
  if (!crossings.empty()) throw std::runtime_error("planarity violated");
  if (!validate_forest(g).ok) throw std::runtime_error("cycle detected");

  std::optional<Extent> bbox = graph_extent(g);

  if (cfg.lambda && bbox && bbox->x0 < bbox->x1 && bbox->y0 < bbox->y1) {
    Rat extent_x = bbox->x1 - bbox->x0, extent_y = bbox->y1 - bbox->y0;
    Rat margin = (extent_x < extent_y ? extent_x : extent_y) / 4;
    auto boxes = unit_box_grid(Box(bbox->x0, bbox->y0, bbox->x1, bbox->y1), margin, 400);
    if (!boxes.empty()) row.lambda_hat = edge_intensity(g, boxes);
  }

  if (bbox)
    for (long n : cfg.chi_ns) {
      Point o{(bbox->x0 + bbox->x1 - rat(n)) / 2, (bbox->y0 + bbox->y1 - rat(n)) / 2};
      row.chi.push_back(chi_n(g, n, o));
    }

  if ((cfg.classify || cfg.trifurcation || cfg.doors) && !cfg.window)
    throw std::invalid_argument("window required");

  std::optional<ClassifyResult> cls;
  if (cfg.classify || cfg.doors) cls = classify_components(g, *cfg.window);
  if (cfg.classify) {
    row.n0 = cls->n0;
    row.n1 = cls->n1;
    row.n2 = cls->n2;
    row.n3plus = cls->n3plus;
  }

  if (cfg.trifurcation) {
    Box in = inner_box(*cfg.window);
    long total = 0, tri = 0;
    for (int v = 0; v < g.vertex_count(); v++) {
      const Point& p = g.verts[v];
      if (p.x < in.x0 || p.x > in.x1 || p.y < in.y0 || p.y > in.y1) continue;
      total++;
      if (escape_degree(g, v, *cfg.window) >= 3) tri++;
    }
    if (total > 0) row.trifurcation_density = Rat(tri) / total;
  }

  if (cfg.doors) {
    auto doors = detect_doors(g, cfg.doors->k, cfg.doors->l, *cfg.window);
    row.door_count = (long)doors.size();
    std::vector<int> order((size_t)doors.size());
    for (size_t i = 0; i < order.size(); i++) order[i] = (int)i;

    Components cc = connected_components(g);
    auto segs = segments_by_component(g, cc);
    long two_ended = 0, convex = 0;
    for (int comp = 0; comp < cc.count; comp++) {
      int r = cls->report_of_component[comp];
      if (r < 0 || cls->reports[r].ends.kind != EndsKind::TwoEnded) continue;
      two_ended++;
      if (check_trace_convex(door_trace(segs[comp], doors), order)) convex++;
    }
    if (two_ended > 0) row.trace_convex_frac = Rat(convex) / two_ended;
  }
}

// ---- CSV ----

std::string fmt_double(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

struct ColumnFold {
  std::vector<Rat> vals;
  void add(const Rat& v) { vals.push_back(v); }
  std::string mean() const {
    if (vals.empty()) return "";
    Rat s = rat(0);
    for (const Rat& v : vals) s += v;
    return rat_str(s / rat((long)vals.size()));
  }
  std::string stderr_str() const {
    if (vals.size() < 2) return "";
    Rat s = rat(0);
    for (const Rat& v : vals) s += v;
    Rat m = s / rat((long)vals.size());
    Rat ss = rat(0);
    for (const Rat& v : vals) ss += (v - m) * (v - m);
    double var = rat_double(ss) / (double)(vals.size() - 1);
    return fmt_double(std::sqrt(var / (double)vals.size()));
  }
};

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("config: ") + ex.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config: top level must be an object");

  ExperimentConfig cfg;
  if (!doc.contains("model") || !doc["model"].is_string())
    throw std::invalid_argument("config: model is required");
  cfg.model = doc["model"].get<std::string>();
  static const std::set<std::string> known{"ust", "ust_dual", "drainage", "iso", "fixture"};
  if (!known.count(cfg.model)) throw std::invalid_argument("config: unknown model " + cfg.model);

  cfg.width = doc.value("width", 0);
  cfg.height = doc.value("height", 0);
  if (doc.contains("p")) {
    const json& p = doc["p"];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
      throw std::invalid_argument("config: p must be [num, den]");
    cfg.p_num = p[0].get<long>();
    cfg.p_den = p[1].get<long>();
  }
  cfg.tie_break = doc.value("tie_break", std::string("right"));
  if (cfg.tie_break != "left" && cfg.tie_break != "right")
    throw std::invalid_argument("config: tie_break must be left or right");
  cfg.fixture_l = doc.value("fixture_l", 16);
  cfg.teeth = doc.value("teeth", true);

  if (doc.contains("window")) {
    const json& w = doc["window"];
    if (!w.is_object() || !w.contains("origin") || !w["origin"].is_array() ||
        w["origin"].size() != 2 || !w.contains("inner") || !w.contains("outer"))
      throw std::invalid_argument("config: window needs origin [x, y], inner, outer");
    Point o{json_rat(w["origin"][0], "window.origin"), json_rat(w["origin"][1], "window.origin")};
    cfg.window.emplace(o, json_rat(w["inner"], "window.inner"), json_rat(w["outer"], "window.outer"));
  }

  cfg.lambda = doc.value("lambda", false);
  if (doc.contains("chi")) {
    for (const json& n : doc["chi"]) {
      if (!n.is_number_integer() || n.get<long>() < 1)
        throw std::invalid_argument("config: chi entries must be positive integers");
      cfg.chi_ns.push_back(n.get<long>());
    }
  }
  cfg.classify = doc.value("classify", false);
  cfg.trifurcation = doc.value("trifurcation", false);
  if (doc.contains("doors")) {
    const json& d = doc["doors"];
    if (!d.is_object() || !d.contains("k") || !d.contains("l"))
      throw std::invalid_argument("config: doors needs k and l");
    cfg.doors = DoorParams{d["k"].get<long>(), d["l"].get<long>()};
    if (cfg.doors->k < 1 || cfg.doors->k >= cfg.doors->l)
      throw std::invalid_argument("config: doors need 1 <= k < l");
  }

  cfg.seeds = doc.value("seeds", 1);
  if (cfg.seeds < 1) throw std::invalid_argument("config: seeds must be >= 1");
  cfg.master_seed = doc.value("master_seed", (std::uint64_t)0);
  cfg.out_stats = doc.value("out_stats", std::string());
  cfg.out_svg = doc.value("out_svg", std::string());

  if ((cfg.classify || cfg.trifurcation || cfg.doors) && !cfg.window)
    throw std::invalid_argument("config: window required for classify/trifurcation/doors");
  bool needs_grid = cfg.model == "ust" || cfg.model == "ust_dual" || cfg.model == "drainage" ||
                    cfg.model == "iso";
  if (needs_grid && (cfg.width < 2 || cfg.height < 2))
    throw std::invalid_argument("config: width/height must be >= 2");
  if (cfg.model == "fixture" && cfg.fixture_l < 8)
    throw std::invalid_argument("config: fixture_l must be >= 8");
  return cfg;
}

GeometricGraph build_model(const ExperimentConfig& cfg, std::uint64_t seed) {
  if (cfg.model == "ust") return ust_wilson(GridSpec(cfg.width, cfg.height), seed);
  if (cfg.model == "ust_dual") {
    GridSpec gs(cfg.width, cfg.height);
    auto t = ust_wilson(gs, seed);
    return graph_union({t, dual_tree(t, gs)});
  }
  if (cfg.model == "drainage") {
    TieBreak tb = cfg.tie_break == "left" ? TieBreak::Left : TieBreak::Right;
    return drainage_grs(DrainageSpec(cfg.width, cfg.height, cfg.p_num, cfg.p_den, tb, seed));
  }
  if (cfg.model == "iso") return iso_points(GridSpec(cfg.width, cfg.height));
  if (cfg.model == "fixture") return fixture_corridor(cfg.fixture_l, cfg.teeth);
  throw std::invalid_argument("unknown model " + cfg.model);
}

std::string stats_csv(const std::vector<StatsRow>& rows, const std::vector<long>& chi_ns) {
  std::string csv = "seed,lambda_hat";
  for (long n : chi_ns) csv += ",chi_" + std::to_string(n);
  csv += ",n0,n1,n2,n3plus,trifurcation_density,door_count,trace_convex_frac,valid\n";

  size_t ncols = 1 + chi_ns.size() + 8;  // lambda, chi..., four counts, density, doors, frac, valid
  std::vector<ColumnFold> folds(ncols);
  for (const StatsRow& r : rows) {
    std::vector<std::string> cells;
    size_t c = 0;
    auto put = [&](const std::string& s, const std::optional<Rat>& v) {
      cells.push_back(s);
      if (v) folds[c].add(*v);
      c++;
    };
    auto put_rat = [&](const std::optional<Rat>& v) { put(v ? rat_str(*v) : "", v); };
    auto put_long = [&](const std::optional<long>& v) {
      put(v ? std::to_string(*v) : "", v ? std::optional<Rat>(rat(*v)) : std::nullopt);
    };

    put_rat(r.lambda_hat);
    for (size_t i = 0; i < chi_ns.size(); i++)
      put_long(i < r.chi.size() ? std::optional<long>(r.chi[i]) : std::nullopt);
    put_long(r.n0);
    put_long(r.n1);
    put_long(r.n2);
    put_long(r.n3plus);
    put_rat(r.trifurcation_density);
    put_long(r.door_count);
    put_rat(r.trace_convex_frac);
    put_long(std::optional<long>(r.valid ? 1 : 0));

    csv += std::to_string(r.seed);
    for (const std::string& cell : cells) csv += "," + cell;
    csv += "\n";
  }

  csv += "mean";
  for (const ColumnFold& f : folds) csv += "," + f.mean();
  csv += "\nstderr";
  for (const ColumnFold& f : folds) csv += "," + f.stderr_str();
  csv += "\n";
  return csv;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  ExperimentResult result;
  result.rows.resize(cfg.seeds);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int k = 0; k < cfg.seeds; k++) {
    StatsRow& row = result.rows[k];
    row.seed = split_seed(cfg.master_seed, (std::uint64_t)k);
    try {
      GeometricGraph g = build_model(cfg, row.seed);
      analyze_row(cfg, g, row);
    } catch (const std::exception& ex) {
      row.valid = false;
      row.error = ex.what();
    }
  }

  for (const StatsRow& row : result.rows)
    if (!row.valid) {
      result.ok = false;
      if (result.failure.empty())
        result.failure = "seed " + std::to_string(row.seed) + ": " + row.error;
    }

  result.csv = stats_csv(result.rows, cfg.chi_ns);
  if (!cfg.out_stats.empty()) write_text_file(cfg.out_stats, result.csv);

  if (!cfg.out_svg.empty()) {
    std::uint64_t seed0 = result.rows.empty() ? cfg.master_seed : result.rows[0].seed;
    GeometricGraph g = build_model(cfg, seed0);
    RenderDoc doc{{}, {}, Box(rat(0), rat(0), rat(1), rat(1))};
    if (cfg.model == "ust_dual") {
      GridSpec gs(cfg.width, cfg.height);
      auto t = ust_wilson(gs, seed0);
      doc.layers.push_back({t, LayerStyle::Primal});
      doc.layers.push_back({dual_tree(t, gs), LayerStyle::Dual});
    } else if (cfg.model == "iso") {
      doc.layers.push_back({g, LayerStyle::Iso});
    } else {
      doc.layers.push_back({g, LayerStyle::Primal});
    }
    if (cfg.doors && cfg.window)
      doc.doors = detect_doors(g, cfg.doors->k, cfg.doors->l, *cfg.window);
    if (auto bb = graph_extent(g))
      doc.viewport = Box(bb->x0 - 1, bb->y0 - 1, bb->x1 + 1, bb->y1 + 1);
    write_text_file(cfg.out_svg, render_svg(doc));
  }
  return result;
}

}  // namespace pforest
