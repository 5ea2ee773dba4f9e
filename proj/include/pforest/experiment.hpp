#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pforest/forest.hpp"

namespace pforest {

struct DoorParams {
  long k = 0, l = 0;
};

// Everything a run needs; identical configs replay byte-identically.
struct ExperimentConfig {
  std::string model;  // ust | drainage | ust_dual | iso | fixture
  int width = 0, height = 0;
  long p_num = 1, p_den = 2;
  std::string tie_break = "right";
  int fixture_l = 16;
  bool teeth = true;

  std::optional<WindowSpec> window;

  bool lambda = false;
  std::vector<long> chi_ns;
  bool classify = false;
  bool trifurcation = false;  // density of inner-box vertices with escape_degree >= 3
  std::optional<DoorParams> doors;

  int seeds = 1;
  std::uint64_t master_seed = 0;
  std::string out_stats, out_svg;
};

ExperimentConfig config_from_json(const std::string& text);

struct StatsRow {
  std::uint64_t seed = 0;
  std::optional<Rat> lambda_hat;
  std::vector<long> chi;  // parallel to cfg.chi_ns
  std::optional<long> n0, n1, n2, n3plus;
  std::optional<Rat> trifurcation_density;
  std::optional<long> door_count;
  std::optional<Rat> trace_convex_frac;
  bool valid = true;
  std::string error;
};

struct ExperimentResult {
  std::vector<StatsRow> rows;
  std::string csv;  // frozen column contract, aggregate rows at the bottom
  bool ok = true;
  std::string failure;
};

// Replicates run in parallel with independent derived streams; aggregation
// is a deterministic fold in seed order. Writes cfg.out_stats / cfg.out_svg
// when set.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// One replicate's graph, exactly as run_experiment builds it.
GeometricGraph build_model(const ExperimentConfig& cfg, std::uint64_t seed);

std::string stats_csv(const std::vector<StatsRow>& rows, const std::vector<long>& chi_ns);

}  // namespace pforest
