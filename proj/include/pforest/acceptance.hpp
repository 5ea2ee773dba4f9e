#pragma once

#include <string>
#include <vector>

namespace pforest {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// The ten release gates, in order. scratch_dir receives the stats files the
// reproducibility gate compares; it is created if missing.
std::vector<CriterionResult> run_acceptance(const std::string& scratch_dir);

// "PASS  3 box-crossing-bound: ..." one line per criterion.
std::string format_criterion(const CriterionResult& r);

}  // namespace pforest
