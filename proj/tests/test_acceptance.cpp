#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "pforest/acceptance.hpp"

using namespace pforest;

TEST_CASE("release gates") {
  auto scratch = std::filesystem::temp_directory_path() / "pforest_acceptance";
  auto results = run_acceptance(scratch.string());
  REQUIRE(results.size() == 10);
  for (const auto& r : results) std::printf("%s\n", format_criterion(r).c_str());
  std::fflush(stdout);
  for (const auto& r : results) {
    CAPTURE(r.id);
    CAPTURE(r.name);
    CAPTURE(r.detail);
    CHECK(r.pass);
  }
}
