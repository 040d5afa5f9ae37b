#pragma once

// Access to the committed fixture graphs.

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "hyperpoly/ribbon_graph.hpp"

namespace hyperpoly::testing {

inline std::string fixture_path(const std::string& file) {
  return std::string(HYPERPOLY_FIXTURE_DIR) + "/" + file;
}

inline RibbonGraph fixture(const std::string& file) { return RibbonGraph::load(fixture_path(file)); }

/// Every valid fixture file (top level of the fixture directory), sorted.
inline std::vector<std::string> fixture_files() {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(HYPERPOLY_FIXTURE_DIR))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      out.push_back(entry.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> invalid_fixture_files() {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(std::string(HYPERPOLY_FIXTURE_DIR) + "/invalid"))
    out.push_back("invalid/" + entry.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hyperpoly::testing
