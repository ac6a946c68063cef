#pragma once

#include <string>
#include <vector>

#include "treeauto/schreier.hpp"

namespace treeauto::cli {

inline constexpr const char* kVersion = "0.1.0";

struct RunResult {
  /// 0 success, 1 usage or input error, 2 a budget ran out (partial results
  /// are still printed).
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs one command line, given without the program name.
RunResult run(const std::vector<std::string>& args);

/// DOT text of the graph. Vertices are labelled by their word; edges whose
/// generator has a nontrivial section at the source are bold.
std::string export_dot(const SchreierLevelGraph& graph);

}  // namespace treeauto::cli
