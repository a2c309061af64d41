#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "trin/pipeline.hpp"

namespace trin {

// Parsed command-line surface of a single run; flags override config-file
// values, which override the derived defaults.
struct RunConfig {
  Method method = Method::pde;
  std::optional<double> a, b, c, cd, cs, dt;
  std::optional<long> max_steps;
  std::optional<double> tol;
  int disk_radius = 20;
  bool largest_component = true;
  std::uint64_t seed = 0;
};

// Applies the overrides on top of default_params(g). When --dt is given
// without --cs, c_S keeps its derived 1/dt coupling.
ModelParams resolve_params(const RunConfig& cfg, const GridSpec& g);

// Entry point behind main(): exit 0 on success, 1 on usage/I-O/parameter
// errors, 2 on degenerate segmentation (empty foreground).
int run_cli(int argc, const char* const* argv);

}  // namespace trin
