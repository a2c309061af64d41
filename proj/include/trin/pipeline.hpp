#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "trin/baselines.hpp"
#include "trin/field.hpp"
#include "trin/postprocess.hpp"
#include "trin/solver.hpp"

namespace trin {

enum class Method { pde, kmeans, kmedoids, agglomerative, mst };

Method parse_method(const std::string& name);  // throws std::invalid_argument
std::string method_name(Method m);

struct PipelineOptions {
  Method method = Method::pde;
  // PDE solver parameters; when absent, default_params(grid) is used.
  std::optional<ModelParams> params;
  int disk_radius = 20;
  bool largest_component = true;
  std::uint64_t seed = 0;
};

struct PipelineResult {
  Trimap trimap;                     // final result, post-mask
  std::optional<SolveOutcome> solve;  // present for the PDE method
};

// The full production path: selected method -> trimap (quantize for PDE,
// sorted-center mapping for clusterers) -> closing mask -> apply. Throws
// DegenerateSegmentation when no foreground survives.
PipelineResult run_pipeline(const ScalarField& image, const PipelineOptions& opts);

}  // namespace trin
