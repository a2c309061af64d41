#include "trin/pipeline.hpp"

#include <stdexcept>

namespace trin {

Method parse_method(const std::string& name) {
  if (name == "pde") return Method::pde;
  if (name == "kmeans") return Method::kmeans;
  if (name == "kmedoids") return Method::kmedoids;
  if (name == "agglomerative") return Method::agglomerative;
  if (name == "mst") return Method::mst;
  throw std::invalid_argument("unknown method '" + name +
                              "' (expected pde|kmeans|kmedoids|agglomerative|mst)");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::pde:
      return "pde";
    case Method::kmeans:
      return "kmeans";
    case Method::kmedoids:
      return "kmedoids";
    case Method::agglomerative:
      return "agglomerative";
    case Method::mst:
      return "mst";
  }
  return "?";
}

PipelineResult run_pipeline(const ScalarField& image, const PipelineOptions& opts) {
  PipelineResult out;
  Trimap raw;
  switch (opts.method) {
    case Method::pde: {
      ModelParams p = opts.params ? *opts.params : default_params(grid_spec(image));
      out.solve = solve(image, p);
      raw = quantize(out.solve->final);
      break;
    }
    case Method::kmeans:
      raw = assignment_to_trimap(kmeans3(image, opts.seed));
      break;
    case Method::kmedoids:
      raw = assignment_to_trimap(kmedoids3(image, opts.seed));
      break;
    case Method::agglomerative:
      raw = assignment_to_trimap(agglomerative3(image));
      break;
    case Method::mst:
      raw = assignment_to_trimap(mst3(image));
      break;
  }

  const DiskKernel kernel = disk_kernel(opts.disk_radius);
  const BinaryMask mask = build_mask(raw, kernel, opts.largest_component);
  out.trimap = apply_mask(raw, mask);

  bool any_fg = false;
  for (Label l : out.trimap.labels) any_fg = any_fg || l != Label::L1;
  if (!any_fg) {
    throw DegenerateSegmentation("mask retained no foreground pixels");
  }
  return out;
}

}  // namespace trin
