#include "trin/evaluate.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "trin/postprocess.hpp"
#include "trin/solver.hpp"

namespace trin {
namespace {

ClassScore score_class(const Trimap& pred, const Trimap& truth, Label cls) {
  ClassScore s;
  for (std::size_t k = 0; k < pred.labels.size(); ++k) {
    const bool p = pred.labels[k] == cls;
    const bool t = truth.labels[k] == cls;
    if (p && t) {
      ++s.tp;
    } else if (p && !t) {
      ++s.fp;
    } else if (!p && t) {
      ++s.fn;
    } else {
      ++s.tn;
    }
  }
  const long errors = s.fp + s.fn;
  if (s.tp == 0 && errors == 0) {
    s.f1 = 1.0;
  } else {
    s.f1 = static_cast<double>(s.tp) / (static_cast<double>(s.tp) + errors / 2.0);
  }
  const long total = s.tp + s.fp + s.fn + s.tn;
  s.accuracy = static_cast<double>(s.tp + s.tn) / static_cast<double>(total);
  return s;
}

}  // namespace

EvalReport score(const Trimap& pred, const Trimap& truth) {
  if (!pred.same_shape(truth)) {
    throw std::invalid_argument("score: prediction and truth dimensions differ");
  }
  EvalReport r;
  r.class1 = score_class(pred, truth, Label::Lmid);
  r.class2 = score_class(pred, truth, Label::L0);
  r.average_f1 = (r.class1.f1 + r.class2.f1) / 2.0;
  r.average_accuracy = (r.class1.accuracy + r.class2.accuracy) / 2.0;
  return r;
}

WhoRatio who_ratio(const Trimap& t) {
  long dark = 0;
  long mid = 0;
  for (Label l : t.labels) {
    if (l == Label::L0) ++dark;
    if (l == Label::Lmid) ++mid;
  }
  if (dark + mid == 0) {
    throw std::invalid_argument("who_ratio: trimap has no foreground pixels");
  }
  WhoRatio w;
  w.ratio = static_cast<double>(dark) / static_cast<double>(dark + mid);
  w.within_guideline = w.ratio >= 0.40 && w.ratio <= 0.70;
  return w;
}

SweepGrid sweep(const ScalarField& u0, const Trimap& truth,
                const std::vector<double>& a_values, const std::vector<double>& c_values,
                double b) {
  if (a_values.empty() || c_values.empty()) {
    throw std::invalid_argument("sweep: value lists must be non-empty");
  }
  if (u0.height != truth.height || u0.width != truth.width) {
    throw std::invalid_argument("sweep: image and truth dimensions differ");
  }

  SweepGrid grid;
  grid.a_values = a_values;
  grid.c_values = c_values;
  grid.fixed_b = b;
  grid.f1.assign(a_values.size() * c_values.size(),
                 std::numeric_limits<double>::quiet_NaN());

  const GridSpec g = grid_spec(u0);
  const DiskKernel kernel = disk_kernel(20);
  for (std::size_t ai = 0; ai < a_values.size(); ++ai) {
    for (std::size_t ci = 0; ci < c_values.size(); ++ci) {
      ModelParams p = default_params(g);
      p.a = a_values[ai];
      p.b = b;
      p.c = c_values[ci];
      if (!(0.0 < p.a && p.a < p.b && p.b < p.c && p.c < 1.0)) continue;  // absent
      try {
        const SolveOutcome outcome = solve(u0, p);
        const Trimap quantized = quantize(outcome.final);
        const BinaryMask mask = build_mask(quantized, kernel);
        const EvalReport report = score(apply_mask(quantized, mask), truth);
        grid.f1[ai * c_values.size() + ci] = report.average_f1;
      } catch (const DegenerateSegmentation&) {
        // cell left absent: the pipeline has no output to score
      }
    }
  }
  return grid;
}

void write_sweep_csv(const SweepGrid& grid, std::ostream& os) {
  os << "a,c,avg_f1\n";
  char buf[96];
  for (std::size_t ai = 0; ai < grid.a_values.size(); ++ai) {
    for (std::size_t ci = 0; ci < grid.c_values.size(); ++ci) {
      const double f1 = grid.at(ai, ci);
      if (std::isnan(f1)) continue;
      std::snprintf(buf, sizeof(buf), "%g,%g,%.6f\n", grid.a_values[ai],
                    grid.c_values[ci], f1);
      os << buf;
    }
  }
}

}  // namespace trin
