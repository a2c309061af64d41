#pragma once

#include <iosfwd>
#include <vector>

#include "trin/field.hpp"

namespace trin {

struct ClassScore {
  long tp = 0, fp = 0, fn = 0, tn = 0;
  double f1 = 0.0;
  double accuracy = 0.0;
};

// One-vs-rest scores for the two segmentation classes of interest:
// class1 = Lmid (grey, head), class2 = L0 (black, acrosome). Averages are
// unweighted means over the two classes.
struct EvalReport {
  ClassScore class1;
  ClassScore class2;
  double average_f1 = 0.0;
  double average_accuracy = 0.0;
};

// F1 = tp/(tp + (fp+fn)/2). Empty-class convention: tp=fp=fn=0 scores 1
// (class absent from both maps); tp=0 with errors present scores 0.
EvalReport score(const Trimap& pred, const Trimap& truth);

struct WhoRatio {
  double ratio = 0.0;          // |L0| / (|L0| + |Lmid|)
  bool within_guideline = false;  // 0.40 <= ratio <= 0.70, inclusive
};

// Acrosome share of the detected head; throws std::invalid_argument when the
// trimap has no foreground pixels.
WhoRatio who_ratio(const Trimap& t);

// Average-F1 surface over an (a, c) grid with b fixed; invalid cells (those
// violating 0 < a < b < c < 1) are recorded as NaN, not errors.
struct SweepGrid {
  std::vector<double> a_values;
  std::vector<double> c_values;
  std::vector<double> f1;  // row-major |a_values| x |c_values|; NaN = absent
  double fixed_b = 0.65;

  double at(std::size_t ai, std::size_t ci) const {
    return f1[ai * c_values.size() + ci];
  }
};

// Runs the full production pipeline (solve with defaults + (a, c) override,
// quantize, mask, score) per valid cell. Disk radius 20 and largest-component
// retention, as deployed. Throws std::invalid_argument on empty value lists.
SweepGrid sweep(const ScalarField& u0, const Trimap& truth,
                const std::vector<double>& a_values, const std::vector<double>& c_values,
                double b);

// CSV with header "a,c,avg_f1", one row per valid cell (a outer, c inner).
void write_sweep_csv(const SweepGrid& grid, std::ostream& os);

}  // namespace trin
