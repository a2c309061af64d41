// Acceptance gate: 12 numbered criteria, one PASS/FAIL line each.
// Usage: acceptance [N] runs a single criterion; no argument runs all.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "trin/baselines.hpp"
#include "trin/evaluate.hpp"
#include "trin/image_io.hpp"
#include "trin/phantom.hpp"
#include "trin/pipeline.hpp"
#include "trin/postprocess.hpp"
#include "trin/reaction.hpp"
#include "trin/rng.hpp"
#include "trin/solver.hpp"

#include "test_util.hpp"

using namespace trin;

namespace {

ModelParams roots_only(double a, double b, double c) {
  ModelParams p;
  p.a = a;
  p.b = b;
  p.c = c;
  p.c_s = 1.0;
  p.dt = 1.0;
  return p;
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

// --- 1: source bound ---------------------------------------------------

bool crit_source_bound(std::string& msg) {
  const double bound = 256.0 / 3125.0;
  if (max_abs_source() != bound) {
    msg = "max_abs_source() != 256/3125";
    return false;
  }
  const int n = 65;  // includes all corners of [0,1]^4
  double grid_max = 0.0;
  for (int ia = 0; ia < n; ++ia) {
    const double a = ia / double(n - 1);
    for (int ib = 0; ib < n; ++ib) {
      const double b = ib / double(n - 1);
      for (int ic = 0; ic < n; ++ic) {
        const double c = ic / double(n - 1);
        for (int iu = 0; iu < n; ++iu) {
          const double u = iu / double(n - 1);
          const double f = -u * (u - 1.0) * (u - a) * (u - b) * (u - c);
          grid_max = std::max(grid_max, std::abs(f));
        }
      }
    }
  }
  if (grid_max > bound + 1e-9) {
    msg = "grid found |f| = " + fmt("%.12f", grid_max) + " above the bound";
    return false;
  }
  // The analytic maximizer a=b=c=1, u=1/5 attains the bound.
  const double attained = std::abs(-0.2 * (0.2 - 1.0) * (0.2 - 1.0) * (0.2 - 1.0) * (0.2 - 1.0));
  if (std::abs(attained - bound) > 1e-15 || grid_max < bound - 1e-3) {
    msg = "bound not attained near a=b=c=1, u=0.2";
    return false;
  }
  msg = "grid max " + fmt("%.6f", grid_max) + " <= 256/3125";
  return true;
}

// --- 2: equilibria ------------------------------------------------------

bool crit_equilibria(std::string& msg) {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    double r[3];
    do {
      r[0] = rng.uniform();
      r[1] = rng.uniform();
      r[2] = rng.uniform();
      std::sort(r, r + 3);
    } while (r[0] < 1e-6 || r[2] > 1.0 - 1e-6 || r[1] - r[0] < 1e-6 ||
             r[2] - r[1] < 1e-6);
    const ModelParams p = roots_only(r[0], r[1], r[2]);
    const auto eq = classify_equilibria(p);
    if (eq.size() != 5) {
      msg = "expected 5 equilibria";
      return false;
    }
    for (int k = 0; k < 5; ++k) {
      const bool want_stable = (k % 2 == 0);
      if ((eq[k].stability == Stability::stable) != want_stable) {
        msg = "stability pattern broken at root " + std::to_string(k);
        return false;
      }
      if (std::abs(source(eq[k].root, p)) >= 1e-12) {
        msg = "|f(root)| >= 1e-12";
        return false;
      }
    }
  }
  msg = "100 random triples, pattern (S,U,S,U,S)";
  return true;
}

// --- 3: fixed points ----------------------------------------------------

bool crit_fixed_points(std::string& msg) {
  ScalarField probe(32, 32);
  const GridSpec g = grid_spec(probe);
  const ModelParams p = default_params(g);
  double worst = 0.0;
  for (double root : {0.0, p.a, p.b, p.c, 1.0}) {
    ScalarField u(32, 32, root);
    for (int s = 0; s < 1000; ++s) u = step(u, p, g);
    for (double v : u.values) worst = std::max(worst, std::abs(v - root));
  }
  if (worst > 1e-14) {
    msg = "max drift " + fmt("%.3e", worst);
    return false;
  }
  msg = "1000 steps, max drift " + fmt("%.1e", worst);
  return true;
}

// --- 4: reaction-only basins --------------------------------------------

double rk4_settle(double u0, const ModelParams& p) {
  double u = u0;
  const double h = 0.01;
  for (long s = 0; s < 2000000; ++s) {
    const double k1 = source(u, p);
    const double k2 = source(u + 0.5 * h * k1, p);
    const double k3 = source(u + 0.5 * h * k2, p);
    const double k4 = source(u + h * k3, p);
    const double next = u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (std::abs(next - u) < 1e-16) return next;
    u = next;
  }
  return u;
}

bool crit_reaction_basins(std::string& msg) {
  ModelParams p;  // (a,b,c) = (0.5, 0.65, 0.7)
  p.c_d = 0.0;
  p.dt = 1e-3;
  p.c_s = 100.0;  // effective reaction step 0.1 in scaled time
  p.max_steps = 300000;
  p.steady_tol = 1e-13;
  for (int tenth = 1; tenth <= 9; ++tenth) {
    const double u0 = tenth / 10.0;
    const SolveOutcome out = solve(ScalarField(4, 4, u0), p);
    const double reference = rk4_settle(u0, p);
    const double diff = std::abs(out.final.at(0, 0) - reference);
    if (diff > 1e-3) {
      msg = "u0 = " + fmt("%.1f", u0) + ": solver " + fmt("%.6f", out.final.at(0, 0)) +
            " vs reference " + fmt("%.6f", reference);
      return false;
    }
  }
  msg = "u0 = 0.1..0.9 all land on the reference steady states";
  return true;
}

// --- 5: diffusion convergence -------------------------------------------

bool crit_diffusion_convergence(std::string& msg) {
  const double cd = 0.01;
  const double T = 1.0;
  const double pi = 3.14159265358979323846;
  std::vector<double> errs;
  for (int n : {33, 65, 129}) {
    ScalarField u(n, n);
    const GridSpec g = grid_spec(u);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        u.at(i, j) = std::cos(pi * j * g.dx) * std::cos(pi * i * g.dy) + 0.5;
      }
    }
    ModelParams p;
    p.c_d = cd;
    p.c_s = 0.0;
    p.clamp = false;  // the exact solution leaves [0,1]; clamping would bias it
    const long steps = std::lround(T / (g.dx * g.dx / (8.0 * cd)));
    p.dt = T / double(steps);

    auto mean = [](const ScalarField& f) {
      long double s = 0.0L;
      for (double v : f.values) s += v;
      return double(s / f.values.size());
    };
    double prev_mean = mean(u);
    for (long s = 0; s < steps; ++s) {
      u = step(u, p, g);
      const double m = mean(u);
      if (std::abs(m - prev_mean) > 1e-12) {
        msg = "mean drifted " + fmt("%.2e", std::abs(m - prev_mean)) + " in one step";
        return false;
      }
      prev_mean = m;
    }

    const double decay = std::exp(-2.0 * pi * pi * cd * T);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double exact = decay * std::cos(pi * j * g.dx) * std::cos(pi * i * g.dy) + 0.5;
        err = std::max(err, std::abs(u.at(i, j) - exact));
      }
    }
    errs.push_back(err);
  }
  const double order1 = std::log2(errs[0] / errs[1]);
  const double order2 = std::log2(errs[1] / errs[2]);
  if (order1 < 1.8 || order2 < 1.8) {
    msg = "orders " + fmt("%.2f", order1) + ", " + fmt("%.2f", order2) + " below 1.8";
    return false;
  }
  msg = "orders " + fmt("%.2f", order1) + " and " + fmt("%.2f", order2) +
        ", mean conserved";
  return true;
}

// --- 6: scheme-form equivalence -----------------------------------------

bool crit_form_equivalence(std::string& msg) {
  Rng rng(606);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    ScalarField u(32, 32);
    for (double& v : u.values) v = rng.uniform();
    const GridSpec g = grid_spec(u);
    const ModelParams p = default_params(g);
    const ScalarField a = step(u, p, g);
    const ScalarField b = step_matrix_form(u, p, g);
    for (std::size_t k = 0; k < a.values.size(); ++k) {
      worst = std::max(worst, std::abs(a.values[k] - b.values[k]));
    }
  }
  if (worst > 1e-12) {
    msg = "forms disagree by " + fmt("%.2e", worst);
    return false;
  }
  msg = "100 random 32x32 steps, max gap " + fmt("%.1e", worst);
  return true;
}

// --- 7: stability guard ---------------------------------------------------

bool crit_stability_guard(std::string& msg) {
  ScalarField probe(101, 101);
  const GridSpec g = grid_spec(probe);
  ModelParams p = default_params(g);
  const StabilityReport r = check_stability(p, g);
  if (std::abs(r.lhs - 0.04096) > 1e-12 || std::abs(r.rhs - 0.005) > 1e-12 ||
      r.satisfied) {
    msg = "expected lhs=0.04096 rhs=0.005 satisfied=false, got lhs=" +
          fmt("%.6f", r.lhs) + " rhs=" + fmt("%.6f", r.rhs);
    return false;
  }

  // The solver must still complete with bounded output despite the warning.
  Rng rng(707);
  ScalarField u0(33, 33);
  for (double& v : u0.values) v = rng.uniform();
  const ModelParams ps = default_params(grid_spec(u0));
  const SolveOutcome out = solve(u0, ps);
  for (double v : out.final.values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      msg = "solver output left [0,1]";
      return false;
    }
  }

  // The warning is observable on stderr through the CLI.
  testutil::TempDir dir;
  const std::string img = dir.file("u.png");
  save_grayscale(u0, img);
  const testutil::RunResult run = testutil::run_command(
      testutil::cli_path() + " trinarize '" + img + "' --out '" + dir.file("t.png") + "'");
  if (run.err.find("warning:") == std::string::npos) {
    msg = "no stderr warning from the CLI run";
    return false;
  }

  p.c_d = 0.1;
  if (!check_stability(p, g).satisfied) {
    msg = "c_D = 0.1 did not flip the report to satisfied";
    return false;
  }
  msg = "lhs=0.04096 rhs=0.005, warned and completed; c_D=0.1 satisfied";
  return true;
}

// --- 8: metrics oracle -----------------------------------------------------

ClassScore brute_class(const Trimap& pred, const Trimap& truth, Label cls) {
  ClassScore s;
  for (std::size_t k = 0; k < pred.labels.size(); ++k) {
    const bool p = pred.labels[k] == cls;
    const bool t = truth.labels[k] == cls;
    if (p && t) ++s.tp;
    if (p && !t) ++s.fp;
    if (!p && t) ++s.fn;
    if (!p && !t) ++s.tn;
  }
  return s;
}

bool check_report(const Trimap& pred, const Trimap& truth, std::string& msg) {
  const EvalReport r = score(pred, truth);
  const Label classes[2] = {Label::Lmid, Label::L0};
  const ClassScore* got[2] = {&r.class1, &r.class2};
  for (int c = 0; c < 2; ++c) {
    const ClassScore b = brute_class(pred, truth, classes[c]);
    if (got[c]->tp != b.tp || got[c]->fp != b.fp || got[c]->fn != b.fn ||
        got[c]->tn != b.tn) {
      msg = "confusion counts disagree with brute force";
      return false;
    }
    const long total = b.tp + b.fp + b.fn + b.tn;
    if (std::abs(got[c]->accuracy - double(b.tp + b.tn) / double(total)) > 1e-12) {
      msg = "accuracy mismatch";
      return false;
    }
    if (b.tp > 0) {
      const double prec = double(b.tp) / double(b.tp + b.fp);
      const double rec = double(b.tp) / double(b.tp + b.fn);
      if (std::abs(got[c]->f1 - 2.0 * prec * rec / (prec + rec)) > 1e-12) {
        msg = "F1 disagrees with 2PR/(P+R)";
        return false;
      }
    } else {
      const double want = (b.fp + b.fn == 0) ? 1.0 : 0.0;
      if (got[c]->f1 != want) {
        msg = "empty-class F1 convention broken";
        return false;
      }
    }
  }
  return true;
}

bool crit_metrics(std::string& msg) {
  // Exhaustive: all 3^9 predictions against a fixed 3x3 truth.
  Trimap truth(3, 3);
  const Label fixed[9] = {Label::L0, Label::Lmid, Label::L1, Label::L1, Label::Lmid,
                          Label::L0, Label::Lmid, Label::L1, Label::L0};
  for (int k = 0; k < 9; ++k) truth.labels[k] = fixed[k];
  for (int code = 0; code < 19683; ++code) {
    Trimap pred(3, 3);
    int rest = code;
    for (int k = 0; k < 9; ++k) {
      pred.labels[k] = static_cast<Label>(rest % 3);
      rest /= 3;
    }
    if (!check_report(pred, truth, msg)) return false;
  }
  // Random: 1000 pairs of 16x16.
  Rng rng(808);
  for (int trial = 0; trial < 1000; ++trial) {
    Trimap a(16, 16), b(16, 16);
    for (auto& l : a.labels) l = static_cast<Label>(int(rng.uniform() * 3.0));
    for (auto& l : b.labels) l = static_cast<Label>(int(rng.uniform() * 3.0));
    if (!check_report(a, b, msg)) return false;
  }
  msg = "exhaustive 3^9 plus 1000 random pairs match brute force";
  return true;
}

// --- 9: morphology oracle ---------------------------------------------------

BinaryMask brute_dilate(const BinaryMask& m, const DiskKernel& k) {
  BinaryMask out(m.height, m.width);
  for (int i = 0; i < m.height; ++i) {
    for (int j = 0; j < m.width; ++j) {
      int hit = 0;
      for (const auto& [di, dj] : k.offsets) {
        const int ii = i + di, jj = j + dj;
        if (ii < 0 || jj < 0 || ii >= m.height || jj >= m.width) continue;
        if (m.at(ii, jj)) {
          hit = 1;
          break;
        }
      }
      out.at(i, j) = hit;
    }
  }
  return out;
}

BinaryMask brute_erode(const BinaryMask& m, const DiskKernel& k) {
  BinaryMask out(m.height, m.width);
  for (int i = 0; i < m.height; ++i) {
    for (int j = 0; j < m.width; ++j) {
      int all = 1;
      for (const auto& [di, dj] : k.offsets) {
        const int ii = i + di, jj = j + dj;
        if (ii < 0 || jj < 0 || ii >= m.height || jj >= m.width) continue;
        if (!m.at(ii, jj)) {
          all = 0;
          break;
        }
      }
      out.at(i, j) = all;
    }
  }
  return out;
}

bool crit_morphology(std::string& msg) {
  Rng rng(909);
  const DiskKernel kernels[3] = {disk_kernel(0), disk_kernel(1), disk_kernel(2)};
  for (int trial = 0; trial < 100000; ++trial) {
    const DiskKernel& k = kernels[trial % 3];
    BinaryMask m(8, 8);
    const double density = 0.1 + 0.7 * rng.uniform();
    for (auto& b : m.bits) b = rng.uniform() < density ? 1 : 0;

    const BinaryMask closed = closing(m, k);
    const BinaryMask reference = brute_erode(brute_dilate(m, k), k);
    if (closed.bits != reference.bits) {
      msg = "closing disagrees with brute force at trial " + std::to_string(trial);
      return false;
    }
    for (std::size_t i = 0; i < m.bits.size(); ++i) {
      if (m.bits[i] && !closed.bits[i]) {
        msg = "closing not extensive at trial " + std::to_string(trial);
        return false;
      }
    }
    if (closing(closed, k).bits != closed.bits) {
      msg = "closing not idempotent at trial " + std::to_string(trial);
      return false;
    }
  }
  msg = "100000 random 8x8 cases, radius <= 2";
  return true;
}

// --- 10: end-to-end phantoms -------------------------------------------------

bool crit_phantom_pipeline(std::string& msg) {
  const Method methods[5] = {Method::pde, Method::kmeans, Method::kmedoids,
                             Method::agglomerative, Method::mst};
  double f1_class1[5] = {0, 0, 0, 0, 0};
  double f1_class2[5] = {0, 0, 0, 0, 0};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Phantom ph = generate(default_phantom_spec(seed));
    for (int m = 0; m < 5; ++m) {
      PipelineOptions opts;
      opts.method = methods[m];
      EvalReport r;
      try {
        r = score(run_pipeline(ph.image, opts).trimap, ph.truth);
      } catch (const DegenerateSegmentation&) {
        r = score(Trimap(ph.truth.height, ph.truth.width, Label::L1), ph.truth);
      }
      f1_class1[m] += r.class1.f1 / 5.0;
      f1_class2[m] += r.class2.f1 / 5.0;
    }
  }
  if (f1_class1[0] < 0.90 || f1_class2[0] < 0.90) {
    msg = "PDE per-class F1 " + fmt("%.4f", f1_class1[0]) + "/" +
          fmt("%.4f", f1_class2[0]) + " below 0.90";
    return false;
  }
  const double pde_avg = (f1_class1[0] + f1_class2[0]) / 2.0;
  for (int m = 1; m < 5; ++m) {
    const double avg = (f1_class1[m] + f1_class2[m]) / 2.0;
    if (!(pde_avg > avg)) {
      msg = "baseline " + method_name(methods[m]) + " not strictly below PDE";
      return false;
    }
  }
  msg = "PDE per-class " + fmt("%.4f", f1_class1[0]) + "/" + fmt("%.4f", f1_class2[0]) +
        ", avg " + fmt("%.4f", pde_avg) + " beats all baselines";
  return true;
}

// --- 11: sweep sanity ---------------------------------------------------------

bool crit_sweep(std::string& msg) {
  const Phantom ph = generate(default_phantom_spec(1));
  const std::vector<double> a_values = {0.40, 0.45, 0.50, 0.55, 0.60};
  const std::vector<double> c_values = {0.66, 0.68, 0.70, 0.72, 0.74};
  const SweepGrid grid = sweep(ph.image, ph.truth, a_values, c_values, 0.65);

  std::ostringstream os;
  write_sweep_csv(grid, os);
  const std::string csv = os.str();
  if (csv.rfind("a,c,avg_f1\n", 0) != 0) {
    msg = "CSV header malformed";
    return false;
  }
  long rows = std::count(csv.begin(), csv.end(), '\n') - 1;

  double best = -1.0;
  double default_cell = -1.0;
  long present = 0;
  for (std::size_t ai = 0; ai < a_values.size(); ++ai) {
    for (std::size_t ci = 0; ci < c_values.size(); ++ci) {
      const double f1 = grid.at(ai, ci);
      if (std::isnan(f1)) continue;
      ++present;
      best = std::max(best, f1);
      if (a_values[ai] == 0.50 && c_values[ci] == 0.70) default_cell = f1;
    }
  }
  if (rows != present || present == 0) {
    msg = "CSV row count disagrees with present cells";
    return false;
  }
  if (default_cell < 0.0) {
    msg = "default cell missing from the sweep";
    return false;
  }
  if (best - default_cell > 0.05) {
    msg = "argmax " + fmt("%.4f", best) + " more than 0.05 above default " +
          fmt("%.4f", default_cell);
    return false;
  }
  msg = "argmax " + fmt("%.4f", best) + " vs default cell " + fmt("%.4f", default_cell);
  return true;
}

// --- 12: CLI determinism ---------------------------------------------------------

bool crit_determinism(std::string& msg) {
  const std::string cli = testutil::cli_path();
  testutil::TempDir run1, run2;

  struct Artifact {
    std::string name;     // file produced (relative to each run dir)
    std::string command;  // with {dir} placeholders
  };

  // Each command runs once per directory; outputs must be byte-identical.
  const std::vector<std::string> commands = {
      " phantom --seed 3 --count 2 --out {dir}/ph_",
      " trinarize {dir}/ph_3_image.png --out {dir}/pde.png --truth {dir}/ph_3_truth.png",
      " trinarize {dir}/ph_3_image.png --method kmeans --seed 7 --out {dir}/km.png",
      " analyze --csv {dir}/f.csv",
      " sweep {dir}/ph_3_image.png {dir}/ph_3_truth.png --a-values 0.45,0.5"
      " --c-values 0.7 --csv {dir}/sweep.csv",
      " bench --inputs {dir}/ph_3_image.png,{dir}/ph_4_image.png"
      " --truths {dir}/ph_3_truth.png,{dir}/ph_4_truth.png --csv {dir}/bench.csv",
  };
  const std::vector<std::string> artifacts = {
      "ph_3_image.png", "ph_3_truth.png", "ph_4_image.png", "ph_4_truth.png",
      "pde.png",        "pde.json",       "km.png",         "f.csv",
      "sweep.csv",      "bench.csv",
  };

  auto expand = [](std::string s, const std::string& dir) {
    std::string out;
    std::size_t pos = 0;
    while (true) {
      const std::size_t hit = s.find("{dir}", pos);
      if (hit == std::string::npos) {
        out += s.substr(pos);
        return out;
      }
      out += s.substr(pos, hit - pos) + dir;
      pos = hit + 5;
    }
  };

  for (const auto* dir : {&run1, &run2}) {
    for (const std::string& c : commands) {
      const testutil::RunResult r = testutil::run_command(cli + expand(c, dir->path.string()));
      if (r.exit_code != 0) {
        msg = "command failed: " + expand(c, dir->path.string());
        return false;
      }
    }
  }
  for (const std::string& name : artifacts) {
    const std::string a = testutil::read_file(run1.file(name));
    const std::string b = testutil::read_file(run2.file(name));
    if (a != b || a.empty()) {
      msg = name + " differs between identical reruns";
      return false;
    }
  }
  msg = std::to_string(artifacts.size()) + " artifacts byte-identical across reruns";
  return true;
}

struct Criterion {
  int id;
  const char* title;
  bool (*fn)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "source bound", crit_source_bound},
    {2, "equilibria", crit_equilibria},
    {3, "fixed points", crit_fixed_points},
    {4, "reaction-only basins", crit_reaction_basins},
    {5, "diffusion convergence", crit_diffusion_convergence},
    {6, "scheme-form equivalence", crit_form_equivalence},
    {7, "stability guard", crit_stability_guard},
    {8, "metrics oracle", crit_metrics},
    {9, "morphology oracle", crit_morphology},
    {10, "end-to-end phantoms", crit_phantom_pipeline},
    {11, "sweep sanity", crit_sweep},
    {12, "CLI determinism", crit_determinism},
};

}  // namespace

int main(int argc, char** argv) {
  const int selected = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all_ok = true;
  bool any_run = false;
  for (const Criterion& c : kCriteria) {
    if (selected != 0 && c.id != selected) continue;
    any_run = true;
    std::string msg;
    bool ok = false;
    try {
      ok = c.fn(msg);
    } catch (const std::exception& e) {
      ok = false;
      msg = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %d (%s)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.title,
                msg.empty() ? "" : ": ", msg.c_str());
    std::fflush(stdout);
    all_ok = all_ok && ok;
  }
  if (!any_run) {
    std::fprintf(stderr, "unknown criterion selector\n");
    return 2;
  }
  return all_ok ? 0 : 1;
}
