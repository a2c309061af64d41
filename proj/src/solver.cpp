#include "trin/solver.hpp"

#include <cmath>
#include <iostream>
#include <string>
#include <utility>

namespace trin {
namespace {

void require_shape(const ScalarField& u, const GridSpec& g) {
  if (u.width != g.n || u.height != g.m) {
    throw std::invalid_argument("field dimensions do not match grid spec");
  }
}

inline double clamp_unit(double v, long& activations) {
  if (v < 0.0) {
    ++activations;
    return 0.0;
  }
  if (v > 1.0) {
    ++activations;
    return 1.0;
  }
  return v;
}

}  // namespace

LaplacianMatrix::LaplacianMatrix(int size) : n(size) {
  if (size < 2) throw std::invalid_argument("LaplacianMatrix needs size >= 2");
  lower.assign(n - 1, 1.0);
  diag.assign(n, -2.0);
  upper.assign(n - 1, 1.0);
  upper[0] = 2.0;       // ghost reflection: row 0 is (-2, 2)
  lower[n - 2] = 2.0;   // row n-1 is (2, -2)
}

double LaplacianMatrix::entry(int row, int col) const {
  if (col == row) return diag[row];
  if (col == row - 1) return lower[row - 1];
  if (col == row + 1) return upper[row];
  return 0.0;
}

void LaplacianMatrix::apply(const double* x, double* y) const {
  y[0] = diag[0] * x[0] + upper[0] * x[1];
  for (int i = 1; i < n - 1; ++i) {
    y[i] = lower[i - 1] * x[i - 1] + diag[i] * x[i] + upper[i] * x[i + 1];
  }
  y[n - 1] = lower[n - 2] * x[n - 2] + diag[n - 1] * x[n - 1];
}

ScalarField step(const ScalarField& u, const ModelParams& p, const GridSpec& g,
                 StepStats* stats) {
  require_shape(u, g);
  const int h = u.height;
  const int w = u.width;
  const double ax = p.dt * p.c_d / (g.dx * g.dx);
  const double ay = p.dt * p.c_d / (g.dy * g.dy);
  const double as = p.dt * p.c_s;

  ScalarField out(h, w);
  long activations = 0;
  double max_delta = 0.0;
  for (int i = 0; i < h; ++i) {
    const int im = (i == 0) ? 1 : i - 1;
    const int ip = (i == h - 1) ? h - 2 : i + 1;
    for (int j = 0; j < w; ++j) {
      const int jm = (j == 0) ? 1 : j - 1;
      const int jp = (j == w - 1) ? w - 2 : j + 1;
      const double c = u.at(i, j);
      double v = c + ax * (u.at(i, jm) + u.at(i, jp) - 2.0 * c) +
                 ay * (u.at(im, j) + u.at(ip, j) - 2.0 * c) + as * source(c, p);
      if (p.clamp) v = clamp_unit(v, activations);
      out.at(i, j) = v;
      const double d = std::abs(v - c);
      if (d > max_delta) max_delta = d;
    }
  }
  if (stats) {
    stats->clamp_activations = activations;
    stats->max_delta = max_delta;
  }
  return out;
}

ScalarField step_matrix_form(const ScalarField& u, const ModelParams& p,
                             const GridSpec& g, StepStats* stats) {
  require_shape(u, g);
  const int h = u.height;
  const int w = u.width;
  const double ax = p.dt * p.c_d / (g.dx * g.dx);
  const double ay = p.dt * p.c_d / (g.dy * g.dy);
  const double as = p.dt * p.c_s;

  const LaplacianMatrix am(h);
  const LaplacianMatrix an(w);

  // Hadamard chain: r = u о (u-1) о (u-a) о (u-b) о (u-c).
  std::vector<double> r(u.values.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = u.values[k];
  const double shifts[4] = {1.0, p.a, p.b, p.c};
  for (double s : shifts) {
    for (std::size_t k = 0; k < r.size(); ++k) r[k] *= u.values[k] - s;
  }

  ScalarField out = u;
  // (dt c_D/dy^2) A_m u : columns.
  std::vector<double> col(h), acol(h);
  for (int j = 0; j < w; ++j) {
    for (int i = 0; i < h; ++i) col[i] = u.at(i, j);
    am.apply(col.data(), acol.data());
    for (int i = 0; i < h; ++i) out.at(i, j) += ay * acol[i];
  }
  // (dt c_D/dx^2) u A_n^T : rows (row r of u A^T is A applied to row r).
  std::vector<double> arow(w);
  for (int i = 0; i < h; ++i) {
    an.apply(&u.values[static_cast<std::size_t>(i) * w], arow.data());
    for (int j = 0; j < w; ++j) out.at(i, j) += ax * arow[j];
  }

  long activations = 0;
  double max_delta = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    double v = out.values[k] - as * r[k];
    if (p.clamp) v = clamp_unit(v, activations);
    out.values[k] = v;
    const double d = std::abs(v - u.values[k]);
    if (d > max_delta) max_delta = d;
  }
  if (stats) {
    stats->clamp_activations = activations;
    stats->max_delta = max_delta;
  }
  return out;
}

SolveOutcome solve(const ScalarField& u0, const ModelParams& p) {
  validate(p);
  const GridSpec g = grid_spec(u0);

  SolveOutcome out;
  out.stability = check_stability(p, g);
  if (!out.stability.satisfied) {
    std::cerr << "warning: explicit-scheme stability condition violated (lhs="
              << out.stability.lhs << ", rhs=" << out.stability.rhs
              << ", ratio=" << out.stability.ratio << "); continuing anyway\n";
  }

  ScalarField u = u0;
  for (long s = 0; s < p.max_steps; ++s) {
    StepStats st;
    ScalarField next = step(u, p, g, &st);
    out.clamp_activations += st.clamp_activations;
    out.max_last_delta = st.max_delta;
    ++out.steps_taken;
    for (double v : next.values) {
      if (!std::isfinite(v)) {
        throw NumericError("non-finite value encountered at step " +
                           std::to_string(out.steps_taken) + " (blow-up)");
      }
    }
    u = std::move(next);
    if (st.max_delta <= p.steady_tol) {
      out.converged = true;
      break;
    }
  }
  out.final = std::move(u);
  return out;
}

ModelParams default_params(const GridSpec& g) {
  ModelParams p;
  p.c_d = 0.01;
  p.dt = g.dx * g.dy / 4.0;
  p.c_s = 1.0 / p.dt;
  p.max_steps = 100;
  p.steady_tol = 1e-6;
  return p;
}

}  // namespace trin
