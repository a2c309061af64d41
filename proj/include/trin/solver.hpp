#pragma once

#include <vector>

#include "trin/field.hpp"
#include "trin/reaction.hpp"

namespace trin {

// Tridiagonal zero-flux 1-D Laplacian stencil matrix (without the 1/h^2
// factor): main diagonal -2, off-diagonals 1, except the first row (-2, 2)
// and last row (2, -2) where the reflected ghost node doubles the inner
// neighbor. Every row sums to zero.
struct LaplacianMatrix {
  int n = 0;
  std::vector<double> lower;  // entry(i, i-1), i in [1, n)
  std::vector<double> diag;   // entry(i, i)
  std::vector<double> upper;  // entry(i, i+1), i in [0, n-1)

  explicit LaplacianMatrix(int size);
  double entry(int row, int col) const;
  // y = A x for vectors of length n.
  void apply(const double* x, double* y) const;
};

struct StepStats {
  long clamp_activations = 0;
  double max_delta = 0.0;
};

// One explicit step of the scheme
//   u' = u + (dt c_D/dx^2)(left + right - 2u) + (dt c_D/dy^2)(up + down - 2u)
//        + dt c_S f(u)
// with ghost-node reflection at all four boundaries (u_{-1,j} = u_{1,j} and
// so on), then optional clamping to [0, 1] with activation counting.
ScalarField step(const ScalarField& u, const ModelParams& p, const GridSpec& g,
                 StepStats* stats = nullptr);

// The same update assembled in matrix form,
//   u + (dt c_D/dy^2) A_m u + (dt c_D/dx^2) u A_n^T - dt c_S u о (u-1) о ...
// with о the elementwise (Hadamard) product. Agrees with step() up to
// floating-point associativity (<= 1e-12 elementwise).
ScalarField step_matrix_form(const ScalarField& u, const ModelParams& p,
                             const GridSpec& g, StepStats* stats = nullptr);

struct SolveOutcome {
  ScalarField final;
  long steps_taken = 0;
  bool converged = false;       // max_last_delta <= steady_tol reached
  double max_last_delta = 0.0;  // max-norm change of the last step
  long clamp_activations = 0;   // total across all steps
  StabilityReport stability;
};

// Iterates step() from u0 until the max-norm per-step change drops to
// p.steady_tol or max_steps is reached. The grid spec is derived from u0.
// Prints a one-line warning to stderr when the stability condition is
// unsatisfied (never an error). Throws NumericError if the state turns
// non-finite (blow-up), reporting the step index.
SolveOutcome solve(const ScalarField& u0, const ModelParams& p);

// The fixed defaults: a=0.5, b=0.65, c=0.7, c_D=0.01, dt=dx*dy/4, c_S=1/dt,
// and the pipeline termination controls (max_steps=100, steady_tol=1e-6).
ModelParams default_params(const GridSpec& g);

}  // namespace trin
