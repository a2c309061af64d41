#pragma once

#include <vector>

#include "trin/field.hpp"

namespace trin {

// Parameters of u_t = c_D (u_xx + u_yy) + c_S f(u) with the quintic source
// f(u) = -u (u-1) (u-a) (u-b) (u-c). The strict ordering 0 < a < b < c < 1
// keeps all five equilibria simple and distinct, with stable states at
// exactly {0, b, 1}.
//
// max_steps defaults to 100: the mid state is only metastable under grid
// coupling (interface pixels leak toward 0/1 a little every step), so the
// trinarization pipeline runs a fixed, modest number of steps instead of
// chasing a discrete steady state. A hundred steps flattens noise and thin
// debris at the default parameters while leaving region interiors intact.
// Raise max_steps explicitly for convergence experiments.
struct ModelParams {
  double a = 0.5;
  double b = 0.65;
  double c = 0.7;
  double c_d = 0.01;      // diffusion coefficient, >= 0
  double c_s = 0.0;       // source coefficient, >= 0
  double dt = 0.0;        // time step, > 0
  long max_steps = 100;
  double steady_tol = 1e-6;  // max-norm per-step change for termination
  bool clamp = true;         // clamp state to [0,1] after every step
};

// Throws std::invalid_argument on any violated parameter constraint.
void validate(const ModelParams& p);

// f(u) = -u(u-1)(u-a)(u-b)(u-c), evaluated in one pass. Defined for all u.
double source(double u, const ModelParams& p);

enum class Stability { stable, unstable };

struct Equilibrium {
  double root = 0.0;
  Stability stability = Stability::stable;
};

// The five equilibria {0, a, b, c, 1} in ascending order, classified by the
// sign of f' at each root: negative = stable. Always (S, U, S, U, S) for
// valid parameters.
std::vector<Equilibrium> classify_equilibria(const ModelParams& p);

// Worst-case source magnitude over u, a, b, c in [0,1]: 256/3125 = 0.08192,
// attained at a = b = c = 1, u = 1/5.
double max_abs_source();

// Explicit-scheme stability condition |dt c_S| max|f'|-bound against the
// diffusion budget: lhs = dt c_S 128/3125, rhs = c_D dt (1/dx^2 + 1/dy^2).
// An unsatisfied report is a warning for callers, never an error; the bound
// is conservative and the clamped scheme behaves at the default parameters
// even though they violate it.
struct StabilityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  double ratio = 0.0;  // lhs/rhs; 0 when both sides are 0, inf when rhs alone is 0
};

StabilityReport check_stability(const ModelParams& p, const GridSpec& g);

}  // namespace trin
