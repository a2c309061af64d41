#include "trin/reaction.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace trin {

void validate(const ModelParams& p) {
  if (!(0.0 < p.a && p.a < p.b && p.b < p.c && p.c < 1.0)) {
    throw std::invalid_argument("roots must satisfy 0 < a < b < c < 1 strictly");
  }
  if (!(p.c_d >= 0.0)) throw std::invalid_argument("c_D must be >= 0");
  if (!(p.c_s >= 0.0)) throw std::invalid_argument("c_S must be >= 0");
  if (!(p.dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (p.max_steps < 0) throw std::invalid_argument("max_steps must be >= 0");
  if (!(p.steady_tol >= 0.0)) throw std::invalid_argument("steady_tol must be >= 0");
}

double source(double u, const ModelParams& p) {
  return -u * (u - 1.0) * (u - p.a) * (u - p.b) * (u - p.c);
}

std::vector<Equilibrium> classify_equilibria(const ModelParams& p) {
  validate(p);
  const double roots[5] = {0.0, p.a, p.b, p.c, 1.0};
  std::vector<Equilibrium> out;
  out.reserve(5);
  for (int k = 0; k < 5; ++k) {
    // All roots are simple, so f'(r_k) = -prod_{i != k} (r_k - r_i).
    double deriv = -1.0;
    for (int i = 0; i < 5; ++i) {
      if (i != k) deriv *= roots[k] - roots[i];
    }
    out.push_back({roots[k], deriv < 0.0 ? Stability::stable : Stability::unstable});
  }
  return out;
}

double max_abs_source() { return 256.0 / 3125.0; }

StabilityReport check_stability(const ModelParams& p, const GridSpec& g) {
  StabilityReport r;
  r.lhs = std::abs(p.dt * p.c_s) * (128.0 / 3125.0);
  r.rhs = p.c_d * p.dt * (1.0 / (g.dx * g.dx) + 1.0 / (g.dy * g.dy));
  r.satisfied = r.lhs <= r.rhs;
  if (r.rhs > 0.0) {
    r.ratio = r.lhs / r.rhs;
  } else {
    r.ratio = r.lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return r;
}

}  // namespace trin
