#include "trin/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "trin/rng.hpp"

namespace trin {
namespace {

void validate_spec(const PhantomSpec& s) {
  if (s.height < 2 || s.width < 2) {
    throw std::invalid_argument("phantom frame must be at least 2x2");
  }
  if (!(s.semi_major > 0.0 && s.semi_minor > 0.0)) {
    throw std::invalid_argument("phantom semi-axes must be positive");
  }
  const double reach = std::max(s.semi_major, s.semi_minor);
  if (s.center_y - reach < 0.0 || s.center_y + reach > s.height - 1 ||
      s.center_x - reach < 0.0 || s.center_x + reach > s.width - 1) {
    throw std::invalid_argument("phantom head does not fit in the frame");
  }
  if (!(s.acrosome_fraction >= 0.4 && s.acrosome_fraction <= 0.7)) {
    throw std::invalid_argument("acrosome fraction must lie in [0.4, 0.7]");
  }
  const double i1 = s.intensity_background;
  const double i2 = s.intensity_head;
  const double i3 = s.intensity_acrosome;
  if (std::abs(i1 - i2) < 0.1 || std::abs(i1 - i3) < 0.1 || std::abs(i2 - i3) < 0.1) {
    throw std::invalid_argument("phantom intensities must be pairwise >= 0.1 apart");
  }
  if (s.noise_sigma < 0.0) throw std::invalid_argument("noise sigma must be >= 0");
  if (s.tail_length < 0 || s.tail_width < 1) {
    throw std::invalid_argument("invalid tail geometry");
  }
  if (s.debris_count < 0 || s.debris_lo > s.debris_hi) {
    throw std::invalid_argument("invalid debris settings");
  }
}

}  // namespace

Phantom generate(const PhantomSpec& spec) {
  validate_spec(spec);
  const int h = spec.height;
  const int w = spec.width;
  const double ct = std::cos(spec.rotation);
  const double st = std::sin(spec.rotation);

  // Head rasterization with the major-axis coordinate kept for the cut.
  ScalarField major(h, w, 0.0);
  std::vector<std::uint8_t> head(static_cast<std::size_t>(h) * w, 0);
  std::vector<double> head_proj;
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const double dx = j - spec.center_x;
      const double dy = i - spec.center_y;
      const double xr = dx * ct + dy * st;
      const double yr = -dx * st + dy * ct;
      const double e = (xr / spec.semi_major) * (xr / spec.semi_major) +
                       (yr / spec.semi_minor) * (yr / spec.semi_minor);
      if (e <= 1.0) {
        head[static_cast<std::size_t>(i) * w + j] = 1;
        major.at(i, j) = xr;
        head_proj.push_back(xr);
      }
    }
  }
  if (head_proj.size() < 8) {
    throw std::invalid_argument("phantom head rasterizes to too few pixels");
  }

  // Acrosome = the top fraction of head pixels along the +major axis.
  std::sort(head_proj.begin(), head_proj.end());
  const std::size_t n_head = head_proj.size();
  std::size_t k = static_cast<std::size_t>(
      std::lround(spec.acrosome_fraction * static_cast<double>(n_head)));
  k = std::max<std::size_t>(1, std::min(k, n_head - 1));
  const double cut = head_proj[n_head - k];  // k pixels have proj >= cut

  Phantom out;
  out.truth = Trimap(h, w, Label::L1);
  out.image = ScalarField(h, w, spec.intensity_background);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      if (!head[static_cast<std::size_t>(i) * w + j]) continue;
      const bool acro = major.at(i, j) >= cut;
      out.truth.at(i, j) = acro ? Label::L0 : Label::Lmid;
      out.image.at(i, j) = acro ? spec.intensity_acrosome : spec.intensity_head;
    }
  }

  // Tail: a wobbly polyline leaving the non-acrosome end at head intensity.
  // Truth stays background; pixels that fall outside the frame are dropped.
  if (spec.tail_length > 0) {
    const double y0 = spec.center_y - st * spec.semi_major;
    const double x0 = spec.center_x - ct * spec.semi_major;
    const int half = (spec.tail_width - 1) / 2;
    for (int s = 0; s <= spec.tail_length; ++s) {
      const double wob = spec.tail_wobble * std::sin(s / 14.0 + spec.tail_phase);
      const double py = y0 - st * s + wob * ct;
      const double px = x0 - ct * s - wob * st;
      for (int di = -half; di <= half + (spec.tail_width - 1) % 2; ++di) {
        for (int dj = -half; dj <= half + (spec.tail_width - 1) % 2; ++dj) {
          const int ti = static_cast<int>(std::lround(py)) + di;
          const int tj = static_cast<int>(std::lround(px)) + dj;
          if (ti < 0 || ti >= h || tj < 0 || tj >= w) continue;
          if (head[static_cast<std::size_t>(ti) * w + tj]) continue;
          out.image.at(ti, tj) = spec.intensity_head;
        }
      }
    }
  }

  Rng rng(spec.seed);

  // Debris specks land on plain background, clear of the head.
  for (int d = 0; d < spec.debris_count; ++d) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      const int di = 2 + static_cast<int>(rng.uniform() * (h - 4));
      const int dj = 2 + static_cast<int>(rng.uniform() * (w - 4));
      const double ddx = dj - spec.center_x;
      const double ddy = di - spec.center_y;
      const double xr = ddx * ct + ddy * st;
      const double yr = -ddx * st + ddy * ct;
      const double grown = (xr / (spec.semi_major + 12.0)) * (xr / (spec.semi_major + 12.0)) +
                           (yr / (spec.semi_minor + 12.0)) * (yr / (spec.semi_minor + 12.0));
      const bool on_paint = out.image.at(di, dj) != spec.intensity_background;
      if (grown <= 1.0 || on_paint) continue;
      out.image.at(di, dj) = rng.uniform(spec.debris_lo, spec.debris_hi);
      break;
    }
  }

  if (spec.noise_sigma > 0.0) {
    for (double& v : out.image.values) {
      v += rng.gaussian(0.0, spec.noise_sigma);
      v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    }
  }
  return out;
}

PhantomSpec default_phantom_spec(std::uint64_t seed, int height, int width) {
  // Geometry jitter comes from a dedicated stream so generate()'s own draws
  // (debris, noise) stay independent of it.
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
  PhantomSpec s;
  s.height = height;
  s.width = width;
  s.center_y = height / 2.0 + rng.uniform(-6.0, 6.0);
  s.center_x = width / 2.0 + rng.uniform(-6.0, 6.0);
  s.semi_major = 34.0 * rng.uniform(0.9, 1.1);
  s.semi_minor = 23.0 * rng.uniform(0.9, 1.1);
  s.rotation = rng.uniform(0.0, 3.14159265358979323846);
  s.acrosome_fraction = 0.45;
  s.tail_length = 90;
  s.tail_phase = rng.uniform(0.0, 6.0);
  s.debris_count = 4;
  s.noise_sigma = 0.05;
  s.seed = seed;
  return s;
}

}  // namespace trin
