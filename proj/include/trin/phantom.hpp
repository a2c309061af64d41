#pragma once

#include <cstdint>

#include "trin/field.hpp"

namespace trin {

// Synthetic sperm-cell phantom: an elliptical head whose acrosomal cap is a
// half-plane cut along the major axis, a thin tail polyline drawn at head
// intensity, and a few dark debris specks. Truth labels only the head
// (Lmid) and acrosome (L0) as foreground; the tail and debris belong to the
// background class, mirroring the tail-trimming / debris-removal intent of
// the post-processing stage.
struct PhantomSpec {
  int height = 196;
  int width = 196;

  double center_y = 98.0;
  double center_x = 98.0;
  double semi_major = 34.0;
  double semi_minor = 23.0;
  double rotation = 0.0;  // radians, major axis direction

  // Fraction of head pixels (by projection on the +major axis) labeled
  // acrosome; constrained to [0.4, 0.7] like the anatomy it models.
  double acrosome_fraction = 0.45;

  int tail_length = 90;  // pixels along the -major axis; 0 disables
  int tail_width = 1;
  double tail_wobble = 4.0;  // sine amplitude of the polyline, pixels
  double tail_phase = 0.0;

  double intensity_background = 0.95;
  double intensity_head = 0.60;
  double intensity_acrosome = 0.25;

  // Isolated dark specks (sensor dirt) dropped on the background.
  int debris_count = 0;
  double debris_lo = 0.02;
  double debris_hi = 0.15;

  double noise_sigma = 0.05;  // Gaussian, clipped to [0,1]
  std::uint64_t seed = 0;
};

struct Phantom {
  ScalarField image;
  Trimap truth;
};

// Deterministic per spec (the seed drives debris placement and noise only;
// geometry is fixed by the explicit fields). Throws std::invalid_argument
// when the head does not fit the frame or intensities are closer than 0.1.
Phantom generate(const PhantomSpec& spec);

// The stock evaluation phantom: geometry jittered from the seed (position,
// axes, rotation), four debris specks, sigma 0.05.
PhantomSpec default_phantom_spec(std::uint64_t seed, int height = 196, int width = 196);

}  // namespace trin
