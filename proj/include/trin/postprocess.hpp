#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "trin/field.hpp"

namespace trin {

// Disk structuring element: all integer offsets (di, dj) with
// di^2 + dj^2 <= radius^2. Contains (0,0) and is symmetric under negation.
struct DiskKernel {
  int radius = 0;
  std::vector<std::pair<int, int>> offsets;
};

DiskKernel disk_kernel(int radius);

struct BinaryMask {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> bits;

  BinaryMask() = default;
  BinaryMask(int h, int w, bool fill = false)
      : height(h), width(w), bits(detail::checked_area(h, w), fill ? 1 : 0) {}

  std::uint8_t& at(int i, int j) {
    return bits[static_cast<std::size_t>(i) * width + j];
  }
  std::uint8_t at(int i, int j) const {
    return bits[static_cast<std::size_t>(i) * width + j];
  }
};

// Forces every pixel to the nearest half-integer: round(2u)/2 in {0, 0.5, 1},
// ties (0.25, 0.75) rounding half away from zero. Input values in [0, 1].
Trimap quantize(const ScalarField& u);

// Morphology with the usual boundary conventions: out-of-bounds counts as
// background for dilation and as foreground for erosion.
BinaryMask dilate(const BinaryMask& m, const DiskKernel& k);
BinaryMask erode(const BinaryMask& m, const DiskKernel& k);
BinaryMask closing(const BinaryMask& m, const DiskKernel& k);

// Largest 4-connected foreground component (ties keep the component found
// first in row-major scan order). Input must have at least one set bit.
BinaryMask largest_component(const BinaryMask& m);

// Algorithm mask: foreground = non-background labels (!= L1), closed with k,
// then reduced to the largest 4-connected component (trims tails and edge
// debris) unless keep_largest_only is false. Throws DegenerateSegmentation
// when the trimap has no foreground at all.
BinaryMask build_mask(const Trimap& t, const DiskKernel& k, bool keep_largest_only = true);

// Pixels outside the mask become background (L1); inside pixels pass through.
Trimap apply_mask(const Trimap& t, const BinaryMask& m);

}  // namespace trin
