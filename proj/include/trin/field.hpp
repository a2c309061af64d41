#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace trin {

// Thrown on unreadable/unwritable files and unsupported image formats.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a segmentation has no foreground left to work with.
struct DegenerateSegmentation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when the solver encounters a non-finite value (blow-up).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
inline std::size_t checked_area(int height, int width) {
  if (height <= 0 || width <= 0) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  return static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
}
}  // namespace detail

// Row-major scalar grid over the image plane. Index (i, j) is (row along y,
// column along x). Values are nominally in [0, 1]; the same type carries
// decoded 8-bit images (value = raw/255) and evolving solver state.
struct ScalarField {
  int height = 0;
  int width = 0;
  std::vector<double> values;

  ScalarField() = default;
  ScalarField(int h, int w, double fill = 0.0)
      : height(h), width(w), values(detail::checked_area(h, w), fill) {}

  double& at(int i, int j) {
    return values[static_cast<std::size_t>(i) * width + j];
  }
  double at(int i, int j) const {
    return values[static_cast<std::size_t>(i) * width + j];
  }
  bool same_shape(const ScalarField& o) const {
    return height == o.height && width == o.width;
  }
};

// Dimensionless unit-square normalization of a grid: n columns span x in
// [0, 1] with dx = 1/(n-1), m rows span y with dy = 1/(m-1).
struct GridSpec {
  int n = 0;  // columns
  int m = 0;  // rows
  double dx = 0.0;
  double dy = 0.0;
};

// Throws std::invalid_argument when either dimension is < 2.
GridSpec grid_spec(const ScalarField& f);

// Three-way pixel classes with fixed intensity encoding {0, 0.5, 1} and
// byte encoding {0, 128, 255}.
enum class Label : std::uint8_t { L0 = 0, Lmid = 1, L1 = 2 };

constexpr double label_intensity(Label l) {
  return l == Label::L0 ? 0.0 : (l == Label::Lmid ? 0.5 : 1.0);
}

constexpr std::uint8_t label_byte(Label l) {
  return l == Label::L0 ? std::uint8_t{0}
                        : (l == Label::Lmid ? std::uint8_t{128} : std::uint8_t{255});
}

struct Trimap {
  int height = 0;
  int width = 0;
  std::vector<Label> labels;

  Trimap() = default;
  Trimap(int h, int w, Label fill = Label::L1)
      : height(h), width(w), labels(detail::checked_area(h, w), fill) {}

  Label& at(int i, int j) {
    return labels[static_cast<std::size_t>(i) * width + j];
  }
  Label at(int i, int j) const {
    return labels[static_cast<std::size_t>(i) * width + j];
  }
  bool same_shape(const Trimap& o) const {
    return height == o.height && width == o.width;
  }
};

}  // namespace trin
