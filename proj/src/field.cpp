#include "trin/field.hpp"

namespace trin {

GridSpec grid_spec(const ScalarField& f) {
  if (f.width < 2 || f.height < 2) {
    throw std::invalid_argument("grid_spec requires at least 2x2 pixels");
  }
  GridSpec g;
  g.n = f.width;
  g.m = f.height;
  g.dx = 1.0 / (f.width - 1);
  g.dy = 1.0 / (f.height - 1);
  return g;
}

}  // namespace trin
