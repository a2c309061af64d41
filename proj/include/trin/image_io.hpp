#pragma once

#include <string>

#include "trin/field.hpp"

namespace trin {

// Decodes an 8-bit grayscale PNG or PGM (P2/P5) into a unit-interval field,
// value = raw/255 exactly. Multi-channel PNGs are reduced by the unweighted
// channel average (alpha ignored). 16-bit inputs are rejected.
ScalarField load_grayscale(const std::string& path);

// Writes an 8-bit grayscale PNG with byte = round(255 * value); values are
// clamped to [0, 1] first. Round-trips exactly with load_grayscale on data
// that came from 8-bit sources.
void save_grayscale(const ScalarField& f, const std::string& path);

// Writes the fixed {0, 128, 255} byte encoding as an 8-bit grayscale PNG.
void save_trimap(const Trimap& t, const std::string& path);

// Reads a trimap image (any loadable grayscale format whose pixel bytes are
// exactly {0, 128, 255}); anything else is an IoError.
Trimap load_trimap(const std::string& path);

}  // namespace trin
