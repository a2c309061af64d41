#include "trin/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

namespace trin {
namespace {

struct File {
  std::FILE* fp = nullptr;
  explicit File(const std::string& path, const char* mode)
      : fp(std::fopen(path.c_str(), mode)) {}
  ~File() {
    if (fp) std::fclose(fp);
  }
  File(const File&) = delete;
  File& operator=(const File&) = delete;
};

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReader() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
  }
};

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriter() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
  }
};

ScalarField load_png(std::FILE* fp, const std::string& path) {
  PngReader r;
  r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!r.png) throw IoError(path + ": png_create_read_struct failed");
  r.info = png_create_info_struct(r.png);
  if (!r.info) throw IoError(path + ": png_create_info_struct failed");

  // Buffers live outside the setjmp scope so unwinding stays well-defined.
  std::vector<png_byte> data;
  std::vector<png_bytep> rows;

  if (setjmp(png_jmpbuf(r.png))) {
    throw IoError(path + ": failed to decode PNG");
  }
  png_init_io(r.png, fp);
  png_read_info(r.png, r.info);

  const png_uint_32 width = png_get_image_width(r.png, r.info);
  const png_uint_32 height = png_get_image_height(r.png, r.info);
  const int bit_depth = png_get_bit_depth(r.png, r.info);
  const int color_type = png_get_color_type(r.png, r.info);

  if (width == 0 || height == 0) throw IoError(path + ": zero-sized image");
  if (bit_depth == 16) {
    throw IoError(path + ": 16-bit images are not supported (expected 8-bit grayscale)");
  }
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
    png_set_expand_gray_1_2_4_to_8(r.png);
  }
  png_set_interlace_handling(r.png);
  png_read_update_info(r.png, r.info);

  const int channels = png_get_channels(r.png, r.info);
  const std::size_t rowbytes = png_get_rowbytes(r.png, r.info);
  data.resize(rowbytes * height);
  rows.resize(height);
  for (png_uint_32 i = 0; i < height; ++i) rows[i] = data.data() + i * rowbytes;
  png_read_image(r.png, rows.data());
  png_read_end(r.png, nullptr);

  ScalarField f(static_cast<int>(height), static_cast<int>(width));
  const int color_channels = (channels >= 3) ? 3 : 1;  // drop alpha, average color
  for (png_uint_32 i = 0; i < height; ++i) {
    const png_bytep row = rows[i];
    for (png_uint_32 j = 0; j < width; ++j) {
      const png_bytep px = row + j * channels;
      if (color_channels == 1) {
        f.at(i, j) = px[0] / 255.0;
      } else {
        f.at(i, j) = (static_cast<int>(px[0]) + px[1] + px[2]) / 3.0 / 255.0;
      }
    }
  }
  return f;
}

// Reads the next PGM header token, skipping whitespace and '#' comments.
std::string pgm_token(std::FILE* fp, const std::string& path) {
  std::string tok;
  int ch = 0;
  while ((ch = std::fgetc(fp)) != EOF) {
    if (ch == '#') {
      while ((ch = std::fgetc(fp)) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(ch));
  }
  if (tok.empty()) throw IoError(path + ": truncated PGM header");
  return tok;
}

long pgm_int(std::FILE* fp, const std::string& path) {
  const std::string tok = pgm_token(fp, path);
  for (char c : tok) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw IoError(path + ": malformed PGM number '" + tok + "'");
    }
  }
  return std::strtol(tok.c_str(), nullptr, 10);
}

ScalarField load_pgm(std::FILE* fp, const std::string& path) {
  const std::string magic = pgm_token(fp, path);
  const bool binary = (magic == "P5");
  if (!binary && magic != "P2") throw IoError(path + ": not a PGM file");

  const long width = pgm_int(fp, path);
  const long height = pgm_int(fp, path);
  const long maxval = pgm_int(fp, path);
  if (width <= 0 || height <= 0) throw IoError(path + ": zero-sized image");
  if (maxval > 255) {
    throw IoError(path + ": 16-bit images are not supported (expected 8-bit grayscale)");
  }
  if (maxval <= 0) throw IoError(path + ": invalid PGM maxval");

  ScalarField f(static_cast<int>(height), static_cast<int>(width));
  const std::size_t count = f.values.size();
  if (binary) {
    // The maxval is followed by exactly one whitespace byte, already consumed
    // by pgm_int's terminating read.
    std::vector<unsigned char> raw(count);
    if (std::fread(raw.data(), 1, count, fp) != count) {
      throw IoError(path + ": truncated PGM pixel data");
    }
    for (std::size_t k = 0; k < count; ++k) {
      if (raw[k] > maxval) throw IoError(path + ": PGM sample exceeds maxval");
      f.values[k] = raw[k] / 255.0;
    }
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      const long v = pgm_int(fp, path);
      if (v > maxval) throw IoError(path + ": PGM sample exceeds maxval");
      f.values[k] = v / 255.0;
    }
  }
  return f;
}

void save_png_bytes(const std::vector<unsigned char>& bytes, int height, int width,
                    const std::string& path) {
  File file(path, "wb");
  if (!file.fp) throw IoError(path + ": cannot open for writing");

  PngWriter w;
  w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!w.png) throw IoError(path + ": png_create_write_struct failed");
  w.info = png_create_info_struct(w.png);
  if (!w.info) throw IoError(path + ": png_create_info_struct failed");

  std::vector<png_bytep> rows(height);
  for (int i = 0; i < height; ++i) {
    rows[i] = const_cast<png_bytep>(bytes.data()) + static_cast<std::size_t>(i) * width;
  }
  if (setjmp(png_jmpbuf(w.png))) {
    throw IoError(path + ": failed to encode PNG");
  }
  png_init_io(w.png, file.fp);
  png_set_IHDR(w.png, w.info, width, height, 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(w.png, w.info);
  png_write_image(w.png, rows.data());
  png_write_end(w.png, nullptr);
}

}  // namespace

ScalarField load_grayscale(const std::string& path) {
  File file(path, "rb");
  if (!file.fp) throw IoError(path + ": cannot open file");

  unsigned char sig[8];
  const std::size_t got = std::fread(sig, 1, sizeof(sig), file.fp);
  std::rewind(file.fp);
  if (got >= 8 && png_sig_cmp(sig, 0, 8) == 0) return load_png(file.fp, path);
  if (got >= 2 && sig[0] == 'P' && (sig[1] == '2' || sig[1] == '5')) {
    return load_pgm(file.fp, path);
  }
  throw IoError(path + ": unsupported format (expected 8-bit grayscale PNG or PGM)");
}

void save_grayscale(const ScalarField& f, const std::string& path) {
  std::vector<unsigned char> bytes(f.values.size());
  for (std::size_t k = 0; k < bytes.size(); ++k) {
    double v = f.values[k];
    v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    bytes[k] = static_cast<unsigned char>(std::lround(255.0 * v));
  }
  save_png_bytes(bytes, f.height, f.width, path);
}

void save_trimap(const Trimap& t, const std::string& path) {
  std::vector<unsigned char> bytes(t.labels.size());
  for (std::size_t k = 0; k < bytes.size(); ++k) bytes[k] = label_byte(t.labels[k]);
  save_png_bytes(bytes, t.height, t.width, path);
}

Trimap load_trimap(const std::string& path) {
  const ScalarField f = load_grayscale(path);
  Trimap t(f.height, f.width);
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    const long raw = std::lround(255.0 * f.values[k]);
    if (raw == 0) {
      t.labels[k] = Label::L0;
    } else if (raw == 128) {
      t.labels[k] = Label::Lmid;
    } else if (raw == 255) {
      t.labels[k] = Label::L1;
    } else {
      throw IoError(path + ": not a trimap (pixel byte " + std::to_string(raw) +
                    " outside {0,128,255})");
    }
  }
  return t;
}

}  // namespace trin
