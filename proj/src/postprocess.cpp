#include "trin/postprocess.hpp"

#include <cmath>
#include <stdexcept>

namespace trin {
namespace {

void require_same_shape(int h1, int w1, int h2, int w2, const char* what) {
  if (h1 != h2 || w1 != w2) throw std::invalid_argument(what);
}

}  // namespace

DiskKernel disk_kernel(int radius) {
  if (radius < 0) throw std::invalid_argument("disk radius must be >= 0");
  DiskKernel k;
  k.radius = radius;
  const long r2 = static_cast<long>(radius) * radius;
  for (int di = -radius; di <= radius; ++di) {
    for (int dj = -radius; dj <= radius; ++dj) {
      if (static_cast<long>(di) * di + static_cast<long>(dj) * dj <= r2) {
        k.offsets.emplace_back(di, dj);
      }
    }
  }
  return k;
}

Trimap quantize(const ScalarField& u) {
  Trimap t(u.height, u.width);
  for (std::size_t k = 0; k < u.values.size(); ++k) {
    long q = std::lround(2.0 * u.values[k]);  // rounds half away from zero
    if (q < 0) q = 0;
    if (q > 2) q = 2;
    t.labels[k] = static_cast<Label>(q);
  }
  return t;
}

BinaryMask dilate(const BinaryMask& m, const DiskKernel& k) {
  BinaryMask out(m.height, m.width);
  for (int i = 0; i < m.height; ++i) {
    for (int j = 0; j < m.width; ++j) {
      for (const auto& [di, dj] : k.offsets) {
        const int ii = i + di;
        const int jj = j + dj;
        if (ii < 0 || ii >= m.height || jj < 0 || jj >= m.width) continue;
        if (m.at(ii, jj)) {
          out.at(i, j) = 1;
          break;
        }
      }
    }
  }
  return out;
}

BinaryMask erode(const BinaryMask& m, const DiskKernel& k) {
  BinaryMask out(m.height, m.width);
  for (int i = 0; i < m.height; ++i) {
    for (int j = 0; j < m.width; ++j) {
      bool all = true;
      for (const auto& [di, dj] : k.offsets) {
        const int ii = i + di;
        const int jj = j + dj;
        if (ii < 0 || ii >= m.height || jj < 0 || jj >= m.width) continue;  // foreground
        if (!m.at(ii, jj)) {
          all = false;
          break;
        }
      }
      out.at(i, j) = all ? 1 : 0;
    }
  }
  return out;
}

BinaryMask closing(const BinaryMask& m, const DiskKernel& k) {
  return erode(dilate(m, k), k);
}

BinaryMask largest_component(const BinaryMask& m) {
  const int h = m.height;
  const int w = m.width;
  std::vector<int> comp(m.bits.size(), -1);
  std::vector<std::size_t> stack;
  int best_comp = -1;
  long best_size = 0;
  int next = 0;
  for (std::size_t s = 0; s < m.bits.size(); ++s) {
    if (!m.bits[s] || comp[s] >= 0) continue;
    long size = 0;
    stack.assign(1, s);
    comp[s] = next;
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      ++size;
      const int i = static_cast<int>(cur) / w;
      const int j = static_cast<int>(cur) % w;
      const int ni[4] = {i - 1, i + 1, i, i};
      const int nj[4] = {j, j, j - 1, j + 1};
      for (int d = 0; d < 4; ++d) {
        if (ni[d] < 0 || ni[d] >= h || nj[d] < 0 || nj[d] >= w) continue;
        const std::size_t t = static_cast<std::size_t>(ni[d]) * w + nj[d];
        if (m.bits[t] && comp[t] < 0) {
          comp[t] = next;
          stack.push_back(t);
        }
      }
    }
    if (size > best_size) {  // strict: ties keep the first component found
      best_size = size;
      best_comp = next;
    }
    ++next;
  }
  if (best_comp < 0) throw std::invalid_argument("largest_component on empty mask");
  BinaryMask out(h, w);
  for (std::size_t s = 0; s < m.bits.size(); ++s) {
    out.bits[s] = (comp[s] == best_comp) ? 1 : 0;
  }
  return out;
}

BinaryMask build_mask(const Trimap& t, const DiskKernel& k, bool keep_largest_only) {
  BinaryMask fg(t.height, t.width);
  bool any = false;
  for (std::size_t s = 0; s < t.labels.size(); ++s) {
    if (t.labels[s] != Label::L1) {
      fg.bits[s] = 1;
      any = true;
    }
  }
  if (!any) {
    throw DegenerateSegmentation("segmentation has empty foreground (all background)");
  }
  BinaryMask closed = closing(fg, k);
  if (keep_largest_only) return largest_component(closed);
  return closed;
}

Trimap apply_mask(const Trimap& t, const BinaryMask& m) {
  require_same_shape(t.height, t.width, m.height, m.width,
                     "apply_mask: trimap and mask dimensions differ");
  Trimap out = t;
  for (std::size_t s = 0; s < out.labels.size(); ++s) {
    if (!m.bits[s]) out.labels[s] = Label::L1;
  }
  return out;
}

}  // namespace trin
