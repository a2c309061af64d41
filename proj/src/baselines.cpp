#include "trin/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace trin {
namespace {

constexpr int kBins = 256;
constexpr int kMaxLloydIters = 300;

void require_distinct(const ScalarField& u, int needed) {
  std::vector<double> v = u.values;
  std::sort(v.begin(), v.end());
  const auto end = std::unique(v.begin(), v.end());
  if (end - v.begin() < needed) {
    throw std::invalid_argument("clustering requires at least 3 distinct intensities");
  }
}

int bin_of(double v) {
  double c = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
  return static_cast<int>(std::lround(255.0 * c));
}

std::vector<long> histogram256(const ScalarField& u) {
  std::vector<long> h(kBins, 0);
  for (double v : u.values) ++h[bin_of(v)];
  return h;
}

std::vector<int> occupied_bins(const std::vector<long>& hist) {
  std::vector<int> occ;
  for (int b = 0; b < kBins; ++b) {
    if (hist[b] > 0) occ.push_back(b);
  }
  return occ;
}

int nearest_of3(double v, const std::array<double, 3>& centers) {
  int best = 0;
  double bd = std::abs(v - centers[0]);
  for (int c = 1; c < 3; ++c) {
    const double d = std::abs(v - centers[c]);
    if (d < bd) {
      bd = d;
      best = c;
    }
  }
  return best;
}

// Relabels so that cluster index follows ascending center order.
void canonicalize(ClusterAssignment& ca) {
  std::array<int, 3> order = {0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return ca.centers[x] < ca.centers[y]; });
  std::array<std::uint8_t, 3> rank{};
  std::array<double, 3> sorted{};
  for (int r = 0; r < 3; ++r) {
    rank[order[r]] = static_cast<std::uint8_t>(r);
    sorted[r] = ca.centers[order[r]];
  }
  ca.centers = sorted;
  for (auto& l : ca.labels) l = rank[l];
}

// Builds an assignment from a bin -> cluster map over occupied bins, with
// cluster centers at the count-weighted mean intensity.
ClusterAssignment from_bin_clusters(const ScalarField& u, const std::vector<long>& hist,
                                    const std::vector<int>& occ,
                                    const std::vector<int>& bin_cluster) {
  ClusterAssignment ca;
  ca.height = u.height;
  ca.width = u.width;
  std::array<double, 3> wsum = {0, 0, 0};
  std::array<double, 3> vsum = {0, 0, 0};
  std::vector<int> cluster_of_bin(kBins, -1);
  for (std::size_t k = 0; k < occ.size(); ++k) {
    const int b = occ[k];
    const int c = bin_cluster[k];
    cluster_of_bin[b] = c;
    wsum[c] += static_cast<double>(hist[b]);
    vsum[c] += static_cast<double>(hist[b]) * (b / 255.0);
  }
  for (int c = 0; c < 3; ++c) ca.centers[c] = vsum[c] / wsum[c];
  ca.labels.resize(u.values.size());
  for (std::size_t k = 0; k < u.values.size(); ++k) {
    ca.labels[k] = static_cast<std::uint8_t>(cluster_of_bin[bin_of(u.values[k])]);
  }
  canonicalize(ca);
  return ca;
}

}  // namespace

ClusterAssignment kmeans3(const ScalarField& u, std::uint64_t seed) {
  (void)seed;  // deterministic quantile init; kept for interface uniformity
  require_distinct(u, 3);

  std::vector<double> sorted = u.values;
  std::sort(sorted.begin(), sorted.end());
  const auto quantile = [&](double q) {
    const double pos = q * (sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
  };

  ClusterAssignment ca;
  ca.height = u.height;
  ca.width = u.width;
  ca.centers = {quantile(1.0 / 6.0), quantile(3.0 / 6.0), quantile(5.0 / 6.0)};
  ca.labels.assign(u.values.size(), 0);

  for (int iter = 0; iter < kMaxLloydIters; ++iter) {
    bool changed = false;
    std::array<double, 3> sum = {0, 0, 0};
    std::array<long, 3> count = {0, 0, 0};
    for (std::size_t k = 0; k < u.values.size(); ++k) {
      const int c = nearest_of3(u.values[k], ca.centers);
      if (c != ca.labels[k]) {
        ca.labels[k] = static_cast<std::uint8_t>(c);
        changed = true;
      }
      sum[c] += u.values[k];
      ++count[c];
    }
    for (int c = 0; c < 3; ++c) {
      if (count[c] > 0) ca.centers[c] = sum[c] / count[c];  // empty keeps its center
    }
    if (!changed && iter > 0) break;
  }
  canonicalize(ca);
  return ca;
}

ClusterAssignment kmedoids3(const ScalarField& u, std::uint64_t seed) {
  (void)seed;
  const std::vector<long> hist = histogram256(u);
  const std::vector<int> occ = occupied_bins(hist);
  const int n = static_cast<int>(occ.size());
  if (n < 3) {
    throw std::invalid_argument("clustering requires at least 3 distinct intensities");
  }

  const auto cost_of = [&](const std::array<int, 3>& meds) {
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
      int best = std::abs(occ[k] - occ[meds[0]]);
      for (int m = 1; m < 3; ++m) {
        best = std::min(best, std::abs(occ[k] - occ[meds[m]]));
      }
      total += static_cast<double>(hist[occ[k]]) * best;
    }
    return total;
  };

  // BUILD: greedily add the medoid that lowers total weighted L1 cost most.
  std::array<int, 3> meds = {-1, -1, -1};
  std::vector<double> dmin(n, std::numeric_limits<double>::infinity());
  for (int round = 0; round < 3; ++round) {
    int best_cand = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int cand = 0; cand < n; ++cand) {
      bool taken = false;
      for (int m = 0; m < round; ++m) taken = taken || meds[m] == cand;
      if (taken) continue;
      double cost = 0.0;
      for (int k = 0; k < n; ++k) {
        const double d = std::abs(occ[k] - occ[cand]);
        cost += static_cast<double>(hist[occ[k]]) * std::min(dmin[k], d);
      }
      if (cost < best_cost) {
        best_cost = cost;
        best_cand = cand;
      }
    }
    meds[round] = best_cand;
    for (int k = 0; k < n; ++k) {
      dmin[k] = std::min(dmin[k], static_cast<double>(std::abs(occ[k] - occ[best_cand])));
    }
  }

  // SWAP: repeat the best strict-improvement swap until none exists.
  double cur = cost_of(meds);
  for (bool improved = true; improved;) {
    improved = false;
    std::array<int, 3> best_meds = meds;
    double best = cur;
    for (int m = 0; m < 3; ++m) {
      for (int cand = 0; cand < n; ++cand) {
        if (cand == meds[0] || cand == meds[1] || cand == meds[2]) continue;
        std::array<int, 3> trial = meds;
        trial[m] = cand;
        const double c = cost_of(trial);
        if (c < best - 1e-12) {
          best = c;
          best_meds = trial;
        }
      }
    }
    if (best < cur - 1e-12) {
      meds = best_meds;
      cur = best;
      improved = true;
    }
  }

  ClusterAssignment ca;
  ca.height = u.height;
  ca.width = u.width;
  for (int m = 0; m < 3; ++m) ca.centers[m] = occ[meds[m]] / 255.0;
  ca.labels.resize(u.values.size());
  for (std::size_t k = 0; k < u.values.size(); ++k) {
    ca.labels[k] =
        static_cast<std::uint8_t>(nearest_of3(bin_of(u.values[k]) / 255.0, ca.centers));
  }
  canonicalize(ca);
  return ca;
}

ClusterAssignment agglomerative3(const ScalarField& u) {
  const std::vector<long> hist = histogram256(u);
  const std::vector<int> occ = occupied_bins(hist);
  const int n = static_cast<int>(occ.size());
  if (n < 3) {
    throw std::invalid_argument("clustering requires at least 3 distinct intensities");
  }

  // Clusters are contiguous runs of occupied bins; single-linkage distance
  // between adjacent clusters is the gap between their facing bins. Merging
  // the minimal gap (rightmost on ties) until 3 clusters remain leaves the
  // leftmost largest gaps as the two boundaries.
  std::vector<int> starts(n);
  std::iota(starts.begin(), starts.end(), 0);  // cluster c = occ[starts[c] .. starts[c+1])
  while (static_cast<int>(starts.size()) > 3) {
    int best = -1;
    int best_gap = std::numeric_limits<int>::max();
    for (std::size_t c = 0; c + 1 < starts.size(); ++c) {
      const int gap = occ[starts[c + 1]] - occ[starts[c + 1] - 1];
      if (gap <= best_gap) {  // <= keeps the rightmost tie
        best_gap = gap;
        best = static_cast<int>(c);
      }
    }
    starts.erase(starts.begin() + best + 1);
  }

  std::vector<int> bin_cluster(n);
  for (int k = 0; k < n; ++k) {
    int c = 0;
    while (c + 1 < 3 && k >= starts[c + 1]) ++c;
    bin_cluster[k] = c;
  }
  return from_bin_clusters(u, hist, occ, bin_cluster);
}

ClusterAssignment mst3(const ScalarField& u) {
  const std::vector<long> hist = histogram256(u);
  const std::vector<int> occ = occupied_bins(hist);
  const int n = static_cast<int>(occ.size());
  if (n < 3) {
    throw std::invalid_argument("clustering requires at least 3 distinct intensities");
  }

  // The MST of collinear points is the path through them in order; removing
  // the 2 heaviest edges (leftmost first on ties) splits it into 3 clusters.
  std::vector<int> edge(n - 1);
  std::iota(edge.begin(), edge.end(), 0);
  std::stable_sort(edge.begin(), edge.end(), [&](int x, int y) {
    return occ[x + 1] - occ[x] > occ[y + 1] - occ[y];
  });
  int cut1 = edge[0];
  int cut2 = edge[1];
  if (cut1 > cut2) std::swap(cut1, cut2);

  std::vector<int> bin_cluster(n);
  for (int k = 0; k < n; ++k) bin_cluster[k] = (k > cut2) ? 2 : (k > cut1 ? 1 : 0);
  return from_bin_clusters(u, hist, occ, bin_cluster);
}

Trimap assignment_to_trimap(const ClusterAssignment& ca) {
  std::array<int, 3> order = {0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return ca.centers[x] < ca.centers[y]; });
  std::array<Label, 3> map{};
  map[order[0]] = Label::L0;
  map[order[1]] = Label::Lmid;
  map[order[2]] = Label::L1;

  Trimap t(ca.height, ca.width);
  for (std::size_t k = 0; k < ca.labels.size(); ++k) t.labels[k] = map[ca.labels[k]];
  return t;
}

}  // namespace trin
