#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "trin/field.hpp"

namespace trin {

// A 3-way intensity clustering of a field. After construction by any of the
// clusterers below, centers are strictly ascending and labels index into
// them (0 = darkest cluster).
struct ClusterAssignment {
  int height = 0;
  int width = 0;
  std::array<double, 3> centers = {0.0, 0.0, 0.0};
  std::vector<std::uint8_t> labels;
};

// Lloyd's k-means on raw 1-D intensities, k = 3, deterministic init at the
// 1/6, 3/6, 5/6 intensity quantiles; stops when assignments stop changing or
// after 300 iterations. The seed is accepted for interface uniformity but
// unused (initialization is deterministic). Requires >= 3 distinct values.
ClusterAssignment kmeans3(const ScalarField& u, std::uint64_t seed);

// PAM (build + best-improvement swap) on the 256-bin intensity histogram;
// medoids are observed 8-bit levels. Requires >= 3 occupied bins.
ClusterAssignment kmedoids3(const ScalarField& u, std::uint64_t seed);

// Single-linkage agglomerative merging of occupied histogram bins until 3
// clusters remain. Adjacent pairs tied on gap merge rightmost-first so the
// surviving boundaries are the leftmost largest gaps.
ClusterAssignment agglomerative3(const ScalarField& u);

// Minimum spanning tree over occupied histogram bins (a path graph in 1-D);
// deleting the 2 heaviest edges (leftmost on ties) yields the 3 clusters.
ClusterAssignment mst3(const ScalarField& u);

// Maps clusters sorted by center intensity to labels: darkest -> L0,
// middle -> Lmid, brightest -> L1. Accepts unsorted centers.
Trimap assignment_to_trimap(const ClusterAssignment& ca);

}  // namespace trin
