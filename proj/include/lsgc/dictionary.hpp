#pragma once

#include <cstdint>
#include <string>

#include "lsgc/core.hpp"

namespace lsgc {

struct KMeansParams {
  int K = 2;
  int max_iters = 100;
  double tol = 1e-6;  // relative inertia change that counts as converged
  std::uint64_t seed = 0;
  enum class Init { kmeanspp, random_sample };
  Init init = Init::kmeanspp;

  void validate() const;
};

struct KMeansResult {
  Matrix centroids;             // d x K, one centroid per column
  std::vector<int> assignments;  // size n
  double inertia = 0.0;
  int iters = 0;
  std::vector<double> inertia_history;  // assignment-step inertia per iteration
};

/// Lloyd's algorithm on row-major points. Deterministic for a fixed seed.
/// Empty clusters are re-seeded from the point farthest from its centroid.
KMeansResult kmeans(const Matrix& points, const KMeansParams& params);

/// Learns the codebook by k-means. Throws ContractError when n < K.
Dictionary learn_dictionary(const DataMatrix& data, const KMeansParams& params);

/// Index of the closest basis in Euclidean distance, ties to the lowest index.
Index assign_nearest(const Vector& x, const Dictionary& dict);

/// Text format: one header line "K d", then one basis per line (the d x K
/// matrix in column-major order).
void save_dictionary(const std::string& path, const Dictionary& dict);
Dictionary load_dictionary(const std::string& path);

}  // namespace lsgc
