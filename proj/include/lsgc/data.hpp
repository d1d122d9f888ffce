#pragma once

#include <cstdint>
#include <string>

#include "lsgc/core.hpp"

namespace lsgc {

/// Archimedean spiral r = inner_radius + growth * theta, sampled uniformly
/// in arc length, with the regression target defined on the normalized arc
/// length s in [0, 1].
struct SpiralSpec {
  int n_points = 10000;
  double turns = 3.0;
  double inner_radius = 0.25;
  double growth = 1.0;
  double noise_std = 0.0;
  std::uint64_t seed = 0;
  enum class Target { sine_arc, linear_arc };
  Target target = Target::sine_arc;  // sin(4 pi s) or s itself

  void validate() const;
};

DataMatrix gen_spiral(const SpiralSpec& spec);

/// Two copies of the spiral, the second rotated by pi, labeled 0/1.
/// The classic interleaved two-class manifold.
DataMatrix gen_two_spirals(int n_per_class, double noise_std,
                           std::uint64_t seed, double turns = 2.0);

enum class CsvSchema { features_only, label_last, target_last };

/// Comma-separated numeric rows; parse errors carry the line number.
DataMatrix load_csv(const std::string& path, CsvSchema schema);
void save_csv(const std::string& path, const DataMatrix& data,
              CsvSchema schema);

/// Sparse "label idx:val" lines, 1-based indices, densified to the max
/// index. Distinct labels are remapped to 0..C-1 in sorted order.
DataMatrix load_libsvm(const std::string& path);

/// Plain matrix CSV without header (used for code matrices).
Matrix load_matrix_csv(const std::string& path);
void save_matrix_csv(const std::string& path, const Matrix& m);

/// Returns a copy with every row scaled to unit Euclidean norm.
/// Throws DataError on a zero row.
DataMatrix unit_normalize(const DataMatrix& data);

/// Mean of the per-feature standard deviations; the scale that the relative
/// bandwidth grids multiply.
double sigma_bar(const Matrix& values);

struct TrainTestSplit {
  DataMatrix train;
  DataMatrix test;
  std::vector<Index> train_idx;
  std::vector<Index> test_idx;
};

/// Stratified split taking n_labeled_per_class samples of every class for
/// training; the remainder is test. Deterministic per seed.
TrainTestSplit split(const DataMatrix& data, int n_labeled_per_class,
                     std::uint64_t seed);

}  // namespace lsgc
