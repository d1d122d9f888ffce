#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lsgc/core.hpp"
#include "lsgc/dictionary.hpp"

namespace lsgc {

// ---------------------------------------------------------------------------
// Regression

/// Closed-form minimizer of |y - C w|^2 + reg |w|^2. reg must be > 0.
Vector ridge_fit(const Matrix& codes, const Vector& targets, double reg);
Vector ridge_predict(const Vector& weights, const Matrix& codes);
double rmse(const Vector& predicted, const Vector& truth);

// ---------------------------------------------------------------------------
// One-vs-all linear classification

struct OvaParams {
  double reg = 1e-3;   // L2 weight of the hinge objective
  int epochs = 60;
  std::uint64_t seed = 0;
};

struct OvaModel {
  Matrix weights;  // num_classes x dim
  Vector bias;     // num_classes
};

/// Per-class binary hinge-loss classifiers trained by deterministic SGD with
/// the 1/(reg * step) schedule; prediction is argmax score, ties to the
/// lowest class index.
OvaModel linear_ova_train(const Matrix& codes, const std::vector<int>& labels,
                          const OvaParams& params);
std::vector<int> linear_ova_predict(const OvaModel& model, const Matrix& codes);
double error_rate(const std::vector<int>& predicted,
                  const std::vector<int>& truth);

/// Regularized binary hinge objective for one class, used by the solver
/// quality tests: reg/2 |w|^2 + mean(max(0, 1 - y (w.x + b))).
double hinge_objective(const Vector& w, double bias, const Matrix& codes,
                       const std::vector<int>& labels, int positive_class,
                       double reg);

// ---------------------------------------------------------------------------
// Clustering and its metrics

struct ClusteringResult {
  std::vector<int> assignments;
  int k = 0;
  double inertia = 0;
};

/// Best-inertia k-means over the given number of restarts; restart seeds are
/// derived deterministically from the master seed.
ClusteringResult kmeans_cluster(const Matrix& codes, int k, int restarts,
                                std::uint64_t seed);

/// Mutual information between the two labelings, normalized by the larger
/// entropy (log base 2). Both-single-cluster is defined as 1.
double nmi(const std::vector<int>& truth, const std::vector<int>& computed);

/// Count matrix: entry (i, j) = #samples with truth label i and computed
/// label j.
Matrix contingency(const std::vector<int>& truth,
                   const std::vector<int>& computed);

/// Permutation maximizing the total matched count of a square count matrix;
/// result[j] is the truth index assigned to computed cluster j.
std::vector<int> hungarian_match(const Matrix& confusion);

/// Fraction of samples whose truth label equals the optimal relabeling of
/// their computed cluster.
double accuracy_ac(const std::vector<int>& truth,
                   const std::vector<int>& computed);

// ---------------------------------------------------------------------------
// PCA

struct PcaResult {
  Matrix reduced;     // n x m
  Matrix projection;  // d x m, orthonormal columns
  Vector mean;        // d
};

/// Projects onto the smallest leading eigenspace holding at least the given
/// fraction of the centered data's energy.
PcaResult pca_reduce(const Matrix& data, double energy);
Matrix pca_apply(const PcaResult& pca, const Matrix& data);

// ---------------------------------------------------------------------------
// Cross-validation

struct CvResult {
  EncoderConfig best;
  Index best_index = 0;
  double best_error = 0;
  std::vector<double> mean_errors;  // one per grid entry
};

/// Mean validation error of `error_fn(config, train_idx, val_idx)` over
/// deterministic folds (stratified when labels allow it, with a warning and
/// an unstratified fallback otherwise). Ties break toward the smallest t,
/// then the earliest grid entry. For unlabeled tasks pass all-zero labels of
/// the right length; a single class degenerates to plain shuffled folds.
CvResult cross_validate(
    const std::vector<EncoderConfig>& grid, const std::vector<int>& labels,
    int folds, std::uint64_t seed,
    const std::function<double(const EncoderConfig&, const std::vector<int>&,
                               const std::vector<int>&)>& error_fn);

/// Fold assignment used by cross_validate, exposed for tests: fold id per
/// sample.
std::vector<int> make_folds(const std::vector<int>& labels, int folds,
                            std::uint64_t seed);

}  // namespace lsgc
