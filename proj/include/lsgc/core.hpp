#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsgc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Violated precondition or type invariant (caller bug).
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad input data (malformed file, non-finite values, ...).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A theory check (kernel partition, bound) did not hold.
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Degrees are floored here before inverse square roots so that an
// isolated graph node keeps a zero transition row instead of dividing
// by zero.
inline constexpr double kDegreeFloor = 1e-12;

/// Dense dataset, one sample per row. Labels and regression targets are
/// optional and empty when absent.
struct DataMatrix {
  Matrix values;            // n x d
  std::vector<int> labels;  // size n or empty
  Vector targets;           // size n or empty

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }
  bool has_labels() const { return !labels.empty(); }
  bool has_targets() const { return targets.size() > 0; }
  int num_classes() const;

  /// Throws DataError on non-finite values or out-of-range labels.
  void validate() const;
};

/// Learned codebook. Bases are columns of a d x K matrix.
struct Dictionary {
  Matrix bases;  // d x K

  Index K() const { return bases.cols(); }
  Index dim() const { return bases.rows(); }

  /// Rescales every basis to unit Euclidean norm (sparse-coding convention).
  void normalize_bases();

  void validate() const;
};

enum class SignMode { nonnegative, is_signed, duplicated };

/// Affinity vector of one sample against the dictionary. Length K, or 2K in
/// duplicated mode where the second half carries the negative parts.
struct CodeVector {
  Vector coeffs;
  SignMode sign_mode = SignMode::nonnegative;
  std::vector<Index> basis_support;  // indices of nonzero coefficients

  static CodeVector make(Vector coeffs, SignMode mode);
  void validate() const;
};

/// Symmetric nonnegative basis-to-basis weights plus per-node degrees.
struct RelationMatrix {
  Matrix weights;  // size x size
  Vector degrees;  // row sums of weights

  Index size() const { return weights.rows(); }
};

/// R <- (R + R^T)/2, degrees recomputed from the symmetrized weights.
/// Throws ContractError on non-square, negative, or non-finite input.
RelationMatrix symmetrize(const Matrix& r);

/// Builds a RelationMatrix from weights that are already exactly symmetric.
RelationMatrix make_relation(Matrix weights);

/// Symmetrically degree-normalized similarity operator and its
/// precomputed (t-1)-th power.
struct TransitionMatrix {
  Matrix p_tilde;
  Matrix power;  // p_tilde^(t-1); identity when t == 1
  int t = 1;

  /// Largest absolute eigenvalue of p_tilde (it is symmetric).
  double spectral_radius() const;
};

enum class CodingMethod { sac, llc, sparse };
enum class MergeMode { signed_subtract, additive };

/// Parameters shared by the base encoders and the propagation layer.
/// sigma is absolute; callers working from the cross-validation grids scale
/// it by the dataset's mean per-feature standard deviation first.
struct EncoderConfig {
  CodingMethod method = CodingMethod::sac;
  double sigma = 1.0;
  int knn = 5;
  double llc_reg = 1e-4;
  double lambda = 0.1;
  int t = 1;
  MergeMode merge_mode = MergeMode::signed_subtract;

  void validate() const;
};

std::string to_string(CodingMethod m);
CodingMethod coding_method_from_string(const std::string& s);

namespace detail {

/// Uniform double in [0, 1) from the raw engine stream, identical on every
/// platform.
inline double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// splitmix64 finalizer; derives independent sub-seeds from a master seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic in-place Fisher-Yates.
template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(next_unit(rng) * double(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace detail

}  // namespace lsgc
