#pragma once

#include <cstdint>
#include <vector>

#include "lsgc/core.hpp"

namespace lsgc {

/// The graph over {x, y, b_1..b_K} used to verify the diffusion-kernel
/// decomposition. Node 0 is x, node 1 is y, bases follow.
struct JointGraph {
  Matrix weights;  // (K+2) x (K+2), symmetric nonnegative
  Vector degrees;
  Matrix p_tilde;

  Index size() const { return weights.rows(); }
  Index num_bases() const { return size() - 2; }

  /// From an arbitrary symmetric nonnegative weight matrix (>= 2 nodes).
  static JointGraph from_weights(Matrix w);

  /// Gaussian-kernel weights between all node pairs, zero diagonal.
  static JointGraph gaussian(const Vector& x, const Vector& y,
                             const Matrix& bases, double sigma);
};

/// p_tilde^steps evaluated at (x, y). steps must be even and >= 2.
double joint_diffusion(const JointGraph& g, int steps);

/// Mass of x->y walks of the given length whose interior stays on bases.
/// Equals the inner product of the two joint-convention codes.
double kernel_term(const JointGraph& g, int steps);

/// Mass of x->y walks that revisit x (at some step >= 1) or visit y early
/// (at some step <= steps-1), by a flagged dynamic program over the walk.
double residual(const JointGraph& g, int steps);

struct LemmaReport {
  double p2t = 0;
  double kernel = 0;    // joint degree convention
  double residual = 0;
  double gap = 0;       // p2t - kernel - residual
  // Same kernel recomputed with the production per-datum normalization;
  // its gap is reported, not asserted.
  double kernel_per_datum = 0;
  double gap_per_datum = 0;
};

/// Builds the Gaussian joint graph and checks the decomposition
/// p2t == kernel + residual to 1e-10. Throws VerificationError with all
/// three terms on failure.
LemmaReport lemma_check(const Dictionary& dict, const Vector& x,
                        const Vector& y, double sigma, int t);

struct BoundInputs {
  double diameter = 0;  // of the region containing every sampled point
  double sigma = 1;
  int t = 1;
  Index K = 2;
};

/// t * exp(3 L^2 / (2 sigma^2)) / (K + 2); saturates to +inf on overflow.
double theorem_bound(const BoundInputs& b);

/// Max pairwise Euclidean distance, rows are points.
double max_pairwise_diameter(const Matrix& points);

/// Exact smallest enclosing ball diameter (Welzl).
double enclosing_ball_diameter(const Matrix& points);

struct TheoremRow {
  int K = 0;
  std::uint64_t seed = 0;
  double ratio = 0;
  double bound = 0;
  double p2t = 0;
  double residual = 0;
};

/// Residual-ratio sweep: for each K in the grid and each seed, samples
/// x, y and K bases uniformly in the unit ball, computes ratio and bound,
/// and throws VerificationError if any ratio exceeds its bound.
std::vector<TheoremRow> theorem_check(const std::vector<int>& k_grid,
                                      int seeds_per_k, double sigma, int t,
                                      std::uint64_t master_seed, int dim = 3);

}  // namespace lsgc
