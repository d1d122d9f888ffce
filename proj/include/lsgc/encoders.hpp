#pragma once

#include "lsgc/core.hpp"

namespace lsgc {

/// Gaussian soft assignment against every basis, normalized to sum 1.
/// When every exponent underflows the code falls back to a hard one-hot
/// assignment on the nearest basis.
CodeVector sac_encode(const Vector& x, const Dictionary& dict, double sigma);

/// Raw Gaussian affinities exp(-|x-b_i|^2 / (2 sigma^2)), no normalization.
Vector gaussian_affinities(const Vector& x, const Dictionary& dict, double sigma);

/// Constrained least-squares reconstruction over the k nearest bases:
/// minimizes |x - D_x c|^2 subject to sum(c) = 1, via the local covariance
/// closed form with ridge llc_reg * trace. Support is the k-nn index set.
CodeVector llc_encode(const Vector& x, const Dictionary& dict, int k,
                      double llc_reg);

/// Indices of the k nearest bases to x, ties to the lowest index, ascending
/// by distance.
std::vector<Index> knn_bases(const Vector& x, const Matrix& bases, int k);

struct LassoProblem {
  Vector target;
  Matrix atoms;  // d x K, unit-norm columns
  double lambda = 0.1;
  double tol = 1e-6;
  int max_iters = 10000;

  void validate() const;
};

struct LassoResult {
  CodeVector code;
  bool converged = true;
  int iters = 0;
};

/// Cyclic coordinate descent with soft thresholding on
///   |x - D c|^2 + lambda |c|_1
/// (the squared term carries no 1/2 factor; the thresholds use lambda/2
/// internally to match). Non-convergence returns the best iterate with
/// converged = false.
LassoResult lasso_solve(const LassoProblem& p);

/// The objective |x - D c|^2 + lambda |c|_1 the solver minimizes.
double lasso_objective(const Vector& x, const Matrix& atoms, const Vector& c,
                       double lambda);

/// lasso_solve against the dictionary, with x unit-normalized first.
CodeVector sparse_encode(const Vector& x, const Dictionary& dict, double lambda,
                         double tol = 1e-6);

}  // namespace lsgc
