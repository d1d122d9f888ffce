#include "lsgc/encoders.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "lsgc/dictionary.hpp"

namespace lsgc {

Vector gaussian_affinities(const Vector& x, const Dictionary& dict, double sigma) {
  if (x.size() != dict.dim())
    throw ContractError("gaussian_affinities: dimension mismatch");
  if (sigma <= 0) throw ContractError("gaussian_affinities: sigma must be > 0");
  const double inv = 1.0 / (2.0 * sigma * sigma);
  Vector out(dict.K());
  for (Index k = 0; k < dict.K(); ++k)
    out[k] = std::exp(-(x - dict.bases.col(k)).squaredNorm() * inv);
  return out;
}

CodeVector sac_encode(const Vector& x, const Dictionary& dict, double sigma) {
  Vector aff = gaussian_affinities(x, dict, sigma);
  double z = aff.sum();
  if (z <= 0.0) {
    // Every exponent underflowed: hard assignment on the nearest basis.
    Vector hard = Vector::Zero(dict.K());
    hard[assign_nearest(x, dict)] = 1.0;
    return CodeVector::make(std::move(hard), SignMode::nonnegative);
  }
  return CodeVector::make(aff / z, SignMode::nonnegative);
}

std::vector<Index> knn_bases(const Vector& x, const Matrix& bases, int k) {
  const Index K = bases.cols();
  std::vector<std::pair<double, Index>> dist(K);
  for (Index j = 0; j < K; ++j)
    dist[j] = {(x - bases.col(j)).squaredNorm(), j};
  std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
  std::vector<Index> idx(k);
  for (int j = 0; j < k; ++j) idx[j] = dist[j].second;
  return idx;
}

CodeVector llc_encode(const Vector& x, const Dictionary& dict, int k,
                      double llc_reg) {
  if (x.size() != dict.dim()) throw ContractError("llc_encode: dimension mismatch");
  if (k < 1 || k > dict.K())
    throw ContractError("llc_encode: k out of range [1, K]");

  auto idx = knn_bases(x, dict.bases, k);

  // Local covariance of the shifted neighbors, C = Z^T Z with Z = D_x - x 1^T.
  Matrix z(dict.dim(), k);
  for (int j = 0; j < k; ++j) z.col(j) = dict.bases.col(idx[j]) - x;
  Matrix cov = z.transpose() * z;
  double ridge = llc_reg * cov.trace();
  cov.diagonal().array() += ridge;

  Vector ones = Vector::Ones(k);
  Vector w = cov.ldlt().solve(ones);
  double s = w.sum();
  bool solved = w.allFinite() &&
                (cov * w - ones).norm() <= 1e-8 * std::sqrt(double(k)) *
                                               std::max(1.0, cov.norm() * w.norm());
  if (!solved || s == 0.0 || !std::isfinite(1.0 / s))
    throw ContractError(
        "llc_encode: singular local covariance; use a nonzero llc_reg");
  w /= s;

  Vector full = Vector::Zero(dict.K());
  for (int j = 0; j < k; ++j) full[idx[j]] = w[j];
  return CodeVector::make(std::move(full), SignMode::is_signed);
}

void LassoProblem::validate() const {
  if (lambda < 0) throw ContractError("LassoProblem: lambda must be >= 0");
  if (target.size() != atoms.rows())
    throw ContractError("LassoProblem: dimension mismatch");
  if (atoms.cols() < 1) throw ContractError("LassoProblem: empty dictionary");
  if (tol <= 0) throw ContractError("LassoProblem: tol must be > 0");
}

LassoResult lasso_solve(const LassoProblem& p) {
  p.validate();
  const Index K = p.atoms.cols();
  const double thresh = 0.5 * p.lambda;

  Vector col_sq = p.atoms.colwise().squaredNorm();
  Vector c = Vector::Zero(K);
  Vector resid = p.target;  // x - D c, maintained incrementally

  LassoResult out;
  out.converged = false;
  int iter = 0;
  for (; iter < p.max_iters; ++iter) {
    double max_step = 0;
    for (Index j = 0; j < K; ++j) {
      if (col_sq[j] <= 0) continue;
      double rho = p.atoms.col(j).dot(resid) + col_sq[j] * c[j];
      double next = 0;
      if (rho > thresh)
        next = (rho - thresh) / col_sq[j];
      else if (rho < -thresh)
        next = (rho + thresh) / col_sq[j];
      double delta = next - c[j];
      if (delta != 0.0) {
        resid -= delta * p.atoms.col(j);
        c[j] = next;
        max_step = std::max(max_step, std::abs(delta));
      }
    }
    if (max_step < p.tol) {
      out.converged = true;
      ++iter;
      break;
    }
  }
  out.iters = iter;
  out.code = CodeVector::make(std::move(c), SignMode::is_signed);
  return out;
}

double lasso_objective(const Vector& x, const Matrix& atoms, const Vector& c,
                       double lambda) {
  return (x - atoms * c).squaredNorm() + lambda * c.lpNorm<1>();
}

CodeVector sparse_encode(const Vector& x, const Dictionary& dict, double lambda,
                         double tol) {
  double n = x.norm();
  if (n <= 0) throw ContractError("sparse_encode: zero sample");
  LassoProblem p;
  p.target = x / n;
  p.atoms = dict.bases;
  p.lambda = lambda;
  p.tol = tol;
  LassoResult r = lasso_solve(p);
  if (!r.converged)
    std::fprintf(stderr,
                 "warning: sparse_encode did not converge in %d iterations\n",
                 p.max_iters);
  return std::move(r.code);
}

}  // namespace lsgc
