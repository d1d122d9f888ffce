#include "lsgc/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "lsgc/encoders.hpp"
#include "lsgc/lsgc.hpp"

namespace lsgc {
namespace {

using detail::next_unit;

Matrix matrix_power(const Matrix& m, int p) {
  Matrix out = Matrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < p; ++i) out = out * m;
  return out;
}

Vector sample_in_unit_ball(int dim, std::mt19937_64& rng) {
  // Rejection sampling; acceptance is fine for the small dims used here.
  while (true) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = 2.0 * next_unit(rng) - 1.0;
    if (v.squaredNorm() <= 1.0) return v;
  }
}

}  // namespace

JointGraph JointGraph::from_weights(Matrix w) {
  if (w.rows() != w.cols() || w.rows() < 2)
    throw ContractError("JointGraph: need a square matrix with >= 2 nodes");
  if ((w.array() < 0.0).any() || !w.allFinite())
    throw ContractError("JointGraph: weights must be finite and nonnegative");
  if (!w.isApprox(w.transpose(), 1e-12))
    throw ContractError("JointGraph: weights must be symmetric");

  JointGraph g;
  g.degrees = w.rowwise().sum();
  Vector inv_sqrt(w.rows());
  for (Index i = 0; i < w.rows(); ++i)
    inv_sqrt[i] = 1.0 / std::sqrt(std::max(g.degrees[i], kDegreeFloor));
  g.p_tilde = inv_sqrt.asDiagonal() * w * inv_sqrt.asDiagonal();
  g.weights = std::move(w);
  return g;
}

JointGraph JointGraph::gaussian(const Vector& x, const Vector& y,
                                const Matrix& bases, double sigma) {
  if (sigma <= 0) throw ContractError("JointGraph: sigma must be > 0");
  const Index K = bases.cols();
  Matrix pts(x.size(), K + 2);
  pts.col(0) = x;
  pts.col(1) = y;
  pts.rightCols(K) = bases;

  const double inv = 1.0 / (2.0 * sigma * sigma);
  Matrix w = Matrix::Zero(K + 2, K + 2);
  for (Index i = 0; i < K + 2; ++i)
    for (Index j = i + 1; j < K + 2; ++j) {
      double v = std::exp(-(pts.col(i) - pts.col(j)).squaredNorm() * inv);
      w(i, j) = v;
      w(j, i) = v;
    }
  return from_weights(std::move(w));
}

double joint_diffusion(const JointGraph& g, int steps) {
  if (steps < 2 || steps % 2 != 0)
    throw ContractError("joint_diffusion: steps must be even and >= 2");
  return matrix_power(g.p_tilde, steps)(0, 1);
}

double kernel_term(const JointGraph& g, int steps) {
  if (steps < 2 || steps % 2 != 0)
    throw ContractError("kernel_term: steps must be even and >= 2");
  const Index K = g.num_bases();
  Vector u = g.p_tilde.row(0).segment(2, K);  // x -> bases
  Vector v = g.p_tilde.col(1).segment(2, K);  // bases -> y
  Matrix basis_block = g.p_tilde.block(2, 2, K, K);
  return u.dot(matrix_power(basis_block, steps - 2) * v);
}

double residual(const JointGraph& g, int steps) {
  if (steps < 2 || steps % 2 != 0)
    throw ContractError("residual: steps must be even and >= 2");
  const Index n = g.size();

  // Walk mass split by whether an endpoint was already re-visited. Arriving
  // at x or y strictly before the final step moves mass to the flagged
  // state; the final arrival at y is the allowed endpoint visit.
  Vector clean = Vector::Zero(n);
  Vector flagged = Vector::Zero(n);
  clean[0] = 1.0;
  for (int s = 1; s <= steps; ++s) {
    Vector next_clean = g.p_tilde.transpose() * clean;
    Vector next_flagged = g.p_tilde.transpose() * flagged;
    if (s <= steps - 1) {
      next_flagged[0] += next_clean[0];
      next_flagged[1] += next_clean[1];
      next_clean[0] = 0.0;
      next_clean[1] = 0.0;
    }
    clean = std::move(next_clean);
    flagged = std::move(next_flagged);
  }
  return flagged[1];
}

LemmaReport lemma_check(const Dictionary& dict, const Vector& x,
                        const Vector& y, double sigma, int t) {
  if (t < 1) throw ContractError("lemma_check: t must be >= 1");
  JointGraph g = JointGraph::gaussian(x, y, dict.bases, sigma);
  const int steps = 2 * t;

  LemmaReport rep;
  rep.p2t = joint_diffusion(g, steps);
  rep.kernel = kernel_term(g, steps);
  rep.residual = residual(g, steps);
  rep.gap = rep.p2t - rep.kernel - rep.residual;
  if (std::abs(rep.gap) > 1e-10) {
    std::ostringstream msg;
    msg << "kernel decomposition violated: p2t=" << rep.p2t
        << " kernel=" << rep.kernel << " residual=" << rep.residual
        << " gap=" << rep.gap;
    throw VerificationError(msg.str());
  }

  // Production-convention kernel: codes built on the basis-only graph, each
  // datum perturbing basis degrees on its own.
  RelationMatrix rel = relation_sac(dict, sigma);
  TransitionMatrix tr = build_transition(rel, t);
  Vector cx = tr.power * normalize_datum_code(
                             gaussian_affinities(x, dict, sigma), rel);
  Vector cy = tr.power * normalize_datum_code(
                             gaussian_affinities(y, dict, sigma), rel);
  rep.kernel_per_datum = cx.dot(cy);
  rep.gap_per_datum = rep.p2t - rep.kernel_per_datum - rep.residual;
  return rep;
}

double theorem_bound(const BoundInputs& b) {
  if (b.diameter < 0) throw ContractError("theorem_bound: negative diameter");
  double expo = 1.5 * b.diameter * b.diameter / (b.sigma * b.sigma);
  if (expo > 700.0) {
    std::fprintf(stderr,
                 "warning: theorem_bound overflow (exponent %.3g), "
                 "saturating to +inf\n",
                 expo);
    return std::numeric_limits<double>::infinity();
  }
  return b.t * std::exp(expo) / static_cast<double>(b.K + 2);
}

double max_pairwise_diameter(const Matrix& points) {
  double best = 0;
  for (Index i = 0; i < points.rows(); ++i)
    for (Index j = i + 1; j < points.rows(); ++j)
      best = std::max(best, (points.row(i) - points.row(j)).norm());
  return best;
}

namespace {

struct Ball {
  Vector center;
  double r2 = -1.0;  // negative means empty

  bool contains(const Vector& p) const {
    if (r2 < 0) return false;
    double d2 = (p - center).squaredNorm();
    return d2 <= r2 * (1.0 + 1e-10) + 1e-14;
  }
};

// Smallest ball with all support points on its boundary. The center lies in
// the affine hull of the support; equidistance gives a Gram system.
Ball ball_on_boundary(const Matrix& pts, const std::vector<Index>& support) {
  Ball b;
  if (support.empty()) return b;
  Vector q0 = pts.row(support[0]);
  if (support.size() == 1) {
    b.center = q0;
    b.r2 = 0;
    return b;
  }
  const int m = static_cast<int>(support.size()) - 1;
  Matrix v(q0.size(), m);
  for (int i = 0; i < m; ++i)
    v.col(i) = pts.row(support[i + 1]).transpose() - q0;
  Matrix gram = v.transpose() * v;
  Vector rhs = 0.5 * gram.diagonal();
  Vector alpha = gram.completeOrthogonalDecomposition().solve(rhs);
  Vector offset = v * alpha;
  b.center = q0 + offset;
  b.r2 = offset.squaredNorm();
  return b;
}

Ball welzl(const Matrix& pts, Index n, std::vector<Index>& support,
           Index max_support) {
  if (n == 0 || static_cast<Index>(support.size()) == max_support)
    return ball_on_boundary(pts, support);
  Ball b = welzl(pts, n - 1, support, max_support);
  Vector p = pts.row(n - 1);
  if (b.contains(p)) return b;
  support.push_back(n - 1);
  Ball tight = welzl(pts, n - 1, support, max_support);
  support.pop_back();
  return tight;
}

}  // namespace

double enclosing_ball_diameter(const Matrix& points) {
  if (points.rows() == 0) return 0;
  std::vector<Index> support;
  Ball b = welzl(points, points.rows(), support, points.cols() + 1);
  return b.r2 <= 0 ? 0.0 : 2.0 * std::sqrt(b.r2);
}

std::vector<TheoremRow> theorem_check(const std::vector<int>& k_grid,
                                      int seeds_per_k, double sigma, int t,
                                      std::uint64_t master_seed, int dim) {
  std::vector<TheoremRow> rows;
  for (int K : k_grid) {
    for (int s = 0; s < seeds_per_k; ++s) {
      std::uint64_t seed =
          master_seed ^ (static_cast<std::uint64_t>(K) << 32) ^
          static_cast<std::uint64_t>(s);
      std::mt19937_64 rng(seed);
      Matrix pts(K + 2, dim);
      for (Index i = 0; i < pts.rows(); ++i)
        pts.row(i) = sample_in_unit_ball(dim, rng).transpose();

      Vector x = pts.row(0);
      Vector y = pts.row(1);
      Matrix bases = pts.bottomRows(K).transpose();
      JointGraph g = JointGraph::gaussian(x, y, bases, sigma);

      TheoremRow row;
      row.K = K;
      row.seed = seed;
      row.p2t = joint_diffusion(g, 2 * t);
      row.residual = residual(g, 2 * t);
      row.ratio = row.p2t > 0 ? row.residual / row.p2t : 0.0;

      BoundInputs bi;
      bi.diameter =
          std::max(max_pairwise_diameter(pts), enclosing_ball_diameter(pts));
      bi.sigma = sigma;
      bi.t = t;
      bi.K = K;
      row.bound = theorem_bound(bi);

      if (row.ratio > row.bound) {
        std::ostringstream msg;
        msg << "residual ratio bound violated at K=" << K << " seed=" << seed
            << ": ratio=" << row.ratio << " bound=" << row.bound
            << " p2t=" << row.p2t << " residual=" << row.residual
            << "\nweights:\n";
        msg << g.weights;
        throw VerificationError(msg.str());
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace lsgc
