#include "lsgc/dictionary.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace lsgc {
namespace {

using detail::next_unit;

// K distinct row indices by partial Fisher-Yates.
std::vector<Index> sample_distinct(Index n, int k, std::mt19937_64& rng) {
  std::vector<Index> idx(n);
  for (Index i = 0; i < n; ++i) idx[i] = i;
  for (int i = 0; i < k; ++i) {
    Index j = i + static_cast<Index>(next_unit(rng) * static_cast<double>(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

Matrix init_centroids(const Matrix& points, const KMeansParams& params,
                      std::mt19937_64& rng) {
  const Index n = points.rows();
  const Index d = points.cols();
  Matrix centroids(d, params.K);

  if (params.init == KMeansParams::Init::random_sample) {
    auto idx = sample_distinct(n, params.K, rng);
    for (int k = 0; k < params.K; ++k) centroids.col(k) = points.row(idx[k]);
    return centroids;
  }

  // k-means++: first centroid uniform, the rest sampled proportionally to
  // the squared distance to the nearest centroid chosen so far.
  Index first = static_cast<Index>(next_unit(rng) * static_cast<double>(n));
  centroids.col(0) = points.row(first);
  Vector d2 = (points.rowwise() - points.row(first)).rowwise().squaredNorm();
  for (int k = 1; k < params.K; ++k) {
    double total = d2.sum();
    Index pick = 0;
    if (total > 0) {
      double target = next_unit(rng) * total;
      double acc = 0;
      for (Index i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc >= target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Index>(next_unit(rng) * static_cast<double>(n));
    }
    centroids.col(k) = points.row(pick);
    Vector nd = (points.rowwise() - points.row(pick)).rowwise().squaredNorm();
    d2 = d2.cwiseMin(nd);
  }
  return centroids;
}

}  // namespace

void KMeansParams::validate() const {
  if (K < 2) throw ContractError("KMeansParams: K must be >= 2");
  if (max_iters < 1) throw ContractError("KMeansParams: max_iters must be >= 1");
  if (tol <= 0) throw ContractError("KMeansParams: tol must be > 0");
}

KMeansResult kmeans(const Matrix& points, const KMeansParams& params) {
  params.validate();
  const Index n = points.rows();
  if (n < params.K)
    throw ContractError("kmeans: fewer points than clusters (insufficient data)");

  std::mt19937_64 rng(params.seed);
  KMeansResult res;
  res.centroids = init_centroids(points, params, rng);
  res.assignments.assign(n, 0);

  Vector point_norms = points.rowwise().squaredNorm();
  double prev_inertia = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < params.max_iters; ++iter) {
    // Assignment. Distances via the expansion |x|^2 - 2 x.c + |c|^2; the
    // |x|^2 term is shared per row and dropped from the argmin.
    Vector cnorm = res.centroids.colwise().squaredNorm();
    Matrix scores = points * res.centroids;  // n x K
    std::vector<int> counts(params.K, 0);
    double inertia = 0;
    for (Index i = 0; i < n; ++i) {
      Index best = 0;
      double best_val = cnorm[0] - 2.0 * scores(i, 0);
      for (int k = 1; k < params.K; ++k) {
        double v = cnorm[k] - 2.0 * scores(i, k);
        if (v < best_val) {
          best_val = v;
          best = k;
        }
      }
      res.assignments[i] = static_cast<int>(best);
      inertia += std::max(0.0, point_norms[i] + best_val);
      ++counts[best];
    }

    // Re-seed empty clusters from the point farthest from its centroid.
    for (int k = 0; k < params.K; ++k) {
      if (counts[k] > 0) continue;
      Index far_i = -1;
      double far_d = -1;
      for (Index i = 0; i < n; ++i) {
        if (counts[res.assignments[i]] <= 1) continue;  // keep donors nonempty
        double dist =
            (points.row(i).transpose() - res.centroids.col(res.assignments[i]))
                .squaredNorm();
        if (dist > far_d) {
          far_d = dist;
          far_i = i;
        }
      }
      if (far_i < 0) continue;
      --counts[res.assignments[far_i]];
      res.assignments[far_i] = k;
      counts[k] = 1;
      res.centroids.col(k) = points.row(far_i);
    }

    // Update.
    Matrix sums = Matrix::Zero(points.cols(), params.K);
    for (Index i = 0; i < n; ++i)
      sums.col(res.assignments[i]) += points.row(i).transpose();
    for (int k = 0; k < params.K; ++k)
      if (counts[k] > 0) res.centroids.col(k) = sums.col(k) / counts[k];

    res.inertia = inertia;
    res.inertia_history.push_back(inertia);
    res.iters = iter + 1;
    if (std::isfinite(prev_inertia)) {
      double rel = std::abs(prev_inertia - inertia) /
                   std::max(prev_inertia, kDegreeFloor);
      if (rel < params.tol) break;
    }
    prev_inertia = inertia;
  }

  // Final inertia against the updated centroids.
  double final_inertia = 0;
  for (Index i = 0; i < n; ++i)
    final_inertia +=
        (points.row(i).transpose() - res.centroids.col(res.assignments[i]))
            .squaredNorm();
  res.inertia = final_inertia;
  return res;
}

Dictionary learn_dictionary(const DataMatrix& data, const KMeansParams& params) {
  data.validate();
  Dictionary dict;
  dict.bases = kmeans(data.values, params).centroids;
  return dict;
}

Index assign_nearest(const Vector& x, const Dictionary& dict) {
  if (x.size() != dict.dim())
    throw ContractError("assign_nearest: dimension mismatch");
  Index best = 0;
  double best_d = (x - dict.bases.col(0)).squaredNorm();
  for (Index k = 1; k < dict.K(); ++k) {
    double d = (x - dict.bases.col(k)).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

void save_dictionary(const std::string& path, const Dictionary& dict) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << dict.K() << " " << dict.dim() << "\n";
  char buf[32];
  for (Index k = 0; k < dict.K(); ++k) {
    for (Index i = 0; i < dict.dim(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", dict.bases(i, k));
      out << buf << (i + 1 < dict.dim() ? "," : "\n");
    }
  }
}

Dictionary load_dictionary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open: " + path);
  Index K = 0, d = 0;
  std::string header;
  if (!std::getline(in, header)) throw DataError("empty dictionary file: " + path);
  {
    std::istringstream hs(header);
    if (!(hs >> K >> d) || K < 2 || d < 1)
      throw DataError("bad dictionary header in " + path);
  }
  Dictionary dict;
  dict.bases.resize(d, K);
  std::string line;
  for (Index k = 0; k < K; ++k) {
    if (!std::getline(in, line))
      throw DataError("dictionary file truncated: " + path);
    std::istringstream ls(line);
    std::string cell;
    for (Index i = 0; i < d; ++i) {
      if (!std::getline(ls, cell, ','))
        throw DataError("short row in dictionary file: " + path);
      dict.bases(i, k) = std::stod(cell);
    }
  }
  dict.validate();
  return dict;
}

}  // namespace lsgc
