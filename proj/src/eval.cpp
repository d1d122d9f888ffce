#include "lsgc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>

namespace lsgc {

Vector ridge_fit(const Matrix& codes, const Vector& targets, double reg) {
  if (reg <= 0) throw ContractError("ridge_fit: reg must be > 0");
  if (codes.rows() != targets.size())
    throw ContractError("ridge_fit: row/target count mismatch");
  Matrix gram = codes.transpose() * codes;
  gram.diagonal().array() += reg;
  return gram.ldlt().solve(codes.transpose() * targets);
}

Vector ridge_predict(const Vector& weights, const Matrix& codes) {
  if (codes.cols() != weights.size())
    throw ContractError("ridge_predict: dimension mismatch");
  return codes * weights;
}

double rmse(const Vector& predicted, const Vector& truth) {
  if (predicted.size() != truth.size())
    throw ContractError("rmse: length mismatch");
  return std::sqrt((predicted - truth).squaredNorm() /
                   static_cast<double>(truth.size()));
}

OvaModel linear_ova_train(const Matrix& codes, const std::vector<int>& labels,
                          const OvaParams& params) {
  if (static_cast<Index>(labels.size()) != codes.rows())
    throw ContractError("linear_ova_train: label/row count mismatch");
  int num_classes = *std::max_element(labels.begin(), labels.end()) + 1;
  if (std::set<int>(labels.begin(), labels.end()).size() < 2)
    throw ContractError("linear_ova_train: need at least two classes");

  const Index n = codes.rows();
  const Index dim = codes.cols();
  OvaModel model;
  model.weights = Matrix::Zero(num_classes, dim);
  model.bias = Vector::Zero(num_classes);

  std::vector<Index> order(n);
  for (Index c = 0; c < num_classes; ++c) {
    std::mt19937_64 rng(detail::mix_seed(params.seed, c));
    Vector w = Vector::Zero(dim);
    double b = 0;
    std::uint64_t step = 0;
    std::iota(order.begin(), order.end(), Index{0});
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
      detail::shuffle(order, rng);
      for (Index i : order) {
        ++step;
        double eta = 1.0 / (params.reg * static_cast<double>(step));
        double y = labels[i] == c ? 1.0 : -1.0;
        double margin = y * (codes.row(i).dot(w) + b);
        w *= (1.0 - eta * params.reg);
        if (margin < 1.0) {
          w += eta * y * codes.row(i).transpose();
          b += eta * y;  // bias kept out of the regularizer
        }
      }
    }
    model.weights.row(c) = w;
    model.bias[c] = b;
  }
  return model;
}

std::vector<int> linear_ova_predict(const OvaModel& model, const Matrix& codes) {
  Matrix scores = codes * model.weights.transpose();
  scores.rowwise() += model.bias.transpose();
  std::vector<int> out(codes.rows());
  for (Index i = 0; i < codes.rows(); ++i) {
    Index best = 0;
    scores.row(i).maxCoeff(&best);  // first max wins: lowest class index
    out[i] = static_cast<int>(best);
  }
  return out;
}

double error_rate(const std::vector<int>& predicted,
                  const std::vector<int>& truth) {
  if (predicted.size() != truth.size())
    throw ContractError("error_rate: length mismatch");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (predicted[i] != truth[i]) ++wrong;
  return static_cast<double>(wrong) / static_cast<double>(truth.size());
}

double hinge_objective(const Vector& w, double bias, const Matrix& codes,
                       const std::vector<int>& labels, int positive_class,
                       double reg) {
  double loss = 0;
  for (Index i = 0; i < codes.rows(); ++i) {
    double y = labels[i] == positive_class ? 1.0 : -1.0;
    loss += std::max(0.0, 1.0 - y * (codes.row(i).dot(w) + bias));
  }
  return 0.5 * reg * w.squaredNorm() + loss / static_cast<double>(codes.rows());
}

ClusteringResult kmeans_cluster(const Matrix& codes, int k, int restarts,
                                std::uint64_t seed) {
  if (restarts < 1) throw ContractError("kmeans_cluster: restarts must be >= 1");
  ClusteringResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    KMeansParams params;
    params.K = k;
    params.seed = detail::mix_seed(seed, r);
    params.init = KMeansParams::Init::kmeanspp;
    KMeansResult res = kmeans(codes, params);
    if (res.inertia < best.inertia) {
      best.inertia = res.inertia;
      best.assignments = std::move(res.assignments);
      best.k = k;
    }
  }
  return best;
}

Matrix contingency(const std::vector<int>& truth,
                   const std::vector<int>& computed) {
  if (truth.size() != computed.size())
    throw ContractError("contingency: length mismatch");
  int rows = *std::max_element(truth.begin(), truth.end()) + 1;
  int cols = *std::max_element(computed.begin(), computed.end()) + 1;
  Matrix c = Matrix::Zero(rows, cols);
  for (std::size_t i = 0; i < truth.size(); ++i)
    c(truth[i], computed[i]) += 1.0;
  return c;
}

double nmi(const std::vector<int>& truth, const std::vector<int>& computed) {
  Matrix joint = contingency(truth, computed);
  const double n = joint.sum();
  Vector pr = joint.rowwise().sum() / n;
  Vector pc = joint.colwise().sum().transpose() / n;

  double mi = 0;
  for (Index i = 0; i < joint.rows(); ++i)
    for (Index j = 0; j < joint.cols(); ++j) {
      double p = joint(i, j) / n;
      if (p > 0) mi += p * std::log2(p / (pr[i] * pc[j]));
    }

  auto entropy = [](const Vector& p) {
    double h = 0;
    for (Index i = 0; i < p.size(); ++i)
      if (p[i] > 0) h -= p[i] * std::log2(p[i]);
    return h;
  };
  double hmax = std::max(entropy(pr), entropy(pc));
  if (hmax == 0) return 1.0;  // both sides a single cluster
  return std::clamp(mi / hmax, 0.0, 1.0);
}

std::vector<int> hungarian_match(const Matrix& confusion) {
  if (confusion.rows() != confusion.cols())
    throw ContractError("hungarian_match: matrix must be square");
  const int n = static_cast<int>(confusion.rows());

  // Shortest augmenting path assignment on negated counts (maximization).
  Matrix cost = -confusion;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> map(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) map[j - 1] = p[j] - 1;  // computed column j -> truth row
  return map;
}

double accuracy_ac(const std::vector<int>& truth,
                   const std::vector<int>& computed) {
  Matrix c = contingency(truth, computed);
  int k = static_cast<int>(std::max(c.rows(), c.cols()));
  Matrix square = Matrix::Zero(k, k);
  square.topLeftCorner(c.rows(), c.cols()) = c;
  std::vector<int> map = hungarian_match(square);

  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (truth[i] == map[computed[i]]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

PcaResult pca_reduce(const Matrix& data, double energy) {
  if (energy <= 0 || energy > 1)
    throw ContractError("pca_reduce: energy must be in (0, 1]");
  PcaResult out;
  out.mean = data.colwise().mean();
  Matrix centered = data.rowwise() - out.mean.transpose();

  Eigen::BDCSVD<Matrix> svd(centered, Eigen::ComputeThinV);
  Vector sv2 = svd.singularValues().array().square();
  double total = sv2.sum();

  Index m = 1;
  if (total > 0) {
    double acc = 0;
    for (m = 0; m < sv2.size(); ++m) {
      acc += sv2[m];
      if (acc >= energy * total * (1.0 - 1e-12)) {
        ++m;
        break;
      }
    }
    m = std::max<Index>(m, 1);
  }
  out.projection = svd.matrixV().leftCols(m);
  out.reduced = centered * out.projection;
  return out;
}

Matrix pca_apply(const PcaResult& pca, const Matrix& data) {
  return (data.rowwise() - pca.mean.transpose()) * pca.projection;
}

std::vector<int> make_folds(const std::vector<int>& labels, int folds,
                            std::uint64_t seed) {
  if (folds < 2) throw ContractError("make_folds: need at least 2 folds");
  const std::size_t n = labels.size();
  std::vector<int> fold(n, 0);
  std::mt19937_64 rng(detail::mix_seed(seed, 0x666f6c64));

  bool stratify = true;
  if (!labels.empty()) {
    int num_classes = *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<int> counts(num_classes, 0);
    for (int l : labels) ++counts[l];
    for (int c : counts)
      if (c > 0 && c < folds) stratify = false;
    if (!stratify)
      std::fprintf(stderr,
                   "warning: a class has fewer samples than folds; "
                   "falling back to unstratified folds\n");

    if (stratify) {
      std::vector<std::vector<std::size_t>> by_class(num_classes);
      for (std::size_t i = 0; i < n; ++i) by_class[labels[i]].push_back(i);
      for (auto& members : by_class) {
        detail::shuffle(members, rng);
        for (std::size_t j = 0; j < members.size(); ++j)
          fold[members[j]] = static_cast<int>(j % folds);
      }
      return fold;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  detail::shuffle(order, rng);
  for (std::size_t j = 0; j < n; ++j)
    fold[order[j]] = static_cast<int>(j % folds);
  return fold;
}

CvResult cross_validate(
    const std::vector<EncoderConfig>& grid, const std::vector<int>& labels,
    int folds, std::uint64_t seed,
    const std::function<double(const EncoderConfig&, const std::vector<int>&,
                               const std::vector<int>&)>& error_fn) {
  if (grid.empty()) throw ContractError("cross_validate: empty grid");
  std::vector<int> fold = make_folds(labels, folds, seed);

  CvResult out;
  out.best_error = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double total = 0;
    for (int f = 0; f < folds; ++f) {
      std::vector<int> train_idx, val_idx;
      for (std::size_t i = 0; i < fold.size(); ++i)
        (fold[i] == f ? val_idx : train_idx).push_back(static_cast<int>(i));
      total += error_fn(grid[g], train_idx, val_idx);
    }
    double mean = total / folds;
    out.mean_errors.push_back(mean);
    bool better = mean < out.best_error ||
                  (mean == out.best_error && grid[g].t < out.best.t);
    if (better) {
      out.best_error = mean;
      out.best = grid[g];
      out.best_index = static_cast<Index>(g);
    }
  }
  return out;
}

}  // namespace lsgc
