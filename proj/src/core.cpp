#include "lsgc/core.hpp"

#include <algorithm>
#include <cmath>

namespace lsgc {

int DataMatrix::num_classes() const {
  if (labels.empty()) return 0;
  return *std::max_element(labels.begin(), labels.end()) + 1;
}

void DataMatrix::validate() const {
  if (!values.allFinite()) throw DataError("DataMatrix: non-finite value");
  if (has_labels()) {
    if (static_cast<Index>(labels.size()) != rows())
      throw DataError("DataMatrix: label count != sample count");
    for (int l : labels)
      if (l < 0) throw DataError("DataMatrix: negative label");
  }
  if (has_targets() && targets.size() != rows())
    throw DataError("DataMatrix: target count != sample count");
}

void Dictionary::normalize_bases() {
  for (Index j = 0; j < bases.cols(); ++j) {
    double n = bases.col(j).norm();
    if (n > 0) bases.col(j) /= n;
  }
}

void Dictionary::validate() const {
  if (!bases.allFinite()) throw ContractError("Dictionary: non-finite basis");
  if (K() < 2) throw ContractError("Dictionary: need at least 2 bases");
}

CodeVector CodeVector::make(Vector coeffs, SignMode mode) {
  CodeVector c;
  c.coeffs = std::move(coeffs);
  c.sign_mode = mode;
  for (Index i = 0; i < c.coeffs.size(); ++i)
    if (c.coeffs[i] != 0.0) c.basis_support.push_back(i);
  c.validate();
  return c;
}

void CodeVector::validate() const {
  if (!coeffs.allFinite()) throw ContractError("CodeVector: non-finite coefficient");
  if (sign_mode == SignMode::nonnegative || sign_mode == SignMode::duplicated) {
    if ((coeffs.array() < 0.0).any())
      throw ContractError("CodeVector: negative coefficient in nonnegative mode");
  }
  if (sign_mode == SignMode::duplicated && coeffs.size() % 2 != 0)
    throw ContractError("CodeVector: duplicated code must have even length");
}

RelationMatrix symmetrize(const Matrix& r) {
  if (r.rows() != r.cols()) throw ContractError("symmetrize: matrix not square");
  if (!r.allFinite()) throw ContractError("symmetrize: non-finite entry");
  if ((r.array() < 0.0).any()) throw ContractError("symmetrize: negative entry");
  Matrix w = 0.5 * (r + r.transpose());
  // Force exact equality across the diagonal; averaging already makes the
  // matrix symmetric up to rounding, the copy makes it bit-exact.
  for (Index i = 0; i < w.rows(); ++i)
    for (Index j = i + 1; j < w.cols(); ++j) w(j, i) = w(i, j);
  return make_relation(std::move(w));
}

RelationMatrix make_relation(Matrix weights) {
  RelationMatrix rel;
  rel.degrees = weights.rowwise().sum();
  rel.weights = std::move(weights);
  return rel;
}

double TransitionMatrix::spectral_radius() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(p_tilde, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

void EncoderConfig::validate() const {
  if (sigma <= 0) throw ContractError("EncoderConfig: sigma must be > 0");
  if (knn < 1) throw ContractError("EncoderConfig: knn must be >= 1");
  if (lambda < 0) throw ContractError("EncoderConfig: lambda must be >= 0");
  if (t < 1) throw ContractError("EncoderConfig: t must be >= 1");
}

std::string to_string(CodingMethod m) {
  switch (m) {
    case CodingMethod::sac: return "sac";
    case CodingMethod::llc: return "llc";
    case CodingMethod::sparse: return "sparse";
  }
  return "?";
}

CodingMethod coding_method_from_string(const std::string& s) {
  if (s == "sac") return CodingMethod::sac;
  if (s == "llc") return CodingMethod::llc;
  if (s == "sparse") return CodingMethod::sparse;
  throw ContractError("unknown coding method: " + s);
}

}  // namespace lsgc
