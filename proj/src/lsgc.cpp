#include "lsgc/lsgc.hpp"

#include <cmath>

namespace lsgc {

RelationMatrix relation_sac(const Dictionary& dict, double sigma,
                            bool self_loops) {
  dict.validate();
  if (sigma <= 0) throw ContractError("relation_sac: sigma must be > 0");
  const Index K = dict.K();
  const double inv = 1.0 / (2.0 * sigma * sigma);
  Matrix w(K, K);
  for (Index i = 0; i < K; ++i) {
    w(i, i) = self_loops ? 1.0 : 0.0;
    for (Index j = i + 1; j < K; ++j) {
      double v = std::exp(-(dict.bases.col(i) - dict.bases.col(j)).squaredNorm() * inv);
      w(i, j) = v;
      w(j, i) = v;
    }
  }
  return make_relation(std::move(w));
}

SparseRelation relation_sparse(const Dictionary& dict, double lambda, double tol) {
  dict.validate();
  const Index K = dict.K();
  Matrix r_signed = Matrix::Zero(K, K);

  SparseRelation out;
  for (Index i = 0; i < K; ++i) {
    // Reduced dictionary without basis i; the structural zero at (i, i)
    // realizes the self-exclusion constraint.
    Matrix reduced(dict.dim(), K - 1);
    Index c = 0;
    for (Index j = 0; j < K; ++j)
      if (j != i) reduced.col(c++) = dict.bases.col(j);

    LassoProblem p;
    p.target = dict.bases.col(i);
    p.atoms = std::move(reduced);
    p.lambda = lambda;
    p.tol = tol;
    LassoResult res = lasso_solve(p);
    if (!res.converged) ++out.non_converged_rows;

    c = 0;
    for (Index j = 0; j < K; ++j)
      if (j != i) r_signed(i, j) = res.code.coeffs[c++];
  }

  Matrix pos = r_signed.cwiseMax(0.0);
  Matrix neg = (-r_signed).cwiseMax(0.0);
  Matrix block(2 * K, 2 * K);
  block.topLeftCorner(K, K) = pos;
  block.topRightCorner(K, K) = neg;
  block.bottomLeftCorner(K, K) = neg;
  block.bottomRightCorner(K, K) = pos;
  out.relation = symmetrize(block);
  return out;
}

RelationMatrix relation_llc(const Dictionary& dict, int k, double llc_reg) {
  dict.validate();
  const Index K = dict.K();
  if (k < 1 || k > K - 1)
    throw ContractError("relation_llc: k must be in [1, K-1]");

  Matrix r = Matrix::Zero(K, K);
  for (Index i = 0; i < K; ++i) {
    Dictionary reduced;
    reduced.bases.resize(dict.dim(), K - 1);
    Index c = 0;
    for (Index j = 0; j < K; ++j)
      if (j != i) reduced.bases.col(c++) = dict.bases.col(j);

    CodeVector code = llc_encode(dict.bases.col(i), reduced, k, llc_reg);
    c = 0;
    for (Index j = 0; j < K; ++j)
      if (j != i) r(i, j) = code.coeffs[c++];
  }
  return symmetrize(r.cwiseAbs());
}

TransitionMatrix build_transition(const RelationMatrix& relation, int t) {
  if (t < 1) throw ContractError("build_transition: t must be >= 1");
  const Index n = relation.size();
  Vector inv_sqrt(n);
  for (Index i = 0; i < n; ++i)
    inv_sqrt[i] = 1.0 / std::sqrt(std::max(relation.degrees[i], kDegreeFloor));

  TransitionMatrix tm;
  tm.t = t;
  tm.p_tilde = inv_sqrt.asDiagonal() * relation.weights * inv_sqrt.asDiagonal();
  tm.power = Matrix::Identity(n, n);
  for (int s = 1; s < t; ++s) tm.power = tm.power * tm.p_tilde;
  return tm;
}

Vector normalize_datum_code(const Vector& l, const RelationMatrix& relation) {
  if (l.size() != relation.size())
    throw ContractError("normalize_datum_code: code/graph size mismatch");
  if ((l.array() < 0.0).any())
    throw ContractError("normalize_datum_code: code must be nonnegative");
  double dx = l.sum();
  if (dx <= 0.0) throw DataError("datum disconnected from all bases");

  Vector out = Vector::Zero(l.size());
  for (Index i = 0; i < l.size(); ++i) {
    if (l[i] == 0.0) continue;
    out[i] = l[i] / std::sqrt(dx * (relation.degrees[i] + l[i]));
  }
  return out;
}

Vector merge_signed_codes(const Vector& c, MergeMode mode) {
  if (c.size() % 2 != 0)
    throw ContractError("merge_signed_codes: odd-length code");
  const Index K = c.size() / 2;
  Vector out(K);
  for (Index i = 0; i < K; ++i)
    out[i] = mode == MergeMode::signed_subtract ? c[i] - c[i + K]
                                                : c[i] + c[i + K];
  return out;
}

LsgcModel LsgcModel::build(Dictionary dict, const EncoderConfig& config) {
  config.validate();
  LsgcModel m;
  m.encoder = config;
  switch (config.method) {
    case CodingMethod::sac:
      m.relation = relation_sac(dict, config.sigma);
      break;
    case CodingMethod::llc:
      m.relation = relation_llc(dict, config.knn, config.llc_reg);
      break;
    case CodingMethod::sparse: {
      dict.normalize_bases();
      SparseRelation sr = relation_sparse(dict, config.lambda);
      m.relation = std::move(sr.relation);
      m.duplicated = true;
      m.non_converged_rows = sr.non_converged_rows;
      break;
    }
  }
  m.dict = std::move(dict);
  m.transition = build_transition(m.relation, config.t);
  return m;
}

void LsgcModel::set_steps(int t) {
  encoder.t = t;
  transition = build_transition(relation, t);
}

namespace {

// Base code with the sign handling that makes it a valid walk seed:
// SAC codes are already nonnegative, LLC codes get absolute values, sparse
// codes split into positive/negative halves of length 2K.
Vector seed_code(const Vector& x, const LsgcModel& model) {
  const EncoderConfig& cfg = model.encoder;
  switch (cfg.method) {
    case CodingMethod::sac:
      return sac_encode(x, model.dict, cfg.sigma).coeffs;
    case CodingMethod::llc:
      return llc_encode(x, model.dict, cfg.knn, cfg.llc_reg).coeffs.cwiseAbs();
    case CodingMethod::sparse: {
      Vector c = sparse_encode(x, model.dict, cfg.lambda).coeffs;
      Vector split(2 * c.size());
      split.head(c.size()) = c.cwiseMax(0.0);
      split.tail(c.size()) = (-c).cwiseMax(0.0);
      return split;
    }
  }
  throw ContractError("seed_code: unknown method");
}

}  // namespace

Vector lsgc_encode_premerge(const Vector& x, const LsgcModel& model) {
  Vector l = seed_code(x, model);
  Vector tilde = normalize_datum_code(l, model.relation);
  return model.transition.power * tilde;
}

CodeVector lsgc_encode(const Vector& x, const LsgcModel& model) {
  Vector c = lsgc_encode_premerge(x, model);
  if (!model.duplicated)
    return CodeVector::make(std::move(c), SignMode::nonnegative);
  Vector merged = merge_signed_codes(c, model.encoder.merge_mode);
  return CodeVector::make(std::move(merged),
                          model.encoder.merge_mode == MergeMode::additive
                              ? SignMode::nonnegative
                              : SignMode::is_signed);
}

Matrix encode_all(const DataMatrix& data, const LsgcModel& model, bool lsgc) {
  const Index n = data.rows();
  const EncoderConfig& cfg = model.encoder;
  Index width = model.dict.K();
  Matrix codes(n, width);
  for (Index i = 0; i < n; ++i) {
    Vector x = data.values.row(i);
    if (lsgc) {
      codes.row(i) = lsgc_encode(x, model).coeffs;
    } else {
      switch (cfg.method) {
        case CodingMethod::sac:
          codes.row(i) = sac_encode(x, model.dict, cfg.sigma).coeffs;
          break;
        case CodingMethod::llc:
          codes.row(i) = llc_encode(x, model.dict, cfg.knn, cfg.llc_reg).coeffs;
          break;
        case CodingMethod::sparse:
          codes.row(i) = sparse_encode(x, model.dict, cfg.lambda).coeffs;
          break;
      }
    }
  }
  return codes;
}

}  // namespace lsgc
