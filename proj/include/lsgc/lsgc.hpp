#pragma once

#include "lsgc/core.hpp"
#include "lsgc/dictionary.hpp"
#include "lsgc/encoders.hpp"

namespace lsgc {

/// Gaussian basis-to-basis weights. Self-loops default to off (zero
/// diagonal); the Gaussian formula would put 1 there.
RelationMatrix relation_sac(const Dictionary& dict, double sigma,
                            bool self_loops = false);

struct SparseRelation {
  RelationMatrix relation;  // 2K x 2K block matrix [[Rp, Rn], [Rn, Rp]]
  bool duplicated = true;
  int non_converged_rows = 0;
};

/// Each basis sparse-coded against the dictionary with itself removed, the
/// signed coefficients split into positive and negative blocks, then
/// symmetrized.
SparseRelation relation_sparse(const Dictionary& dict, double lambda,
                               double tol = 1e-6);

/// Each basis LLC-coded against the other K-1 bases; absolute values taken,
/// then symmetrized. Requires k <= K-1.
RelationMatrix relation_llc(const Dictionary& dict, int k, double llc_reg);

/// P = Dg^(-1/2) R Dg^(-1/2) with degrees floored at kDegreeFloor, plus the
/// precomputed (t-1)-th power.
TransitionMatrix build_transition(const RelationMatrix& relation, int t);

/// Datum-vector normalization: out_i = l_i / sqrt(d(x) * (d(b_i) + l_i))
/// with d(x) = sum(l). Requires l nonnegative with at least one positive
/// entry; zero entries stay zero.
Vector normalize_datum_code(const Vector& l, const RelationMatrix& relation);

/// Merges a nonnegative length-2K code back to length K.
Vector merge_signed_codes(const Vector& c, MergeMode mode);

/// Everything needed to encode samples: base encoder settings, the basis
/// relation graph, and the propagation operator.
struct LsgcModel {
  Dictionary dict;
  EncoderConfig encoder;
  RelationMatrix relation;
  TransitionMatrix transition;
  bool duplicated = false;
  int non_converged_rows = 0;

  static LsgcModel build(Dictionary dict, const EncoderConfig& config);

  /// Rebuilds the transition power for a new step count on the same graph.
  void set_steps(int t);
};

/// Base code -> sign handling -> datum normalization -> propagation ->
/// merge (duplicated path only).
CodeVector lsgc_encode(const Vector& x, const LsgcModel& model);

/// The nonnegative propagated code before the duplicated halves are merged.
/// For SAC/LLC this equals the final code.
Vector lsgc_encode_premerge(const Vector& x, const LsgcModel& model);

/// One code per row. With lsgc = false the configured base encoder is
/// emitted instead of the propagated code.
Matrix encode_all(const DataMatrix& data, const LsgcModel& model,
                  bool lsgc = true);

}  // namespace lsgc
