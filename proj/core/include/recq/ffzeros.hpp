#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recq/ffield.hpp"

namespace recq {

/// Instance of the sparse exponential-sum zero count: coefficients c_i and
/// pairwise distinct bases a_i, all nonzero in F_q.
struct SparseInstance {
  FiniteField field;
  std::vector<FFElem> c;
  std::vector<FFElem> a;

  unsigned r() const { return static_cast<unsigned>(a.size()); }
  void validate() const;
};

/// Exact count of m in [0, q-2] with sum_i c_i a_i^m = 0, by incremental
/// power chains. Cap q <= 2^20.
u64 sparse_zero_count(const SparseInstance& inst);

/// Minimum multiplicative order of a_i / a_j over pairs i != j; r >= 2.
u64 min_ratio_order(const SparseInstance& inst);

/// 4 (q - 1) N^(-1 / 2^(r-2)), the zero-count bound; r >= 2.
double ff_bound(u64 q, u64 n_min_order, unsigned r);
/// Variant with exponent 1 / 2^r (the form used downstream where two extra
/// terms are absorbed).
double ff_bound_weak(u64 q, u64 n_min_order, unsigned r);

struct StressTrial {
  u64 q;
  unsigned r;
  u64 count;
  u64 n_min_order;  // 0 when r = 1 (bound not applicable)
  double bound;     // 0 when r = 1
};

struct StressReport {
  unsigned trials = 0;
  u64 seed = 0;
  u64 q_max = 0;
  unsigned r_min = 0, r_max = 0;
  unsigned violations = 0;
  double max_ratio = 0.0;               // count / bound over r >= 2 trials
  std::optional<StressTrial> worst;     // the trial attaining max_ratio
  std::vector<std::string> violation_dumps;  // serialized counterexamples
};

/// Seeded randomized stress of the zero-count bound. Every violation is
/// recorded; callers treat any violation as a hard failure. Deterministic:
/// per-trial seeds derive from (seed, trial index) only.
StressReport stress_bound(u64 q_max, unsigned r_min, unsigned r_max,
                          unsigned trials, u64 seed);

}  // namespace recq
