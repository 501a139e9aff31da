#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "recq/poly.hpp"

namespace recq {

/// F(n + k) = sum_j c_j F(n + j), coefficients c_0..c_{k-1} with c_0 != 0,
/// seeded by F(0)..F(k-1).
struct CompanionRecurrence {
  std::vector<mpz_class> coeffs;
  std::vector<mpz_class> init;

  unsigned order() const { return static_cast<unsigned>(coeffs.size()); }
  void validate() const;  // c_0 != 0, sizes match, order >= 1
};

/// One term f(n) * root^n of an exponential-polynomial recurrence.
struct ExpPolyTerm {
  IntPolynomial poly;
  mpz_class root;
};

/// F(n) = sum_i f_i(n) * root_i^n with nonzero pairwise distinct integer
/// roots and nonzero polynomials.
struct ExpPolyRecurrence {
  std::vector<ExpPolyTerm> terms;

  unsigned term_count() const { return static_cast<unsigned>(terms.size()); }
  void validate() const;
};

mpz_class eval_exact(const CompanionRecurrence& rec, u64 n);
mpz_class eval_exact(const ExpPolyRecurrence& rec, u64 n);

/// F(n) mod m via companion-matrix binary exponentiation; m in [2, 2^63).
u64 eval_mod(const CompanionRecurrence& rec, u64 n, u64 m);

/// Characteristic polynomial prod_i (X - root_i)^(deg f_i + 1); order is its
/// degree, initial values from exact evaluation.
CompanionRecurrence expand_to_companion(const ExpPolyRecurrence& rec);

/// Over the integers the only root-of-unity ratios are +-1, and +1 is ruled
/// out by root distinctness, so degeneracy means some root_i = -root_j.
struct DegeneracyCheck {
  bool nondegenerate;
  std::optional<std::pair<mpz_class, mpz_class>> witness;  // offending pair
};
DegeneracyCheck is_nondegenerate(const ExpPolyRecurrence& rec);

/// Surrogate for the torsion-free hypothesis on the group generated by the
/// roots: flags any negative root. Flagged recurrences are refused by the
/// quotient pipeline with instructions to decompose into arithmetic
/// progressions.
bool has_torsion_flag(const ExpPolyRecurrence& rec);

/// Least period of the state-vector sequence mod m (purely periodic because
/// gcd(c_0, m) = 1 makes the companion matrix invertible mod m).
/// `cap` bounds the search; exceeding it is a resource error.
u64 period_mod(const CompanionRecurrence& rec, u64 m, u64 cap = 100000000ULL);

/// Streams F(0), F(1), ... exactly, keeping a k-value window.
class CompanionIterator {
 public:
  explicit CompanionIterator(const CompanionRecurrence& rec);
  /// Value F(n) for the current n, then advances.
  const mpz_class& value() const { return window_[pos_]; }
  u64 n() const { return n_; }
  void advance();

 private:
  const CompanionRecurrence& rec_;
  std::vector<mpz_class> window_;  // ring buffer of the last k values
  std::size_t pos_ = 0;
  u64 n_ = 0;
};

}  // namespace recq
