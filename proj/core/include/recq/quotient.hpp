#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recq/recurrence.hpp"
#include "recq/sieve.hpp"

namespace recq {

/// A quotient-divisibility problem: count n with G(n) != 0 and
/// F(n)/G(n) in Z[1/S]. Holds F in companion and/or exponential-polynomial
/// form; when the latter is present, the common polynomial factor of G and
/// the term coefficients is divided out at construction.
class QuotientProblem {
 public:
  static QuotientProblem from_companion(CompanionRecurrence f,
                                        IntPolynomial g,
                                        std::vector<u64> inverted_primes);
  static QuotientProblem from_exppoly(ExpPolyRecurrence f, IntPolynomial g,
                                      std::vector<u64> inverted_primes);

  const IntPolynomial& g_original() const { return g_original_; }
  const IntPolynomial& g() const { return g_; }
  const CompanionRecurrence& companion() const { return companion_; }
  const std::optional<ExpPolyRecurrence>& exppoly() const { return exppoly_; }
  const std::vector<u64>& inverted_primes() const { return inverted_primes_; }

  unsigned h() const { return h_; }
  bool h_caveat() const { return h_caveat_; }
  bool gcd_normalized() const { return gcd_normalized_; }
  bool constant_g() const { return constant_g_; }
  /// Term count r of the exponential-polynomial form; throws without one.
  unsigned r() const;

  /// Throws with decomposition instructions when F is degenerate or its
  /// root group has torsion (some negative root).
  void require_usable() const;

 private:
  CompanionRecurrence companion_;  // normalized form used for evaluation
  std::optional<ExpPolyRecurrence> exppoly_;
  IntPolynomial g_original_;
  IntPolynomial g_;
  std::vector<u64> inverted_primes_;
  unsigned h_ = 0;
  bool h_caveat_ = false;
  bool gcd_normalized_ = false;
  bool constant_g_ = false;
  bool degenerate_ = false;
  bool torsion_ = false;
};

/// Exact membership test for one n. When the prime-power factors of the
/// stripped G(n) are word-size, divisibility is decided by modular
/// evaluation (exact by CRT); otherwise the full value F(n) is used.
bool membership(const QuotientProblem& prob, u64 n);

enum class CountMode { kExact, kModularFilter };

struct CountReport {
  u64 x = 0;
  u64 count = 0;
  std::vector<u64> members;     // complete when members_complete
  bool members_complete = true;
  double bound_shape = 0.0;     // x (loglog x / log x)^h
  double fitted_constant = 0.0; // count / bound_shape
  unsigned h = 0;
  bool h_caveat = false;
  std::string mode;
};

/// Enumerates N(x). Exact mode iterates the recurrence with exact big
/// integers (x <= 1e6). The modular-filter mode (G = X only, x <= 1e8)
/// first discards n by periodic congruence tables, then confirms survivors
/// prime-power-wise; both modes agree where both run.
CountReport count_N(const QuotientProblem& prob, u64 x, CountMode mode,
                    std::size_t retain_cap = 100000);

struct SplitReport {
  u64 x = 0;
  u64 y = 0, z = 0;
  bool defaults_used = true;       // y, z from the built-in scale rules
  bool regime_override = false;    // caller-supplied window
  u64 total = 0, n1 = 0, n2 = 0;
  unsigned r = 0, h = 0;
  double exponent = 0.0;           // 1 + 1/2^r
  std::vector<std::pair<u64, u64>> histogram;  // (p, N2 hits at p)
  double fitted_c = 0.0;  // max_p hist(p) p^(1+1/2^r) / x
};

/// Splits N(x) into the sieve survivors N1 and the complement N2, with the
/// per-prime hit histogram. Without an override, y = (log x)^(2^r h) and
/// z = sqrt(x); y >= z raises regime_error.
SplitReport split_diagnostic(const QuotientProblem& prob, u64 x,
                             std::optional<std::pair<u64, u64>> override_yz =
                                 std::nullopt);

struct AdmissibleResult {
  bool admissible = false;
  std::optional<u64> witness;  // covering prime when inadmissible
};

/// Admissibility of a strictly increasing tuple: only primes p <= tuple
/// length can be covered completely.
AdmissibleResult admissible(const std::vector<u64>& tuple);

/// Exact count of n <= x with n + t prime for every tuple offset t.
u64 hl_count(const std::vector<u64>& tuple, u64 x);

struct SingularSeriesReport {
  double value = 0.0;
  double tail_rel_bound = 0.0;
  u64 p0 = 0;
};

/// Truncated singular series prod_p (1 - w(p)/p) / (1 - 1/p)^h with w(p)
/// the number of distinct tuple residues mod p.
SingularSeriesReport singular_series(const std::vector<u64>& tuple, u64 p0);

/// The Hardy-Littlewood witness family: F(n) = prod_i (2^(n + t_i) - 2),
/// G(n) = prod_i (n + t_i). Tuple length capped at 4 (the expanded
/// recurrence has 2^h summands before collection).
QuotientProblem hl_family(const std::vector<u64>& tuple);

}  // namespace recq
