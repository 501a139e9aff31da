#pragma once

#include <optional>
#include <vector>

#include "recq/poly.hpp"

namespace recq {

/// Factorization over Z: f = content * prod(factor_i ^ multiplicity_i) with
/// each factor primitive, irreducible over Q, positive leading coefficient.
struct FactorizationZ {
  mpz_class content = 1;  // carries the sign
  std::vector<std::pair<IntPolynomial, unsigned>> factors;
  unsigned h = 0;  // distinct nonconstant irreducible factors

  IntPolynomial product() const;
};

/// Complete factorization over Z for degree <= 8 (squarefree split, rational
/// roots, then Kronecker interpolation search). Throws on zero input or
/// degree > 8.
FactorizationZ factor_over_Z(const IntPolynomial& f);

/// Number of distinct residues l in [0, p) with f(l) = 0 mod p.
/// nullopt when f vanishes identically mod p (caller must exclude p).
/// Small p by direct scan; large p via deg gcd(f, X^p - X) over F_p.
std::optional<unsigned> zeros_mod_p(const IntPolynomial& f, u64 p);

/// The residues themselves, sorted. nullopt when f vanishes identically
/// mod p. Large p uses equal-degree splitting with a seed derived from
/// (f, p), so results are deterministic.
std::optional<std::vector<u64>> roots_mod_p(const IntPolynomial& f, u64 p);

/// One sampled point of the running statistic S(t) = sum_{p <= t} eta_f(p)
/// log(p) / p.
struct KroneckerPoint {
  u64 t;
  double s;         // S(t)
  double residual;  // S(t) - h log t
};

struct KroneckerReport {
  unsigned h = 0;                     // from factor_over_Z
  std::vector<KroneckerPoint> table;  // at the requested sample points
  double slope = 0.0;                 // least-squares S(t) ~ slope * log t + b
  double slope_intercept = 0.0;
  double max_abs_residual = 0.0;
  u64 skipped_vanishing = 0;  // primes excluded (f = 0 mod p)
};

/// Sums the statistic up to max(sample_points) and fits the slope against
/// log t. f must be nonconstant; the cap is 1e8.
KroneckerReport kronecker_statistic(const IntPolynomial& f,
                                    const std::vector<u64>& sample_points);

}  // namespace recq
