#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recq/arith.hpp"

namespace recq {

/// Element of F_{p^k}: coefficient vector of its representative polynomial,
/// degree < k, coefficients in [0, p). Trailing zeros are kept so every rep
/// has length k.
struct FFElem {
  std::vector<u64> c;

  bool operator==(const FFElem&) const = default;
};

/// F_{p^k} as F_p[X] / (modulus). The modulus is monic of degree k and
/// irreducible over F_p; for k = 1 it is X and elements are plain residues.
class FiniteField {
 public:
  /// Builds the field. For k > 1 the modulus is found by seeded random
  /// search; the seed is recorded so a run can be replayed.
  static FiniteField make(u64 p, unsigned k, u64 seed = 1);

  /// Constructs with an explicitly given monic modulus (checked irreducible).
  static FiniteField with_modulus(u64 p, std::vector<u64> modulus);

  u64 p() const { return p_; }
  unsigned k() const { return k_; }
  u64 q() const { return q_; }
  u64 seed() const { return seed_; }
  const std::vector<u64>& modulus() const { return modulus_; }

  FFElem zero() const;
  FFElem one() const;
  FFElem from_int(u64 v) const;  // embeds v mod p (constant polynomial)
  FFElem element(std::vector<u64> coeffs) const;  // reduces coeffs mod p

  /// Bijection [0, q) <-> elements via base-p digits; used for enumeration
  /// and for deterministic random sampling.
  FFElem from_index(u64 idx) const;
  u64 index_of(const FFElem& a) const;

  bool is_zero(const FFElem& a) const;
  FFElem add(const FFElem& a, const FFElem& b) const;
  FFElem sub(const FFElem& a, const FFElem& b) const;
  FFElem neg(const FFElem& a) const;
  FFElem mul(const FFElem& a, const FFElem& b) const;
  FFElem inv(const FFElem& a) const;
  FFElem pow(const FFElem& a, u64 e) const;

  std::string to_string(const FFElem& a) const;

 private:
  u64 p_ = 0;
  unsigned k_ = 0;
  u64 q_ = 0;
  u64 seed_ = 0;
  std::vector<u64> modulus_;  // monic, length k+1, low-to-high
};

/// Smallest t >= 1 with a^t = 1, via the factorization of q - 1.
/// Throws domain_error for a = 0.
u64 multiplicative_order(const FiniteField& f, const FFElem& a);

/// Irreducibility of a monic polynomial over F_p (Rabin's test).
bool is_irreducible_mod_p(const std::vector<u64>& poly, u64 p);

}  // namespace recq
