#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "recq/arith.hpp"

namespace recq {

/// A multiplicative function given by its values at prime powers (exact
/// rationals), with the mean-value exponent h and error scale L it claims
/// to satisfy. Values off the listed support are zero; g(1) = 1 always.
class MultFnSpec {
 public:
  /// g identically zero beyond n = 1 (h = 0).
  static MultFnSpec one_only();
  /// g(p) = 1/p, zero at higher prime powers; h = 1. The classical
  /// mu^2(n)/n.
  static MultFnSpec mu2_over_n();
  /// g(p) = k/p on squarefree support; h = k.
  static MultFnSpec k_over_p(unsigned k);
  /// g(p) = omega_p / (p - omega_p) for the primes of a residue system,
  /// zero elsewhere and at higher prime powers. Cutoff y, exponent h,
  /// error scale L = log y.
  static MultFnSpec omega_table(std::shared_ptr<const std::map<u64, u32>> sizes,
                                double y, double h);

  mpq_class at(u64 p, unsigned s) const;
  double at_d(u64 p, unsigned s) const;

  double declared_h() const { return h_; }
  double declared_L() const { return l_; }
  double support_cutoff() const { return y_; }
  /// D with |g(p) - h/p| <= D/p^2 when such a pointwise bound exists
  /// (catalog functions); nullopt for table-backed systems.
  std::optional<double> decay_constant() const { return decay_; }
  const std::string& name() const { return name_; }

 private:
  enum class Kind { kOneOnly, kMu2OverN, kKOverP, kOmegaTable };
  Kind kind_ = Kind::kOneOnly;
  unsigned k_ = 0;
  std::shared_ptr<const std::map<u64, u32>> omega_;
  double y_ = 0.0;
  double h_ = 0.0;
  double l_ = 1.0;
  std::optional<double> decay_;
  std::string name_;
};

/// Associated von Mangoldt function on prime powers <= x, sorted by n.
struct VonMangoldtTable {
  u64 x = 0;
  std::vector<std::pair<u64, double>> entries;

  /// 0 for n off the prime-power support.
  double at(u64 n) const;
};

/// Builds the table by the recursion
///   Lambda_g(p^s) = g(p^s) s log p - sum_{t<s} g(p^{s-t}) Lambda_g(p^t).
/// Cap x <= 1e7.
VonMangoldtTable lambda_g(const MultFnSpec& g, u64 x);

struct WirsingSumReport {
  u64 x = 0;
  double sum = 0.0;
  double log_x = 0.0;
  double ratio = 0.0;  // sum / (log x)^h
};

/// Sum of g(n) for n <= x, expanding g multiplicatively from a
/// smallest-prime-factor sieve, compensated accumulation. Cap x <= 1e7.
WirsingSumReport wirsing_sum(const MultFnSpec& g, u64 x);

struct EulerProductReport {
  double value = 0.0;   // c_g approximation at truncation p0
  u64 p0 = 0;
  /// Relative tail bound exp(±bound) when the spec declares a decay
  /// constant; nullopt for table-backed functions.
  std::optional<double> tail_rel_bound;
};

/// c_g = Gamma(h+1)^-1 prod_p (1 + g(p) + g(p^2) + ...) (1 - 1/p)^h,
/// truncated at p0 <= 1e7. Throws if a per-prime series fails to converge.
EulerProductReport euler_constant_cg(const MultFnSpec& g, double h, u64 p0);

}  // namespace recq
