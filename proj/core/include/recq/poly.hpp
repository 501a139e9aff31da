#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "recq/arith.hpp"

namespace recq {

/// Dense integer-coefficient polynomial, coefficients low-to-high.
/// The zero polynomial has an empty coefficient vector and degree -1;
/// otherwise the leading coefficient is nonzero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coeffs);
  static IntPolynomial constant(const mpz_class& c);
  static IntPolynomial x();  // the monomial X

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  const mpz_class& operator[](std::size_t i) const { return c_[i]; }
  const mpz_class& leading() const;

  mpz_class eval(const mpz_class& x) const;
  u64 eval_mod(u64 x, u64 m) const;

  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  IntPolynomial operator-() const;
  bool operator==(const IntPolynomial&) const = default;

  IntPolynomial derivative() const;

  /// gcd of the coefficients; 0 for the zero polynomial. Always >= 0.
  mpz_class content() const;
  /// f / content(f), sign-normalized so the leading coefficient is > 0.
  IntPolynomial primitive_part() const;

  /// Exact division; throws domain_error if o does not divide *this in Q[X]
  /// or the quotient is not integral.
  IntPolynomial divide_exact(const IntPolynomial& o) const;
  /// True iff o divides *this over Q (equivalently over Z up to content).
  bool divisible_by(const IntPolynomial& o) const;

  std::string to_string() const;  // human-readable, for messages

 private:
  std::vector<mpz_class> c_;
  void normalize();
};

/// Primitive polynomial gcd over Z (primitive PRS), sign-normalized with a
/// positive leading coefficient. gcd(0, 0) = 0.
IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b);

/// Resultant of a and b, exact (fraction-free Gaussian elimination on the
/// Sylvester matrix).
mpz_class resultant(const IntPolynomial& a, const IntPolynomial& b);

/// Discriminant, exact: (-1)^(d(d-1)/2) res(f, f') / lc(f). Degree >= 1;
/// linear polynomials give 1.
mpz_class discriminant(const IntPolynomial& f);

}  // namespace recq
