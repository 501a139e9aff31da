#include "recq/ffield.hpp"

#include <algorithm>
#include <sstream>

#include "recq/errors.hpp"
#include "recq/rng.hpp"

namespace recq {

namespace {

// -- dense polynomial arithmetic over F_p, low-to-high coefficients --

using Poly = std::vector<u64>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly add_p(const Poly& a, const Poly& b, u64 p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    u64 v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    r[i] = v >= p ? v - p : v;
  }
  trim(r);
  return r;
}

Poly sub_p(const Poly& a, const Poly& b, u64 p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    u64 av = i < a.size() ? a[i] : 0;
    u64 bv = i < b.size() ? b[i] : 0;
    r[i] = av >= bv ? av - bv : av + p - bv;
  }
  trim(r);
  return r;
}

Poly mul_p(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + static_cast<u128>(a[i]) * b[j]) % p;
  }
  trim(r);
  return r;
}

// a mod m, m nonzero
Poly mod_p(Poly a, const Poly& m, u64 p) {
  const int dm = deg(m);
  const u64 lead_inv = invmod(m.back(), p);
  while (deg(a) >= dm) {
    const u64 c = mulmod(a.back(), lead_inv, p);
    const int shift = deg(a) - dm;
    for (int i = 0; i <= dm; ++i) {
      if (m[i] == 0) continue;
      u64& slot = a[i + shift];
      const u64 t = mulmod(c, m[i], p);
      slot = slot >= t ? slot - t : slot + p - t;
    }
    trim(a);
  }
  return a;
}

Poly mulmod_p(const Poly& a, const Poly& b, const Poly& m, u64 p) {
  return mod_p(mul_p(a, b, p), m, p);
}

Poly powmod_p(Poly base, mpz_class e, const Poly& m, u64 p) {
  Poly r = {1};
  base = mod_p(std::move(base), m, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mulmod_p(r, base, m, p);
    base = mulmod_p(base, base, m, p);
    e >>= 1;
  }
  return r;
}

Poly gcd_p(Poly a, Poly b, u64 p) {
  while (!b.empty()) {
    a = mod_p(std::move(a), b, p);
    std::swap(a, b);
  }
  if (!a.empty() && a.back() != 1) {
    const u64 inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
  }
  return a;
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<u64>& poly, u64 p) {
  Poly f = poly;
  trim(f);
  const int n = deg(f);
  if (n < 1) return false;
  if (n == 1) return true;
  // Rabin: X^(p^n) == X mod f, and gcd(X^(p^(n/t)) - X, f) = 1 for prime t | n
  const Poly x = {0, 1};
  mpz_class pn;
  mpz_ui_pow_ui(pn.get_mpz_t(), p, static_cast<unsigned long>(n));
  Poly xpn = powmod_p(x, pn, f, p);
  if (sub_p(xpn, x, p) != Poly{}) return false;
  for (const auto& [t, e] : factorize_u64(static_cast<u64>(n))) {
    (void)e;
    mpz_class pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), p, static_cast<unsigned long>(n / t));
    Poly xpm = powmod_p(x, pm, f, p);
    Poly g = gcd_p(sub_p(xpm, x, p), f, p);
    if (deg(g) != 0) return false;
  }
  return true;
}

FiniteField FiniteField::make(u64 p, unsigned k, u64 seed) {
  if (!is_prime_u64(p)) throw domain_error("field_make: p is not prime");
  if (k < 1 || k > 12) throw domain_error("field_make: need 1 <= k <= 12");
  // q must stay below 2^64 so that orders can be computed via factorize_u64
  u128 q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > u128(~0ULL)) throw domain_error("field_make: p^k exceeds 2^64");
  }
  FiniteField f;
  f.p_ = p;
  f.k_ = k;
  f.q_ = static_cast<u64>(q);
  f.seed_ = seed;
  if (k == 1) {
    f.modulus_ = {0, 1};  // X
    return f;
  }
  Rng rng(seed);
  // random monic polynomials; ~1/k of them are irreducible
  constexpr int kBudget = 20000;
  for (int tries = 0; tries < kBudget; ++tries) {
    std::vector<u64> cand(k + 1, 0);
    cand[k] = 1;
    for (unsigned i = 0; i < k; ++i) cand[i] = rng.below(p);
    if (is_irreducible_mod_p(cand, p)) {
      f.modulus_ = std::move(cand);
      return f;
    }
  }
  throw resource_error("field_make: no irreducible modulus within budget");
}

FiniteField FiniteField::with_modulus(u64 p, std::vector<u64> modulus) {
  if (!is_prime_u64(p)) throw domain_error("field: p is not prime");
  trim(modulus);
  const int d = deg(modulus);
  if (d < 1) throw domain_error("field: modulus must be nonconstant");
  for (auto& c : modulus) c %= p;
  if (modulus.back() != 1) throw domain_error("field: modulus must be monic");
  if (d > 1 && !is_irreducible_mod_p(modulus, p))
    throw domain_error("field: modulus is reducible");
  FiniteField f;
  f.p_ = p;
  f.k_ = static_cast<unsigned>(d);
  u128 q = 1;
  for (int i = 0; i < d; ++i) {
    q *= p;
    if (q > u128(~0ULL)) throw domain_error("field: p^k exceeds 2^64");
  }
  f.q_ = static_cast<u64>(q);
  f.modulus_ = std::move(modulus);
  return f;
}

FFElem FiniteField::zero() const { return FFElem{std::vector<u64>(k_, 0)}; }

FFElem FiniteField::one() const {
  FFElem e = zero();
  e.c[0] = 1 % p_;
  return e;
}

FFElem FiniteField::from_int(u64 v) const {
  FFElem e = zero();
  e.c[0] = v % p_;
  return e;
}

FFElem FiniteField::element(std::vector<u64> coeffs) const {
  for (auto& c : coeffs) c %= p_;
  Poly r = mod_p(std::move(coeffs), modulus_, p_);
  r.resize(k_, 0);
  return FFElem{std::move(r)};
}

FFElem FiniteField::from_index(u64 idx) const {
  FFElem e = zero();
  for (unsigned i = 0; i < k_; ++i) {
    e.c[i] = idx % p_;
    idx /= p_;
  }
  return e;
}

u64 FiniteField::index_of(const FFElem& a) const {
  u64 idx = 0;
  for (unsigned i = k_; i-- > 0;) idx = idx * p_ + a.c[i];
  return idx;
}

bool FiniteField::is_zero(const FFElem& a) const {
  return std::all_of(a.c.begin(), a.c.end(), [](u64 v) { return v == 0; });
}

FFElem FiniteField::add(const FFElem& a, const FFElem& b) const {
  Poly r = add_p(a.c, b.c, p_);
  r.resize(k_, 0);
  return FFElem{std::move(r)};
}

FFElem FiniteField::sub(const FFElem& a, const FFElem& b) const {
  Poly r = sub_p(a.c, b.c, p_);
  r.resize(k_, 0);
  return FFElem{std::move(r)};
}

FFElem FiniteField::neg(const FFElem& a) const { return sub(zero(), a); }

FFElem FiniteField::mul(const FFElem& a, const FFElem& b) const {
  Poly r = mulmod_p(a.c, b.c, modulus_, p_);
  r.resize(k_, 0);
  return FFElem{std::move(r)};
}

FFElem FiniteField::inv(const FFElem& a) const {
  if (is_zero(a)) throw domain_error("field inverse of zero");
  return pow(a, q_ - 2);
}

FFElem FiniteField::pow(const FFElem& a, u64 e) const {
  Poly r = powmod_p(a.c, mpz_class(static_cast<unsigned long>(e)), modulus_, p_);
  r.resize(k_, 0);
  return FFElem{std::move(r)};
}

std::string FiniteField::to_string(const FFElem& a) const {
  std::ostringstream os;
  os << "[";
  for (unsigned i = 0; i < k_; ++i) {
    if (i) os << ",";
    os << a.c[i];
  }
  os << "]";
  return os.str();
}

u64 multiplicative_order(const FiniteField& f, const FFElem& a) {
  if (f.is_zero(a)) throw domain_error("multiplicative_order: a = 0");
  u64 t = f.q() - 1;
  for (const auto& [ell, e] : factorize_u64(f.q() - 1)) {
    (void)e;
    while (t % ell == 0) {
      const FFElem x = f.pow(a, t / ell);
      if (x == f.one())
        t /= ell;
      else
        break;
    }
  }
  return t;
}

}  // namespace recq
