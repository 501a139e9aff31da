#include "recq/recurrence.hpp"

#include <map>

#include "recq/errors.hpp"

namespace recq {

void CompanionRecurrence::validate() const {
  if (coeffs.empty()) throw domain_error("companion: order must be >= 1");
  if (coeffs.size() != init.size())
    throw domain_error("companion: need exactly k initial values");
  if (coeffs[0] == 0) throw domain_error("companion: c_0 must be nonzero");
}

void ExpPolyRecurrence::validate() const {
  if (terms.empty()) throw domain_error("exppoly: need at least one term");
  std::map<mpz_class, bool> seen;
  for (const auto& t : terms) {
    if (t.poly.is_zero()) throw domain_error("exppoly: zero coefficient poly");
    if (t.root == 0) throw domain_error("exppoly: zero root");
    if (seen.count(t.root)) throw domain_error("exppoly: repeated root");
    seen[t.root] = true;
  }
}

mpz_class eval_exact(const CompanionRecurrence& rec, u64 n) {
  rec.validate();
  const unsigned k = rec.order();
  if (n < k) return rec.init[static_cast<std::size_t>(n)];
  CompanionIterator it(rec);
  while (it.n() < n) it.advance();
  return it.value();
}

mpz_class eval_exact(const ExpPolyRecurrence& rec, u64 n) {
  rec.validate();
  mpz_class sum = 0;
  for (const auto& t : rec.terms) {
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), t.root.get_mpz_t(),
               static_cast<unsigned long>(n));
    sum += t.poly.eval(mpz_class(static_cast<unsigned long>(n))) * pw;
  }
  return sum;
}

namespace {

using Mat = std::vector<std::vector<u64>>;

Mat mat_mul(const Mat& a, const Mat& b, u64 m) {
  const std::size_t k = a.size();
  Mat r(k, std::vector<u64>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      const u64 v = a[i][l];
      for (std::size_t j = 0; j < k; ++j) {
        r[i][j] = (r[i][j] + static_cast<u128>(v) * b[l][j]) % m;
      }
    }
  return r;
}

}  // namespace

u64 eval_mod(const CompanionRecurrence& rec, u64 n, u64 m) {
  rec.validate();
  if (m < 2) throw domain_error("eval_mod: modulus must be >= 2");
  const unsigned k = rec.order();
  if (n < k) return mpz_fdiv_ui(rec.init[n].get_mpz_t(), m);
  // advance matrix: maps (F(i), ..., F(i+k-1)) to (F(i+1), ..., F(i+k))
  Mat adv(k, std::vector<u64>(k, 0));
  for (unsigned i = 0; i + 1 < k; ++i) adv[i][i + 1] = 1;
  for (unsigned j = 0; j < k; ++j)
    adv[k - 1][j] = mpz_fdiv_ui(rec.coeffs[j].get_mpz_t(), m);
  // binary exponentiation of adv^n applied to the initial state
  Mat pow;
  bool have = false;
  u64 e = n;
  Mat base = adv;
  while (e > 0) {
    if (e & 1) {
      pow = have ? mat_mul(pow, base, m) : base;
      have = true;
    }
    e >>= 1;
    if (e > 0) base = mat_mul(base, base, m);
  }
  u64 out = 0;
  for (unsigned j = 0; j < k; ++j) {
    const u64 iv = mpz_fdiv_ui(rec.init[j].get_mpz_t(), m);
    out = (out + static_cast<u128>(pow[0][j]) * iv) % m;
  }
  return out;
}

CompanionRecurrence expand_to_companion(const ExpPolyRecurrence& rec) {
  rec.validate();
  IntPolynomial charpoly = IntPolynomial::constant(1);
  for (const auto& t : rec.terms) {
    IntPolynomial lin({-t.root, 1});  // X - root
    const int mult = t.poly.degree() + 1;
    for (int i = 0; i < mult; ++i) charpoly = charpoly * lin;
  }
  const int k = charpoly.degree();
  // X^k - c_{k-1} X^{k-1} - ... - c_0  =>  c_j = -charpoly[j]
  CompanionRecurrence out;
  out.coeffs.resize(k);
  for (int j = 0; j < k; ++j) out.coeffs[j] = -charpoly[j];
  out.init.resize(k);
  for (int j = 0; j < k; ++j) out.init[j] = eval_exact(rec, j);
  out.validate();
  return out;
}

DegeneracyCheck is_nondegenerate(const ExpPolyRecurrence& rec) {
  rec.validate();
  for (std::size_t i = 0; i < rec.terms.size(); ++i)
    for (std::size_t j = i + 1; j < rec.terms.size(); ++j) {
      if (rec.terms[i].root == -rec.terms[j].root)
        return {false,
                std::make_pair(rec.terms[i].root, rec.terms[j].root)};
    }
  return {true, std::nullopt};
}

bool has_torsion_flag(const ExpPolyRecurrence& rec) {
  for (const auto& t : rec.terms)
    if (t.root < 0) return true;
  return false;
}

u64 period_mod(const CompanionRecurrence& rec, u64 m, u64 cap) {
  rec.validate();
  if (m < 2) throw domain_error("period_mod: modulus must be >= 2");
  if (gcd_u64(mpz_fdiv_ui(rec.coeffs[0].get_mpz_t(), m), m) != 1)
    throw domain_error("period_mod: requires gcd(c_0, m) = 1");
  const unsigned k = rec.order();
  std::vector<u64> start(k), state(k);
  for (unsigned i = 0; i < k; ++i)
    start[i] = mpz_fdiv_ui(rec.init[i].get_mpz_t(), m);
  state = start;
  std::vector<u64> cm(k);
  for (unsigned i = 0; i < k; ++i)
    cm[i] = mpz_fdiv_ui(rec.coeffs[i].get_mpz_t(), m);
  for (u64 t = 1; t <= cap; ++t) {
    u64 next = 0;
    for (unsigned j = 0; j < k; ++j)
      next = (next + static_cast<u128>(cm[j]) * state[j]) % m;
    for (unsigned j = 0; j + 1 < k; ++j) state[j] = state[j + 1];
    state[k - 1] = next;
    if (state == start) return t;
  }
  throw resource_error("period_mod: period exceeds cap");
}

CompanionIterator::CompanionIterator(const CompanionRecurrence& rec)
    : rec_(rec) {
  rec.validate();
  window_ = rec.init;  // F(0) .. F(k-1), head at F(0)
}

void CompanionIterator::advance() {
  // window holds F(n) .. F(n+k-1) as a ring starting at pos_; overwrite
  // F(n) with F(n+k) and move the head
  const unsigned k = rec_.order();
  mpz_class next = 0;
  for (unsigned j = 0; j < k; ++j)
    next += rec_.coeffs[j] * window_[(pos_ + j) % k];
  window_[pos_] = std::move(next);
  pos_ = (pos_ + 1) % k;
  ++n_;
}

}  // namespace recq
