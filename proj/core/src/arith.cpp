#include "recq/arith.hpp"

#include <algorithm>
#include <cmath>

#include "recq/errors.hpp"
#include "recq/parallel.hpp"

namespace recq {

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

u64 invmod(u64 a, u64 m) {
  // extended Euclid on signed 128-bit to dodge overflow
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    const __int128 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw domain_error("invmod: value not invertible");
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // witness set proven complete for n < 3.3 * 10^24
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool PrimeTable::contains(u64 n) const {
  return std::binary_search(primes.begin(), primes.end(), n);
}

namespace {

constexpr u64 kSegment = 1u << 20;

// Odd-only sieve of [0, n]; returns the primes directly.
std::vector<u64> small_primes(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  out.push_back(2);
  std::vector<bool> comp((n + 1) / 2, false);  // comp[i] <-> 2i+1
  for (u64 i = 1; 2 * i + 1 <= n; ++i) {
    const u64 p = 2 * i + 1;
    if (comp[i]) continue;
    out.push_back(p);
    if (p * p > n) continue;
    for (u64 j = (p * p - 1) / 2; 2 * j + 1 <= n; j += p) comp[j] = true;
  }
  return out;
}

// Primes in [lo, hi] given the base primes up to sqrt(hi).
void sieve_segment(u64 lo, u64 hi, const std::vector<u64>& base,
                   std::vector<u64>& out) {
  const u64 len = hi - lo + 1;
  std::vector<bool> comp(len, false);
  for (u64 p : base) {
    if (p * p > hi) break;
    u64 start = std::max(p * p, ((lo + p - 1) / p) * p);
    for (u64 m = start; m <= hi; m += p) comp[m - lo] = true;
  }
  for (u64 i = 0; i < len; ++i) {
    const u64 n = lo + i;
    if (n >= 2 && !comp[i]) out.push_back(n);
  }
}

}  // namespace

PrimeTable primes_up_to(u64 limit) {
  if (limit < 2) throw domain_error("primes_up_to: limit must be >= 2");
  PrimeTable t;
  t.limit = limit;
  const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(limit))) + 1;
  std::vector<u64> base = small_primes(root);
  if (limit <= root) {
    for (u64 p : base)
      if (p <= limit) t.primes.push_back(p);
    return t;
  }
  for (u64 p : base) t.primes.push_back(p);
  // Segments are mapped independently and concatenated in order, so the
  // result does not depend on the worker count.
  using Seg = std::vector<u64>;
  Seg rest = parallel_chunked<Seg>(
      root + 1, limit + 1, kSegment, Seg{},
      [&base](u64 a, u64 b) {
        Seg part;
        sieve_segment(a, b - 1, base, part);
        return part;
      },
      [](Seg acc, Seg part) {
        acc.insert(acc.end(), part.begin(), part.end());
        return acc;
      });
  t.primes.insert(t.primes.end(), rest.begin(), rest.end());
  return t;
}

void for_primes_in(u64 lo, u64 hi, const std::function<void(u64)>& fn) {
  if (hi < 2 || hi < lo) return;
  lo = std::max<u64>(lo, 2);
  const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi))) + 1;
  std::vector<u64> base = small_primes(root);
  for (u64 p : base)
    if (p >= lo && p <= hi) fn(p);
  u64 seg_lo = std::max(lo, root + 1);
  std::vector<u64> buf;
  while (seg_lo <= hi) {
    const u64 seg_hi = std::min(hi, seg_lo + kSegment - 1);
    buf.clear();
    sieve_segment(seg_lo, seg_hi, base, buf);
    for (u64 p : buf) fn(p);
    seg_lo = seg_hi + 1;
  }
}

mpz_class Factorization::product() const {
  mpz_class r = 1;
  for (const auto& [p, e] : factors) {
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    r *= pe;
  }
  return r;
}

namespace {

bool is_prime_mpz(const mpz_class& n) {
  if (n.fits_ulong_p()) return is_prime_u64(n.get_ui());
  // beyond 2^64: GMP's BPSW + Miller-Rabin rounds
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

u64 brent_rho_u64(u64 n, u64 c) {
  // Brent's cycle-finding variant of Pollard rho with f(x) = x^2 + c.
  u64 x = 2, y = 2, d = 1, q = 1, ys = 0;
  const u64 m = 128;
  u64 r = 1;
  while (d == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
    u64 k = 0;
    while (k < r && d == 1) {
      ys = y;
      const u64 lim = std::min(m, r - k);
      for (u64 i = 0; i < lim; ++i) {
        y = (mulmod(y, y, n) + c) % n;
        q = mulmod(q, x > y ? x - y : y - x, n);
      }
      d = gcd_u64(q, n);
      k += m;
    }
    r <<= 1;
  }
  if (d == n) {
    do {
      ys = (mulmod(ys, ys, n) + c) % n;
      d = gcd_u64(x > ys ? x - ys : ys - x, n);
    } while (d == 1);
  }
  return d;
}

u64 find_factor_u64(u64 n) {
  // deterministic retry schedule over the polynomial offset
  for (u64 c = 1;; ++c) {
    const u64 d = brent_rho_u64(n, c);
    if (d != n && d != 1) return d;
  }
}

void factor_rec_u64(u64 n, std::vector<std::pair<u64, unsigned>>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.emplace_back(n, 1);
    return;
  }
  const u64 d = find_factor_u64(n);
  factor_rec_u64(d, out);
  factor_rec_u64(n / d, out);
}

mpz_class rho_mpz(const mpz_class& n, unsigned long c) {
  mpz_class x = 2, y = 2, d = 1, diff;
  while (d == 1) {
    x = (x * x + c) % n;
    y = (y * y + c) % n;
    y = (y * y + c) % n;
    diff = x > y ? x - y : y - x;
    if (diff == 0) return n;
    mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
  }
  return d;
}

void factor_rec_mpz(const mpz_class& n,
                    std::vector<std::pair<mpz_class, unsigned>>& out) {
  if (n == 1) return;
  if (n.fits_ulong_p()) {
    std::vector<std::pair<u64, unsigned>> small;
    factor_rec_u64(n.get_ui(), small);
    for (const auto& [p, e] : small) out.emplace_back(mpz_class(p), e);
    return;
  }
  if (is_prime_mpz(n)) {
    out.emplace_back(n, 1);
    return;
  }
  for (unsigned long c = 1;; ++c) {
    const mpz_class d = rho_mpz(n, c);
    if (d != n && d != 1) {
      factor_rec_mpz(d, out);
      factor_rec_mpz(n / d, out);
      return;
    }
  }
}

}  // namespace

Factorization factorize(const mpz_class& n) {
  if (n <= 0) throw domain_error("factorize: n must be positive");
  mpz_class cap = 1;
  cap <<= 128;
  if (n >= cap) throw domain_error("factorize: n must be < 2^128");
  Factorization f;
  f.n = n;
  mpz_class rest = n;
  // trial division first; keeps rho off smooth inputs
  for (u64 p = 2; p < 10000 && rest > 1; p = (p == 2 ? 3 : p + 2)) {
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      rest /= p;
      ++e;
    }
    f.factors.emplace_back(mpz_class(p), e);
  }
  if (rest > 1) {
    std::vector<std::pair<mpz_class, unsigned>> raw;
    factor_rec_mpz(rest, raw);
    std::sort(raw.begin(), raw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [p, e] : raw) {
      if (!f.factors.empty() && f.factors.back().first == p)
        f.factors.back().second += e;
      else
        f.factors.emplace_back(p, e);
    }
  }
  std::sort(f.factors.begin(), f.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return f;
}

std::vector<std::pair<u64, unsigned>> factorize_u64(u64 n) {
  if (n == 0) throw domain_error("factorize_u64: n must be positive");
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL, 41ULL, 43ULL, 47ULL}) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) factor_rec_u64(n, out);
  std::sort(out.begin(), out.end());
  // merge duplicates (rho emits one entry per extraction)
  std::vector<std::pair<u64, unsigned>> merged;
  for (const auto& [p, e] : out) {
    if (!merged.empty() && merged.back().first == p)
      merged.back().second += e;
    else
      merged.emplace_back(p, e);
  }
  return merged;
}

}  // namespace recq
