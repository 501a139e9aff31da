#include <doctest.h>

#include "recq/arith.hpp"
#include "recq/errors.hpp"
#include "recq/ffield.hpp"
#include "recq/parallel.hpp"
#include "recq/rng.hpp"

using namespace recq;

namespace {

// independent oracle: plain trial division
bool trial_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 trial_count(u64 limit) {
  u64 c = 0;
  for (u64 n = 2; n <= limit; ++n)
    if (trial_prime(n)) ++c;
  return c;
}

}  // namespace

TEST_CASE("primes_up_to small values") {
  const PrimeTable t = primes_up_to(10);
  CHECK(t.primes == std::vector<u64>{2, 3, 5, 7});
  CHECK_THROWS_AS(primes_up_to(1), domain_error);
}

TEST_CASE("primes_up_to counts match the trial-division oracle") {
  CHECK(primes_up_to(100).primes.size() == trial_count(100));   // 25
  CHECK(primes_up_to(10000).primes.size() == trial_count(10000));  // 1229
}

TEST_CASE("primes_up_to at 1e6 and segment self-consistency") {
  const PrimeTable big = primes_up_to(1000000);
  CHECK(big.primes.size() == 78498);
  // crossing segment boundaries loses nothing: spot-check a window against
  // the oracle
  std::vector<u64> window;
  for (u64 p : big.primes)
    if (p >= 1048500 - 600 && p <= 1048600) window.push_back(p);
  std::vector<u64> expect;
  for (u64 n = 1048500 - 600; n <= 1048600 && n <= 1000000; ++n)
    if (trial_prime(n)) expect.push_back(n);
  CHECK(window == expect);
}

TEST_CASE("prime table membership agrees with deterministic primality") {
  const PrimeTable t = primes_up_to(100000);
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const u64 n = 2 + rng.below(100000 - 1);
    CHECK(t.contains(n) == is_prime_u64(n));
  }
}

TEST_CASE("for_primes_in matches the table") {
  std::vector<u64> seen;
  for_primes_in(50, 2000, [&](u64 p) { seen.push_back(p); });
  std::vector<u64> expect;
  for (u64 p : primes_up_to(2000).primes)
    if (p >= 50) expect.push_back(p);
  CHECK(seen == expect);
}

TEST_CASE("factorize basics") {
  CHECK(factorize(1).factors.empty());
  const Factorization f60 = factorize(60);
  CHECK(f60.factors ==
        std::vector<std::pair<mpz_class, unsigned>>{{2, 2}, {3, 1}, {5, 1}});
  CHECK_THROWS_AS(factorize(0), domain_error);
}

TEST_CASE("factorize 2^64 - 1") {
  mpz_class n = 1;
  n <<= 64;
  n -= 1;
  const Factorization f = factorize(n);
  CHECK(f.product() == n);
  std::vector<mpz_class> primes;
  for (const auto& [p, e] : f.factors) {
    CHECK(e == 1);
    CHECK(mpz_probab_prime_p(p.get_mpz_t(), 40) != 0);
    primes.push_back(p);
  }
  CHECK(primes == std::vector<mpz_class>{3, 5, 17, 257, 641, 65537, 6700417});
}

TEST_CASE("factorization round-trips on random 64-bit inputs") {
  Rng rng(42);
  for (int i = 0; i < 10000; ++i) {
    const u64 n = 1 + rng.below(1000000000000ULL);
    const auto f = factorize_u64(n);
    u64 prod = 1;
    for (const auto& [p, e] : f) {
      CHECK(is_prime_u64(p));
      for (unsigned j = 0; j < e; ++j) prod *= p;
    }
    CHECK(prod == n);
  }
}

TEST_CASE("field_make prime field and known examples") {
  const FiniteField f7 = FiniteField::make(7, 1);
  CHECK(f7.q() == 7);
  CHECK(multiplicative_order(f7, f7.from_int(1)) == 1);
  CHECK(multiplicative_order(f7, f7.from_int(2)) == 3);  // 2^3 = 8 = 1 mod 7
  const FiniteField f5 = FiniteField::make(5, 1);
  CHECK(multiplicative_order(f5, f5.from_int(4)) == 2);  // 4^2 = 16 = 1 mod 5
  CHECK_THROWS_AS(FiniteField::make(6, 1), domain_error);
  CHECK_THROWS_AS(multiplicative_order(f7, f7.from_int(0)), domain_error);
}

TEST_CASE("field_make F_8: the modulus is one of the two irreducible cubics") {
  // enumerate all monic cubics over F_2: exactly X^3+X+1 and X^3+X^2+1 are
  // irreducible
  std::vector<std::vector<u64>> irr;
  for (u64 bits = 0; bits < 8; ++bits) {
    std::vector<u64> cand = {bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, 1};
    if (is_irreducible_mod_p(cand, 2)) irr.push_back(cand);
  }
  REQUIRE(irr.size() == 2);
  CHECK(irr[0] == std::vector<u64>{1, 1, 0, 1});  // X^3 + X + 1
  CHECK(irr[1] == std::vector<u64>{1, 0, 1, 1});  // X^3 + X^2 + 1
  const FiniteField f8 = FiniteField::make(2, 3, 99);
  const bool match = f8.modulus() == irr[0] || f8.modulus() == irr[1];
  CHECK(match);
}

TEST_CASE("field_make F_9 has an element of order 8") {
  const FiniteField f9 = FiniteField::make(3, 2);
  bool found = false;
  for (u64 idx = 1; idx < 9; ++idx)
    if (multiplicative_order(f9, f9.from_index(idx)) == 8) found = true;
  CHECK(found);
}

TEST_CASE("orders divide q - 1 and are minimal, random fields") {
  Rng rng(2024);
  const PrimeTable pt = primes_up_to(251);
  for (int trial = 0; trial < 40; ++trial) {
    const u64 p = pt.primes[rng.below(pt.primes.size())];
    const unsigned k = 1 + static_cast<unsigned>(rng.below(3));
    u128 q = 1;
    for (unsigned i = 0; i < k; ++i) q *= p;
    if (q > (1u << 16)) continue;
    const FiniteField f = FiniteField::make(p, k, 1000 + trial);
    for (int i = 0; i < 25; ++i) {
      const u64 idx = 1 + rng.below(f.q() - 1);
      const FFElem a = f.from_index(idx);
      CHECK(f.pow(a, f.q() - 1) == f.one());
      const u64 ord = multiplicative_order(f, a);
      CHECK((f.q() - 1) % ord == 0);
      CHECK(f.pow(a, ord) == f.one());
      for (const auto& [ell, e] : factorize_u64(ord)) {
        (void)e;
        CHECK(f.pow(a, ord / ell) != f.one());
      }
    }
  }
}

TEST_CASE("field element arithmetic closes and inverts") {
  const FiniteField f = FiniteField::make(5, 2, 3);
  for (u64 i = 1; i < 25; ++i) {
    const FFElem a = f.from_index(i);
    const FFElem inv = f.inv(a);
    CHECK(f.mul(a, inv) == f.one());
    for (auto c : a.c) CHECK(c < 5);
  }
  CHECK_THROWS_AS(f.inv(f.zero()), domain_error);
}

TEST_CASE("prime table construction is worker-count independent") {
  set_worker_count(1);
  const PrimeTable a = primes_up_to(3000000);
  set_worker_count(4);
  const PrimeTable b = primes_up_to(3000000);
  set_worker_count(0);
  CHECK(a.primes == b.primes);
}
