#include <doctest.h>

#include <algorithm>

#include "recq/errors.hpp"
#include "recq/polyzero.hpp"
#include "recq/rng.hpp"

using namespace recq;

namespace {

IntPolynomial poly(std::vector<long> coeffs) {
  std::vector<mpz_class> c(coeffs.begin(), coeffs.end());
  return IntPolynomial(std::move(c));
}

// independent oracle: O(p) residue scan
unsigned scan_zeros(const IntPolynomial& f, u64 p) {
  unsigned count = 0;
  for (u64 x = 0; x < p; ++x) {
    mpz_class v = f.eval(mpz_class(static_cast<unsigned long>(x)));
    if (mpz_fdiv_ui(v.get_mpz_t(), p) == 0) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("zeros_mod_p basics") {
  CHECK(*zeros_mod_p(IntPolynomial::x(), 2) == 1);
  CHECK(*zeros_mod_p(IntPolynomial::x(), 9973) == 1);
  CHECK(*zeros_mod_p(poly({1, 0, 1}), 5) == 2);  // X^2+1: 2, 3
  CHECK(*zeros_mod_p(poly({1, 0, 1}), 3) == 0);
  // vanishing mod p flagged
  CHECK_FALSE(zeros_mod_p(poly({5, 10}), 5).has_value());
  // function vanishing everywhere counts as identically vanishing too
  CHECK_FALSE(zeros_mod_p(poly({0, 1, 1}), 2).has_value());  // X^2+X mod 2
}

TEST_CASE("gcd path agrees with the scan oracle above the scan cutoff") {
  Rng rng(3);
  const std::vector<u64> big_primes = {10007, 10009, 1037, 12553, 16411,
                                       19997, 10993, 14741};
  for (int i = 0; i < 100; ++i) {
    std::vector<mpz_class> c(1 + rng.below(6));
    for (auto& v : c)
      v = static_cast<long>(rng.below(41)) - 20;
    IntPolynomial f(std::move(c));
    if (f.degree() < 1) continue;
    // force the gcd path (p > 1e4) and compare against the direct scan
    const u64 p = big_primes[rng.below(big_primes.size())];
    if (p <= 10000) continue;
    const auto got = zeros_mod_p(f, p);
    if (!got) continue;
    CHECK(*got == scan_zeros(f, p));
  }
}

TEST_CASE("roots_mod_p returns the residues themselves") {
  const auto r5 = roots_mod_p(poly({1, 0, 1}), 5);
  CHECK(*r5 == std::vector<u64>{2, 3});
  // large prime: equal-degree splitting path; X^2+1 mod 10007 (10007 % 4 = 3)
  CHECK(roots_mod_p(poly({1, 0, 1}), 10007)->empty());
  // 10009 % 4 = 1: two roots r, p - r
  const auto r = roots_mod_p(poly({1, 0, 1}), 10009);
  REQUIRE(r->size() == 2);
  for (u64 root : *r)
    CHECK(mulmod(root, root, 10009) == 10008);
  // deterministic
  CHECK(roots_mod_p(poly({1, 0, 1}), 10009) == r);
}

TEST_CASE("factor_over_Z textbook cases") {
  const FactorizationZ a = factor_over_Z(poly({-1, 0, 1}));  // X^2-1
  CHECK(a.h == 2);
  CHECK(a.content == 1);
  CHECK(a.product() == poly({-1, 0, 1}));

  const FactorizationZ b = factor_over_Z(poly({-1, 0, 0, 0, 1}));  // X^4-1
  CHECK(b.h == 3);
  CHECK(b.product() == poly({-1, 0, 0, 0, 1}));
  int quadratics = 0;
  for (const auto& [f, mult] : b.factors) {
    CHECK(mult == 1);
    if (f.degree() == 2) {
      ++quadratics;
      CHECK(f == poly({1, 0, 1}));
    }
  }
  CHECK(quadratics == 1);

  const FactorizationZ c = factor_over_Z(poly({-6, 0, 6}));  // 6X^2-6
  CHECK(c.content == 6);
  CHECK(c.h == 2);
  CHECK(c.product() == poly({-6, 0, 6}));
}

TEST_CASE("factor_over_Z: multiplicities, irreducibles, sign") {
  // (X-1)^2 (X+1) with content -2
  const IntPolynomial f =
      poly({-2}) * poly({-1, 1}) * poly({-1, 1}) * poly({1, 1});
  const FactorizationZ fz = factor_over_Z(f);
  CHECK(fz.content == -2);
  CHECK(fz.h == 2);
  CHECK(fz.product() == f);
  bool saw_square = false;
  for (const auto& [g, mult] : fz.factors)
    if (g == poly({-1, 1})) {
      CHECK(mult == 2);
      saw_square = true;
    }
  CHECK(saw_square);

  // irreducible quartic X^4 + 1 stays whole
  const FactorizationZ q = factor_over_Z(poly({1, 0, 0, 0, 1}));
  CHECK(q.h == 1);
  CHECK(q.factors.size() == 1);
  CHECK(q.factors[0].second == 1);

  // Kronecker search splits a quartic into two quadratics
  const FactorizationZ s = factor_over_Z(poly({1, 0, 1}) * poly({-2, 0, 1}));
  CHECK(s.h == 2);
  CHECK(s.factors.size() == 2);
  for (const auto& [g, mult] : s.factors) {
    CHECK(g.degree() == 2);
    CHECK(mult == 1);
  }
}

TEST_CASE("factor values larger than sqrt of the evaluation are found") {
  // g(0) = 35 is the largest divisor of f(0) = 35; the degree-2 search must
  // still reach it
  const IntPolynomial g = poly({35, 0, 1});      // X^2 + 35
  const IntPolynomial h = poly({1, 0, 0, 0, 1});  // X^4 + 1
  const FactorizationZ fz = factor_over_Z(g * h);
  CHECK(fz.h == 2);
  CHECK(fz.factors.size() == 2);
  CHECK(fz.product() == g * h);
  bool found_g = false;
  for (const auto& [f, mult] : fz.factors) {
    (void)mult;
    if (f == g) found_g = true;
  }
  CHECK(found_g);
}

TEST_CASE("factor_over_Z caps and errors") {
  CHECK_THROWS_AS(factor_over_Z(IntPolynomial{}), domain_error);
  std::vector<mpz_class> big(10, 1);
  CHECK_THROWS_AS(factor_over_Z(IntPolynomial(std::move(big))), domain_error);
}

TEST_CASE("no returned factor of degree >= 2 has a rational root") {
  const FactorizationZ s = factor_over_Z(poly({1, 0, 1}) * poly({-2, 0, 1}));
  for (const auto& [g, mult] : s.factors) {
    (void)mult;
    if (g.degree() < 2) continue;
    for (long r = -10; r <= 10; ++r)
      CHECK(g.eval(r) != 0);
  }
}

TEST_CASE("factorization round-trips on random factor products") {
  // random primitive irreducibles from a small pool, multiplied in random
  // order with random multiplicities and content
  const std::vector<IntPolynomial> pool = {
      poly({-1, 1}),    // X - 1
      poly({1, 1}),     // X + 1
      poly({3, 1}),     // X + 3
      poly({1, 0, 1}),  // X^2 + 1
      poly({-2, 0, 1}), // X^2 - 2
      poly({1, 1, 1}),  // X^2 + X + 1
      poly({2, 0, 0, 1}),  // X^3 + 2
  };
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    IntPolynomial f = poly({static_cast<long>(1 + rng.below(5)) *
                            (rng.below(2) ? 1 : -1)});
    int total_deg = 0;
    std::vector<std::pair<std::size_t, unsigned>> used;
    while (true) {
      const std::size_t pick = rng.below(pool.size());
      const int d = pool[pick].degree();
      if (total_deg + d > 6) break;
      f = f * pool[pick];
      total_deg += d;
      bool merged = false;
      for (auto& [idx, mult] : used)
        if (idx == pick) {
          ++mult;
          merged = true;
        }
      if (!merged) used.emplace_back(pick, 1);
      if (rng.below(3) == 0) break;
    }
    if (total_deg == 0) continue;
    const FactorizationZ fz = factor_over_Z(f);
    CHECK(fz.product() == f);
    CHECK(fz.h == used.size());
    // every input factor appears with its multiplicity
    for (const auto& [idx, mult] : used) {
      bool found = false;
      for (const auto& [g, m] : fz.factors)
        if (g == pool[idx] && m == mult) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("discriminant exact values") {
  CHECK(discriminant(poly({1, 0, 1})) == -4);   // X^2+1
  CHECK(discriminant(poly({-2, 0, 1})) == 8);   // X^2-2
  CHECK(discriminant(poly({-7, 1})) == 1);      // linear
  CHECK(discriminant(poly({2, 0, 0, 1})) == -108);  // X^3+2: -27*4
  CHECK_THROWS_AS(discriminant(poly({3})), domain_error);
}

TEST_CASE("eta bounds and additivity on coprime factors") {
  const IntPolynomial g = poly({1, 0, 1});
  const IntPolynomial h = poly({-2, 0, 1});
  const IntPolynomial f = g * h;
  const mpz_class bad = discriminant(f) * f.leading();
  for (u64 p : {5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 97ULL, 101ULL}) {
    if (mpz_fdiv_ui(bad.get_mpz_t(), p) == 0) continue;
    const unsigned ef = *zeros_mod_p(f, p);
    CHECK(ef <= std::min<u64>(f.degree(), p));
    CHECK(ef == *zeros_mod_p(g, p) + *zeros_mod_p(h, p));
  }
}

TEST_CASE("kronecker statistic: slope near h at small scale") {
  const std::vector<u64> samples = {1000, 5000, 10000};
  const KroneckerReport lin = kronecker_statistic(IntPolynomial::x(), samples);
  CHECK(lin.h == 1);
  CHECK(lin.slope == doctest::Approx(1.0).epsilon(0.10));
  CHECK(lin.table.size() == 3);
  // S is increasing in t
  CHECK(lin.table[0].s < lin.table[1].s);
  CHECK(lin.table[1].s < lin.table[2].s);

  const KroneckerReport quad =
      kronecker_statistic(poly({1, 0, 1}), samples);
  CHECK(quad.h == 1);
  CHECK(quad.slope == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("kronecker statistic rejects constants and wild thresholds") {
  CHECK_THROWS_AS(kronecker_statistic(poly({3}), {100}), domain_error);
  CHECK_THROWS_AS(kronecker_statistic(IntPolynomial::x(), {}), domain_error);
  CHECK_THROWS_AS(kronecker_statistic(IntPolynomial::x(), {200000000ULL}),
                  domain_error);
}
