#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "recq/errors.hpp"
#include "recq/io.hpp"
#include "recq/parallel.hpp"
#include "recq/sieve.hpp"

using namespace recq;

namespace {

IntPolynomial poly(std::vector<long> coeffs) {
  std::vector<mpz_class> c(coeffs.begin(), coeffs.end());
  return IntPolynomial(std::move(c));
}

// independent oracle: test each n against every residue set directly
u64 per_n_count(u64 x, const SieveSystem& sys) {
  u64 count = 0;
  for (u64 n = 1; n <= x; ++n) {
    bool hit = false;
    for (const auto& e : sys.entries)
      for (u64 r : e.residues)
        if (n % e.p == r) hit = true;
    if (!hit) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("build_sieve_system: zero sets and the audit invariant") {
  const SieveSystem sys = build_sieve_system(poly({1, 0, 1}), {}, {}, 3, 50);
  CHECK(sys.h == 1);
  bool saw5 = false;
  for (const auto& e : sys.entries) {
    CHECK(e.p > 3);
    CHECK(e.p <= 50);
    CHECK(e.residues.size() < e.p);  // proper subset
    for (u64 r : e.residues)
      CHECK(sys.gtilde.eval_mod(r, e.p) == 0);  // full audit pass
    if (e.p == 5) {
      saw5 = true;
      CHECK(e.residues == std::vector<u64>{2, 3});
    }
  }
  CHECK(saw5);
}

TEST_CASE("order filter includes p = 7 for roots (2, 3)") {
  // ratio orders mod 7: ord(2 * 3^-1) = ord(2 * 5) = ord(3) = 6; 6^4 >= 7
  const SieveSystem sys =
      build_sieve_system(IntPolynomial::x(), {2, 3}, {}, 5, 11);
  bool has7 = false, has11 = false;
  for (const auto& e : sys.entries) {
    if (e.p == 7) has7 = true;
    if (e.p == 11) has11 = true;
  }
  CHECK(has7);
  CHECK(has11);
}

TEST_CASE("exclusion log carries reasons") {
  // 5 sits in S; primes dividing a root are excluded the same way
  const SieveSystem sys =
      build_sieve_system(IntPolynomial::x(), {2, 3}, {5}, 2, 11);
  bool excluded5 = false, excluded3 = false;
  for (const auto& e : sys.excluded) {
    if (e.p == 5) {
      excluded5 = true;
      CHECK(e.reason == SieveSystem::Exclusion::kInS);
    }
    if (e.p == 3) {
      excluded3 = true;  // 3 divides the root 3
      CHECK(e.reason == SieveSystem::Exclusion::kInS);
    }
  }
  CHECK(excluded5);
  CHECK(excluded3);
}

TEST_CASE("degenerate root pairs are rejected") {
  CHECK_THROWS_AS(build_sieve_system(IntPolynomial::x(), {2, -2}, {}, 2, 30),
                  domain_error);
  CHECK_THROWS_AS(build_sieve_system(poly({7}), {}, {}, 2, 30), domain_error);
}

TEST_CASE("sieved_count: inclusion-exclusion example") {
  // Omega_p = {0} for p in {5, 7}: 100 - 20 - 14 + 2 = 68
  const SieveSystem sys = build_sieve_system(IntPolynomial::x(), {}, {}, 3, 10);
  REQUIRE(sys.entries.size() == 2);
  CHECK(sieved_count(100, sys) == 68);
}

TEST_CASE("sieved_count: empty window leaves everything") {
  const SieveSystem sys =
      build_sieve_system(IntPolynomial::x(), {}, {}, 10, 10);
  CHECK(sys.entries.empty());
  CHECK(sieved_count(100, sys) == 100);
}

TEST_CASE("sieved_count agrees with the per-n oracle") {
  const SieveSystem sys = build_sieve_system(poly({1, 0, 1}), {}, {}, 3, 20);
  CHECK(sieved_count(10000, sys) == per_n_count(10000, sys));
  const SieveSystem wide = build_sieve_system(poly({-4, 0, 1, 1}), {}, {}, 2, 60);
  CHECK(sieved_count(5000, wide) == per_n_count(5000, wide));
}

TEST_CASE("sieved_count is worker-count independent") {
  const SieveSystem sys = build_sieve_system(poly({1, 0, 1}), {}, {}, 3, 100);
  set_worker_count(1);
  const u64 a = sieved_count(200000, sys);
  set_worker_count(4);
  const u64 b = sieved_count(200000, sys);
  set_worker_count(0);
  CHECK(a == b);
}

TEST_CASE("omega log p / p sum tracks h log x") {
  const SieveSystem sys = build_sieve_system(poly({1, 0, 1}), {}, {}, 2, 100000);
  double prev_resid = 0.0;
  bool first = true;
  for (u64 t : {1000ULL, 10000ULL, 100000ULL}) {
    const double s = omega_logp_sum(sys, t);
    const double resid = s - sys.h * std::log((double)t);
    if (!first) CHECK(std::abs(resid - prev_resid) < 1.5);
    prev_resid = resid;
    first = false;
  }
}

TEST_CASE("sieve_bound_shape arithmetic") {
  CHECK(sieve_bound_shape(1000000, 10, 2.0) ==
        doctest::Approx(1000000.0 / 36.0));
  CHECK(sieve_bound_shape(1000, 10, 0.0) == doctest::Approx(1000.0));
  CHECK_THROWS_AS(sieve_bound_shape(10, 10, 1.0), domain_error);
}

TEST_CASE("count_excluded_small_order: rejections and monotonicity") {
  CHECK_THROWS_AS(count_excluded_small_order({1}, 100), domain_error);
  CHECK_THROWS_AS(count_excluded_small_order({-1}, 100), domain_error);
  CHECK_THROWS_AS(count_excluded_small_order({0}, 100), domain_error);
  const OrderFilterReport one = count_excluded_small_order({2}, 1000);
  const OrderFilterReport two = count_excluded_small_order({2, 3}, 1000);
  CHECK(two.count >= one.count);
  CHECK(one.scanned > 160);  // pi(1000) = 168, minus divisors of 2
}

TEST_CASE("small-order exclusions are rare but real") {
  // ord_p(2) = 17 at the Mersenne prime 131071 = 2^17 - 1, and 17^4 < p
  const OrderFilterReport rep = count_excluded_small_order({2}, 140000);
  CHECK(rep.count >= 1);
  const OrderFilterReport small = count_excluded_small_order({2}, 10000);
  CHECK(small.count == 0);
}

TEST_CASE("sieve systems survive a serialization round trip") {
  const SieveSystem sys =
      build_sieve_system(poly({1, 0, 1}), {2, 3}, {13}, 3, 60);
  const std::string path = "roundtrip_system.json";
  recq::io::save_sieve_system(sys, path);
  const SieveSystem back = recq::io::load_sieve_system(path);
  CHECK(back.y == sys.y);
  CHECK(back.z == sys.z);
  CHECK(back.h == sys.h);
  CHECK(back.gtilde == sys.gtilde);
  CHECK(back.roots == sys.roots);
  CHECK(back.inverted_primes == sys.inverted_primes);
  REQUIRE(back.entries.size() == sys.entries.size());
  for (std::size_t i = 0; i < sys.entries.size(); ++i) {
    CHECK(back.entries[i].p == sys.entries[i].p);
    CHECK(back.entries[i].residues == sys.entries[i].residues);
  }
  REQUIRE(back.excluded.size() == sys.excluded.size());
  for (std::size_t i = 0; i < sys.excluded.size(); ++i) {
    CHECK(back.excluded[i].p == sys.excluded[i].p);
    CHECK(back.excluded[i].reason == sys.excluded[i].reason);
  }
  std::remove(path.c_str());
}

TEST_CASE("gy_from_system values") {
  const SieveSystem sys = build_sieve_system(poly({1, 0, 1}), {}, {}, 3, 40);
  const MultFnSpec gy = gy_from_system(sys);
  // #Omega_5 = 2 -> g(5) = 2/3
  CHECK(gy.at(5, 1) == mpq_class(2, 3));
  CHECK(gy.at(5, 2) == 0);
  CHECK(gy.at(7, 1) == 0);  // 7 = 3 mod 4: no roots, so no entry
  CHECK(gy.at(2, 1) == 0);  // below y
}
