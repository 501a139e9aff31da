#include <doctest.h>

#include <cmath>

#include "recq/errors.hpp"
#include "recq/ffzeros.hpp"
#include "recq/parallel.hpp"
#include "recq/rng.hpp"

using namespace recq;

namespace {

SparseInstance make(const FiniteField& f, std::vector<u64> cs,
                    std::vector<u64> as) {
  SparseInstance inst;
  inst.field = f;
  for (u64 c : cs) inst.c.push_back(f.from_int(c));
  for (u64 a : as) inst.a.push_back(f.from_int(a));
  return inst;
}

// independent oracle: evaluate the sum at each m with a fresh power chain
u64 brute_count(const SparseInstance& inst) {
  const FiniteField& f = inst.field;
  u64 count = 0;
  for (u64 m = 0; m + 2 <= f.q(); ++m) {
    FFElem sum = f.zero();
    for (unsigned i = 0; i < inst.r(); ++i)
      sum = f.add(sum, f.mul(inst.c[i], f.pow(inst.a[i], m)));
    if (f.is_zero(sum)) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("single term never vanishes") {
  const FiniteField f7 = FiniteField::make(7, 1);
  CHECK(sparse_zero_count(make(f7, {3}, {5})) == 0);
}

TEST_CASE("known small instances") {
  const FiniteField f7 = FiniteField::make(7, 1);
  CHECK(sparse_zero_count(make(f7, {1, 6}, {3, 2})) == 1);  // only m = 0
  const FiniteField f5 = FiniteField::make(5, 1);
  CHECK(sparse_zero_count(make(f5, {1, 1}, {1, 4})) == 2);  // m = 1, 3
}

TEST_CASE("incremental chains match the independent power-chain oracle") {
  Rng rng(17);
  const FiniteField f = FiniteField::make(241, 1);
  const FiniteField f8 = FiniteField::make(2, 3, 5);
  for (int trial = 0; trial < 25; ++trial) {
    const FiniteField& fld = trial % 2 ? f8 : f;
    SparseInstance inst;
    inst.field = fld;
    const unsigned r = 2 + (unsigned)rng.below(3);
    std::vector<u64> used;
    for (unsigned i = 0; i < r; ++i) {
      inst.c.push_back(fld.from_index(1 + rng.below(fld.q() - 1)));
      for (;;) {
        const u64 idx = 1 + rng.below(fld.q() - 1);
        if (std::find(used.begin(), used.end(), idx) == used.end()) {
          used.push_back(idx);
          inst.a.push_back(fld.from_index(idx));
          break;
        }
      }
    }
    CHECK(sparse_zero_count(inst) == brute_count(inst));
  }
}

TEST_CASE("extension field with a known zero structure") {
  // F_8 with modulus X^3 + X + 1; c = (1, 1), a = (X, X^2): the sum dies
  // exactly when (a_2/a_1)^m = 1, and every non-identity element has
  // order 7, so only m = 0
  const FiniteField f8 = FiniteField::with_modulus(2, {1, 1, 0, 1});
  SparseInstance inst;
  inst.field = f8;
  inst.c = {f8.from_int(1), f8.from_int(1)};
  inst.a = {f8.element({0, 1, 0}), f8.element({0, 0, 1})};
  CHECK(sparse_zero_count(inst) == 1);
  CHECK(min_ratio_order(inst) == 7);
}

TEST_CASE("min_ratio_order examples") {
  const FiniteField f7 = FiniteField::make(7, 1);
  CHECK(min_ratio_order(make(f7, {1, 1}, {3, 2})) == 6);  // ord(5) = 6
  const FiniteField f5 = FiniteField::make(5, 1);
  CHECK(min_ratio_order(make(f5, {1, 1}, {1, 4})) == 2);
  // ratio a generator: N = q - 1
  CHECK(min_ratio_order(make(f7, {1, 1}, {2, 6})) == 6);  // 2/6 = 2*6^-1 = 5
  CHECK_THROWS_AS(min_ratio_order(make(f7, {1}, {3})), domain_error);
}

TEST_CASE("ff_bound arithmetic") {
  CHECK(ff_bound(7, 6, 2) == doctest::Approx(4.0));
  CHECK(ff_bound(5, 2, 2) == doctest::Approx(8.0));
  CHECK(ff_bound(100, 16, 3) == doctest::Approx(4.0 * 99 / 4.0));
  CHECK(ff_bound_weak(100, 16, 2) ==
        doctest::Approx(4.0 * 99 * std::pow(16.0, -0.25)));
  CHECK_THROWS_AS(ff_bound(7, 6, 1), domain_error);
}

TEST_CASE("count is invariant under scaling all coefficients") {
  const FiniteField f = FiniteField::make(31, 1);
  const SparseInstance base = make(f, {1, 7, 3}, {2, 5, 11});
  const u64 expect = sparse_zero_count(base);
  for (u64 lambda : {2ULL, 9ULL, 30ULL}) {
    SparseInstance scaled = base;
    for (auto& c : scaled.c) c = f.mul(c, f.from_int(lambda));
    CHECK(sparse_zero_count(scaled) == expect);
  }
}

TEST_CASE("count is invariant under a_i -> a_i^k for gcd(k, q-1) = 1") {
  const FiniteField f = FiniteField::make(31, 1);
  const SparseInstance base = make(f, {1, 7, 3}, {2, 5, 11});
  const u64 expect = sparse_zero_count(base);
  for (u64 k : {7ULL, 11ULL, 29ULL}) {  // coprime with 30
    REQUIRE(gcd_u64(k, 30) == 1);
    SparseInstance subbed = base;
    for (auto& a : subbed.a) a = f.pow(a, k);
    CHECK(sparse_zero_count(subbed) == expect);
  }
}

TEST_CASE("bound holds on every generated instance") {
  const StressReport rep = stress_bound(1024, 2, 4, 200, 99);
  CHECK(rep.violations == 0);
  CHECK(rep.violation_dumps.empty());
  CHECK(rep.max_ratio <= 1.0);
  REQUIRE(rep.worst.has_value());
  CHECK(rep.worst->bound > 0.0);
}

TEST_CASE("stress reports replay byte-identically across worker counts") {
  set_worker_count(1);
  const StressReport a = stress_bound(512, 2, 3, 120, 7);
  set_worker_count(4);
  const StressReport b = stress_bound(512, 2, 3, 120, 7);
  set_worker_count(0);
  CHECK(a.violations == b.violations);
  CHECK(a.max_ratio == b.max_ratio);
  REQUIRE(a.worst.has_value());
  REQUIRE(b.worst.has_value());
  CHECK(a.worst->q == b.worst->q);
  CHECK(a.worst->count == b.worst->count);
  CHECK(a.worst->n_min_order == b.worst->n_min_order);
}

TEST_CASE("validation rejects malformed instances") {
  const FiniteField f7 = FiniteField::make(7, 1);
  SparseInstance zero_c = make(f7, {0, 1}, {2, 3});
  CHECK_THROWS_AS(sparse_zero_count(zero_c), domain_error);
  SparseInstance dup_a = make(f7, {1, 1}, {2, 2});
  CHECK_THROWS_AS(sparse_zero_count(dup_a), domain_error);
  SparseInstance big;
  CHECK_THROWS_AS(stress_bound(1ULL << 20, 2, 4, 10, 1), domain_error);
}
