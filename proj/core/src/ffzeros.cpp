#include "recq/ffzeros.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "recq/errors.hpp"
#include "recq/parallel.hpp"
#include "recq/rng.hpp"

namespace recq {

void SparseInstance::validate() const {
  if (a.empty()) throw domain_error("sparse instance: r must be >= 1");
  if (a.size() != c.size())
    throw domain_error("sparse instance: need as many coefficients as bases");
  for (const auto& e : c)
    if (field.is_zero(e)) throw domain_error("sparse instance: zero c_i");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (field.is_zero(a[i])) throw domain_error("sparse instance: zero a_i");
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] == a[j]) throw domain_error("sparse instance: repeated a_i");
  }
}

u64 sparse_zero_count(const SparseInstance& inst) {
  inst.validate();
  const u64 q = inst.field.q();
  if (q > (1ULL << 20)) throw domain_error("sparse_zero_count: cap is 2^20");
  const FiniteField& f = inst.field;
  const unsigned r = inst.r();
  // m-range partitions; each worker seeds its own power chain at a_i^start
  // by fast exponentiation and steps incrementally from there
  return parallel_chunked<u64>(
      0, q - 1, 1u << 15, u64{0},
      [&](u64 lo, u64 hi) {
        std::vector<FFElem> pw(r);
        for (unsigned i = 0; i < r; ++i) pw[i] = f.pow(inst.a[i], lo);
        u64 count = 0;
        for (u64 m = lo; m < hi; ++m) {
          FFElem sum = f.zero();
          for (unsigned i = 0; i < r; ++i)
            sum = f.add(sum, f.mul(inst.c[i], pw[i]));
          if (f.is_zero(sum)) ++count;
          if (m + 1 < hi)
            for (unsigned i = 0; i < r; ++i) pw[i] = f.mul(pw[i], inst.a[i]);
        }
        return count;
      },
      [](u64 a, u64 b) { return a + b; });
}

u64 min_ratio_order(const SparseInstance& inst) {
  inst.validate();
  if (inst.r() < 2) throw domain_error("min_ratio_order: needs r >= 2");
  const FiniteField& f = inst.field;
  u64 best = f.q();  // larger than any order
  for (std::size_t i = 0; i < inst.a.size(); ++i)
    for (std::size_t j = i + 1; j < inst.a.size(); ++j) {
      // ord(a/b) = ord(b/a)
      const FFElem ratio = f.mul(inst.a[i], f.inv(inst.a[j]));
      best = std::min(best, multiplicative_order(f, ratio));
      if (best == 1) return 1;  // cannot happen for distinct a_i, but cheap
    }
  return best;
}

double ff_bound(u64 q, u64 n_min_order, unsigned r) {
  if (r < 2) throw domain_error("ff_bound: r must be >= 2");
  if (n_min_order < 1) throw domain_error("ff_bound: N must be >= 1");
  const double expo = 1.0 / std::pow(2.0, static_cast<double>(r) - 2.0);
  return 4.0 * static_cast<double>(q - 1) *
         std::pow(static_cast<double>(n_min_order), -expo);
}

double ff_bound_weak(u64 q, u64 n_min_order, unsigned r) {
  if (r < 2) throw domain_error("ff_bound_weak: r must be >= 2");
  if (n_min_order < 1) throw domain_error("ff_bound_weak: N must be >= 1");
  const double expo = 1.0 / std::pow(2.0, static_cast<double>(r));
  return 4.0 * static_cast<double>(q - 1) *
         std::pow(static_cast<double>(n_min_order), -expo);
}

namespace {

std::string dump_instance(const SparseInstance& inst) {
  std::ostringstream os;
  os << "{p=" << inst.field.p() << ",k=" << inst.field.k() << ",c=[";
  for (std::size_t i = 0; i < inst.c.size(); ++i)
    os << (i ? "," : "") << inst.field.to_string(inst.c[i]);
  os << "],a=[";
  for (std::size_t i = 0; i < inst.a.size(); ++i)
    os << (i ? "," : "") << inst.field.to_string(inst.a[i]);
  os << "]}";
  return os.str();
}

u64 trial_seed(u64 seed, u64 trial) {
  u64 s = seed;
  (void)splitmix64(s);
  s ^= 0x5851f42d4c957f2dULL * (trial + 1);
  return splitmix64(s);
}

SparseInstance make_instance(const std::vector<u64>& primes, u64 q_max,
                             unsigned r_min, unsigned r_max, u64 seed) {
  Rng rng(seed);
  for (;;) {
    // extension degree: mostly prime fields, some cubic/quadratic
    unsigned k = 1;
    const u64 roll = rng.below(4);
    if (roll == 0) k = 2;
    if (roll == 1) k = 3;
    const double root = std::pow(static_cast<double>(q_max),
                                 1.0 / static_cast<double>(k));
    const u64 p_hi = static_cast<u64>(root);
    // smallest usable field must fit r_max distinct nonzero bases
    const auto lo_it = std::lower_bound(primes.begin(), primes.end(), 2ULL);
    const auto hi_it = std::upper_bound(primes.begin(), primes.end(), p_hi);
    if (lo_it >= hi_it) continue;
    const std::size_t span = static_cast<std::size_t>(hi_it - lo_it);
    const u64 p = *(lo_it + rng.below(span));
    u64 q = 1;
    for (unsigned i = 0; i < k; ++i) q *= p;
    if (q > q_max) continue;  // floating root overshoot guard
    const unsigned r =
        r_min + static_cast<unsigned>(rng.below(r_max - r_min + 1));
    if (q < r + 2) continue;  // need r distinct nonzero bases, q - 1 >= r + 1
    FiniteField field = FiniteField::make(p, k, seed);
    SparseInstance inst;
    inst.field = std::move(field);
    inst.c.reserve(r);
    inst.a.reserve(r);
    std::vector<u64> used;
    for (unsigned i = 0; i < r; ++i) {
      inst.c.push_back(inst.field.from_index(1 + rng.below(q - 1)));
      for (;;) {
        const u64 idx = 1 + rng.below(q - 1);
        if (std::find(used.begin(), used.end(), idx) == used.end()) {
          used.push_back(idx);
          inst.a.push_back(inst.field.from_index(idx));
          break;
        }
      }
    }
    return inst;
  }
}

}  // namespace

StressReport stress_bound(u64 q_max, unsigned r_min, unsigned r_max,
                          unsigned trials, u64 seed) {
  if (r_min < 1 || r_max < r_min)
    throw domain_error("stress_bound: invalid r range");
  if (q_max < 3 || q_max > (1ULL << 16))
    throw domain_error("stress_bound: q_max must be in [3, 2^16]");
  const PrimeTable pt = primes_up_to(q_max);

  StressReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.q_max = q_max;
  rep.r_min = r_min;
  rep.r_max = r_max;

  struct Part {
    unsigned violations = 0;
    double max_ratio = 0.0;
    std::optional<StressTrial> worst;
    std::vector<std::string> dumps;
  };
  Part all = parallel_chunked<Part>(
      0, trials, 16, Part{},
      [&](u64 t0, u64 t1) {
        Part part;
        for (u64 t = t0; t < t1; ++t) {
          const SparseInstance inst = make_instance(
              pt.primes, q_max, r_min, r_max, trial_seed(seed, t));
          const u64 count = sparse_zero_count(inst);
          StressTrial trial;
          trial.q = inst.field.q();
          trial.r = inst.r();
          trial.count = count;
          if (inst.r() >= 2) {
            trial.n_min_order = min_ratio_order(inst);
            trial.bound = ff_bound(trial.q, trial.n_min_order, trial.r);
            const double ratio = static_cast<double>(count) / trial.bound;
            if (ratio > part.max_ratio) {
              part.max_ratio = ratio;
              part.worst = trial;
            }
            if (static_cast<double>(count) > trial.bound) {
              ++part.violations;
              part.dumps.push_back(dump_instance(inst));
            }
          } else {
            trial.n_min_order = 0;
            trial.bound = 0.0;
            // a single nonzero term never vanishes
            if (count != 0) {
              ++part.violations;
              part.dumps.push_back(dump_instance(inst));
            }
          }
        }
        return part;
      },
      [](Part acc, Part part) {
        acc.violations += part.violations;
        if (part.max_ratio > acc.max_ratio) {
          acc.max_ratio = part.max_ratio;
          acc.worst = part.worst;
        }
        acc.dumps.insert(acc.dumps.end(), part.dumps.begin(),
                         part.dumps.end());
        return acc;
      });
  rep.violations = all.violations;
  rep.max_ratio = all.max_ratio;
  rep.worst = all.worst;
  rep.violation_dumps = std::move(all.dumps);
  return rep;
}

}  // namespace recq
