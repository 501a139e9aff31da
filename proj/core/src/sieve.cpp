#include "recq/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "recq/errors.hpp"
#include "recq/parallel.hpp"
#include "recq/polyzero.hpp"

namespace recq {

namespace {

u64 order_mod_p(u64 a, u64 p,
                const std::vector<std::pair<u64, unsigned>>& fac_pm1) {
  u64 t = p - 1;
  for (const auto& [ell, e] : fac_pm1) {
    (void)e;
    while (t % ell == 0 && powmod(a, t / ell, p) == 1) t /= ell;
  }
  return t;
}

bool order_below_quarter_root(u64 ord, u64 p) {
  // ord^4 < p, exactly
  if (ord >= 65536) return false;  // ord^4 >= 2^64 > p
  const u128 o4 = static_cast<u128>(ord) * ord * ord * ord;
  return o4 < p;
}

}  // namespace

std::size_t SieveSystem::total_residues() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.residues.size();
  return n;
}

std::string to_string(SieveSystem::Exclusion e) {
  switch (e) {
    case SieveSystem::Exclusion::kIdenticallyVanishing:
      return "identically-vanishing";
    case SieveSystem::Exclusion::kSmallOrder:
      return "small-order";
    case SieveSystem::Exclusion::kInS:
      return "in-S";
  }
  return "?";
}

SieveSystem build_sieve_system(const IntPolynomial& gtilde,
                               const std::vector<mpz_class>& roots,
                               const std::vector<u64>& inverted_primes,
                               u64 y, u64 z) {
  if (gtilde.degree() < 1)
    throw domain_error("build_sieve_system: gtilde must be nonconstant");
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i] == 0) throw domain_error("build_sieve_system: zero root");
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (roots[i] == roots[j] || roots[i] == -roots[j])
        throw domain_error(
            "build_sieve_system: root ratio is a root of unity (degenerate)");
    }
  }

  SieveSystem sys;
  sys.y = y;
  sys.z = z;
  sys.gtilde = gtilde.primitive_part();
  sys.roots = roots;
  sys.inverted_primes = inverted_primes;
  std::sort(sys.inverted_primes.begin(), sys.inverted_primes.end());
  sys.h = factor_over_Z(sys.gtilde).h;

  if (z <= y) return sys;  // empty window

  struct Part {
    std::vector<SieveSystem::Entry> entries;
    std::vector<SieveSystem::Excluded> excluded;
  };
  Part all = parallel_chunked<Part>(
      y + 1, z + 1, 1u << 16, Part{},
      [&](u64 a, u64 b) {
        Part part;
        for_primes_in(a, b - 1, [&](u64 p) {
          if (std::binary_search(sys.inverted_primes.begin(),
                                 sys.inverted_primes.end(), p)) {
            part.excluded.push_back({p, SieveSystem::Exclusion::kInS});
            return;
          }
          // primes dividing a root cannot host the ratio group; they join S
          for (const auto& r : sys.roots) {
            if (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
              part.excluded.push_back({p, SieveSystem::Exclusion::kInS});
              return;
            }
          }
          if (sys.roots.size() >= 2) {
            const auto fac = factorize_u64(p - 1);
            u64 min_ord = p;  // larger than any order
            for (std::size_t i = 0; i < sys.roots.size() && min_ord > 1; ++i) {
              const u64 ai = mpz_fdiv_ui(sys.roots[i].get_mpz_t(), p);
              for (std::size_t j = i + 1; j < sys.roots.size(); ++j) {
                const u64 aj = mpz_fdiv_ui(sys.roots[j].get_mpz_t(), p);
                // ord(a/b) = ord(b/a); one direction suffices
                const u64 ratio = mulmod(ai, invmod(aj, p), p);
                const u64 ord = ratio == 1 ? 1 : order_mod_p(ratio, p, fac);
                min_ord = std::min(min_ord, ord);
                if (min_ord == 1) break;
              }
            }
            if (order_below_quarter_root(min_ord, p)) {
              part.excluded.push_back({p, SieveSystem::Exclusion::kSmallOrder});
              return;
            }
          }
          auto res = roots_mod_p(sys.gtilde, p);
          if (!res || res->size() == p) {
            part.excluded.push_back(
                {p, SieveSystem::Exclusion::kIdenticallyVanishing});
            return;
          }
          if (res->empty()) return;  // Omega_p empty: no constraint, skip
          part.entries.push_back({p, std::move(*res)});
        });
        return part;
      },
      [](Part acc, Part part) {
        acc.entries.insert(acc.entries.end(),
                           std::make_move_iterator(part.entries.begin()),
                           std::make_move_iterator(part.entries.end()));
        acc.excluded.insert(acc.excluded.end(), part.excluded.begin(),
                            part.excluded.end());
        return acc;
      });
  sys.entries = std::move(all.entries);
  sys.excluded = std::move(all.excluded);
  return sys;
}

u64 sieved_count(u64 x, const SieveSystem& system) {
  if (x > 100000000ULL) throw domain_error("sieved_count: cap is 1e8");
  if (x == 0) return 0;
  // partition [1, x] into ranges; each worker marks all residues in its
  // range, so no write overlaps
  struct Count {
    u64 survivors = 0;
  };
  Count total = parallel_chunked<Count>(
      1, x + 1, 1u << 22, Count{},
      [&](u64 a, u64 b) {
        const u64 len = b - a;
        std::vector<bool> hit(len, false);
        for (const auto& e : system.entries) {
          for (u64 r : e.residues) {
            // first n >= a with n = r (mod p)
            u64 start = a + ((r + e.p - a % e.p) % e.p);
            for (u64 n = start; n < b; n += e.p) hit[n - a] = true;
          }
        }
        Count c;
        for (u64 i = 0; i < len; ++i)
          if (!hit[i]) ++c.survivors;
        return c;
      },
      [](Count acc, Count part) {
        acc.survivors += part.survivors;
        return acc;
      });
  return total.survivors;
}

double sieve_bound_shape(u64 x, u64 y, double h) {
  if (y < 2 || x <= y) throw domain_error("sieve_bound_shape: need x > y >= 2");
  return static_cast<double>(x) *
         std::pow(std::log((double)y) / std::log((double)x), h);
}

OrderFilterReport count_excluded_small_order(
    const std::vector<mpz_class>& betas, u64 x) {
  if (betas.empty())
    throw domain_error("count_excluded_small_order: no betas");
  for (const auto& b : betas) {
    if (b == 0 || b == 1 || b == -1)
      throw domain_error(
          "count_excluded_small_order: beta must be neither zero nor a root "
          "of unity");
  }
  struct Acc {
    u64 count = 0;
    u64 scanned = 0;
  };
  Acc acc = parallel_chunked<Acc>(
      2, x + 1, 1u << 16, Acc{},
      [&](u64 a, u64 b) {
        Acc part;
        for_primes_in(a, b - 1, [&](u64 p) {
          std::vector<u64> reduced;
          reduced.reserve(betas.size());
          for (const auto& beta : betas) {
            const u64 r = mpz_fdiv_ui(beta.get_mpz_t(), p);
            if (r == 0) return;  // p divides beta: no order defined
            reduced.push_back(r);
          }
          ++part.scanned;
          const auto fac = factorize_u64(p - 1);
          for (u64 r : reduced) {
            const u64 ord = r == 1 ? 1 : order_mod_p(r, p, fac);
            if (order_below_quarter_root(ord, p)) {
              ++part.count;
              break;
            }
          }
        });
        return part;
      },
      [](Acc a, Acc b) {
        a.count += b.count;
        a.scanned += b.scanned;
        return a;
      });
  OrderFilterReport rep;
  rep.x = x;
  rep.count = acc.count;
  rep.scanned = acc.scanned;
  rep.ratio = static_cast<double>(acc.count) /
              std::sqrt(static_cast<double>(x));
  return rep;
}

MultFnSpec gy_from_system(const SieveSystem& system) {
  auto sizes = std::make_shared<std::map<u64, u32>>();
  for (const auto& e : system.entries)
    (*sizes)[e.p] = static_cast<u32>(e.residues.size());
  return MultFnSpec::omega_table(std::move(sizes),
                                 static_cast<double>(system.y),
                                 static_cast<double>(system.h));
}

double omega_logp_sum(const SieveSystem& system, u64 t) {
  KahanSum s;
  for (const auto& e : system.entries) {
    if (e.p > t) break;
    s.add(static_cast<double>(e.residues.size()) *
          std::log(static_cast<double>(e.p)) / static_cast<double>(e.p));
  }
  return s.sum;
}

}  // namespace recq
