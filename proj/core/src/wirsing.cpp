#include "recq/wirsing.hpp"

#include <algorithm>
#include <cmath>

#include "recq/errors.hpp"
#include "recq/parallel.hpp"

namespace recq {

MultFnSpec MultFnSpec::one_only() {
  MultFnSpec g;
  g.kind_ = Kind::kOneOnly;
  g.h_ = 0.0;
  g.decay_ = 0.0;
  g.name_ = "one_only";
  return g;
}

MultFnSpec MultFnSpec::mu2_over_n() {
  MultFnSpec g;
  g.kind_ = Kind::kMu2OverN;
  g.h_ = 1.0;
  g.decay_ = 0.0;  // g(p) = h/p exactly
  g.name_ = "mu2_over_n";
  return g;
}

MultFnSpec MultFnSpec::k_over_p(unsigned k) {
  MultFnSpec g;
  g.kind_ = Kind::kKOverP;
  g.k_ = k;
  g.h_ = static_cast<double>(k);
  g.decay_ = 0.0;
  g.name_ = "k_over_p:" + std::to_string(k);
  return g;
}

MultFnSpec MultFnSpec::omega_table(
    std::shared_ptr<const std::map<u64, u32>> sizes, double y, double h) {
  MultFnSpec g;
  g.kind_ = Kind::kOmegaTable;
  g.omega_ = std::move(sizes);
  g.y_ = y;
  g.h_ = h;
  g.l_ = std::log(std::max(2.0, y));
  g.name_ = "omega_system";
  return g;
}

mpq_class MultFnSpec::at(u64 p, unsigned s) const {
  if (s == 0) return 1;
  switch (kind_) {
    case Kind::kOneOnly:
      return 0;
    case Kind::kMu2OverN:
      return s == 1 ? mpq_class(1, p) : mpq_class(0);
    case Kind::kKOverP:
      return s == 1 ? mpq_class(k_, p) : mpq_class(0);
    case Kind::kOmegaTable: {
      if (s != 1) return 0;
      const auto it = omega_->find(p);
      if (it == omega_->end()) return 0;
      const u32 w = it->second;
      return mpq_class(w, p - w);
    }
  }
  return 0;
}

double MultFnSpec::at_d(u64 p, unsigned s) const {
  if (s == 0) return 1.0;
  switch (kind_) {
    case Kind::kOneOnly:
      return 0.0;
    case Kind::kMu2OverN:
      return s == 1 ? 1.0 / static_cast<double>(p) : 0.0;
    case Kind::kKOverP:
      return s == 1 ? static_cast<double>(k_) / static_cast<double>(p) : 0.0;
    case Kind::kOmegaTable: {
      if (s != 1) return 0.0;
      const auto it = omega_->find(p);
      if (it == omega_->end()) return 0.0;
      return static_cast<double>(it->second) /
             static_cast<double>(p - it->second);
    }
  }
  return 0.0;
}

double VonMangoldtTable::at(u64 n) const {
  const auto it = std::lower_bound(
      entries.begin(), entries.end(), n,
      [](const auto& e, u64 v) { return e.first < v; });
  if (it == entries.end() || it->first != n) return 0.0;
  return it->second;
}

VonMangoldtTable lambda_g(const MultFnSpec& g, u64 x) {
  if (x < 1) throw domain_error("lambda_g: x must be >= 1");
  if (x > 10000000ULL) throw domain_error("lambda_g: cap is 1e7");
  VonMangoldtTable table;
  table.x = x;
  if (x < 2) return table;
  const PrimeTable pt = primes_up_to(x);
  for (u64 p : pt.primes) {
    const double logp = std::log(static_cast<double>(p));
    // lam[s] for p^s <= x
    std::vector<double> lam;
    std::vector<double> gval = {1.0};
    u128 pk = 1;
    for (unsigned s = 1;; ++s) {
      pk *= p;
      if (pk > x) break;
      gval.push_back(g.at_d(p, s));
      double v = gval[s] * s * logp;
      for (unsigned t = 1; t < s; ++t) v -= gval[s - t] * lam[t - 1];
      lam.push_back(v);
      table.entries.emplace_back(static_cast<u64>(pk), v);
    }
  }
  std::sort(table.entries.begin(), table.entries.end());
  return table;
}

WirsingSumReport wirsing_sum(const MultFnSpec& g, u64 x) {
  if (x < 1) throw domain_error("wirsing_sum: x must be >= 1");
  if (x > 10000000ULL) throw domain_error("wirsing_sum: cap is 1e7");
  // smallest prime factor table
  std::vector<u32> spf(x + 1, 0);
  for (u64 i = 2; i <= x; ++i) {
    if (spf[i] != 0) continue;
    for (u64 j = i; j <= x; j += i)
      if (spf[j] == 0) spf[j] = static_cast<u32>(i);
  }
  KahanSum sum = parallel_chunked<KahanSum>(
      2, x + 1, 1u << 16, KahanSum{},
      [&](u64 a, u64 b) {
        KahanSum acc;
        for (u64 n = a; n < b; ++n) {
          u64 m = n;
          double val = 1.0;
          while (m > 1) {
            const u64 p = spf[m];
            unsigned s = 0;
            while (m % p == 0) {
              m /= p;
              ++s;
            }
            val *= g.at_d(p, s);
            if (val == 0.0) break;
          }
          if (val != 0.0) acc.add(val);
        }
        return acc;
      },
      [](KahanSum a, KahanSum b) {
        a.merge(b);
        return a;
      });
  WirsingSumReport rep;
  rep.x = x;
  rep.sum = 1.0 + sum.sum;  // n = 1 contributes g(1) = 1
  rep.log_x = std::log(static_cast<double>(x));
  rep.ratio = rep.sum / std::pow(rep.log_x, g.declared_h());
  return rep;
}

EulerProductReport euler_constant_cg(const MultFnSpec& g, double h, u64 p0) {
  if (p0 < 2) throw domain_error("euler_constant_cg: truncation must be >= 2");
  if (p0 > 10000000ULL) throw domain_error("euler_constant_cg: cap is 1e7");
  // log-space accumulation of log[(1 + sum_s g(p^s)) (1 - 1/p)^h]
  KahanSum logsum = parallel_chunked<KahanSum>(
      2, p0 + 1, 1u << 16, KahanSum{},
      [&](u64 a, u64 b) {
        KahanSum acc;
        for_primes_in(a, b - 1, [&](u64 p) {
          double series = 1.0;
          double prev = 1.0;
          for (unsigned s = 1;; ++s) {
            const double term = g.at_d(p, s);
            if (term == 0.0) {
              // multiplicative specs here have finite or geometric support;
              // a zero value ends the series for all catalog kinds
              break;
            }
            if (s > 2 && std::abs(term) > 0.75 * std::abs(prev))
              throw domain_error(
                  "euler_constant_cg: per-prime series not converging at p=" +
                  std::to_string(p));
            series += term;
            prev = term;
            if (s > 200)
              throw domain_error(
                  "euler_constant_cg: series too long at p=" +
                  std::to_string(p));
          }
          if (series <= 0.0)
            throw domain_error(
                "euler_constant_cg: nonpositive factor at p=" +
                std::to_string(p));
          acc.add(std::log(series) +
                  h * std::log1p(-1.0 / static_cast<double>(p)));
        });
        return acc;
      },
      [](KahanSum a, KahanSum b) {
        a.merge(b);
        return a;
      });
  EulerProductReport rep;
  rep.p0 = p0;
  rep.value = std::exp(logsum.sum) / std::tgamma(h + 1.0);
  if (auto d = g.decay_constant()) {
    // |log factor_p| <= (D + h^2 + h + 1) / p^2 for p > p0, and
    // sum_{p > p0} p^-2 < 1/p0
    rep.tail_rel_bound = (*d + h * h + h + 1.0) / static_cast<double>(p0);
  }
  return rep;
}

}  // namespace recq
