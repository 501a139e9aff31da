#include "recq/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "recq/errors.hpp"
#include "recq/parallel.hpp"
#include "recq/polyzero.hpp"
#include "recq/rng.hpp"

namespace recq {

namespace {

IntPolynomial common_factor(const IntPolynomial& g,
                            const ExpPolyRecurrence& f) {
  IntPolynomial d = g.primitive_part();
  for (const auto& t : f.terms) {
    d = poly_gcd(d, t.poly);
    if (d.degree() < 1) break;
  }
  return d;
}

unsigned factor_count(const IntPolynomial& g) {
  if (g.degree() < 1) return 0;
  return factor_over_Z(g).h;
}

mpz_class strip_s(mpz_class v, const std::vector<u64>& s_primes) {
  if (v < 0) v = -v;
  for (u64 p : s_primes) {
    while (v > 1 && mpz_divisible_ui_p(v.get_mpz_t(), p))
      mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
  }
  return v;
}

}  // namespace

QuotientProblem QuotientProblem::from_companion(
    CompanionRecurrence f, IntPolynomial g, std::vector<u64> inverted_primes) {
  f.validate();
  if (g.is_zero()) throw domain_error("quotient: G must be nonzero");
  QuotientProblem p;
  p.companion_ = std::move(f);
  p.g_original_ = g;
  p.g_ = std::move(g);
  p.inverted_primes_ = std::move(inverted_primes);
  std::sort(p.inverted_primes_.begin(), p.inverted_primes_.end());
  p.constant_g_ = p.g_.degree() < 1;
  p.h_ = factor_count(p.g_);
  p.h_caveat_ = true;  // no exppoly form: gcd-normalization skipped
  return p;
}

QuotientProblem QuotientProblem::from_exppoly(
    ExpPolyRecurrence f, IntPolynomial g, std::vector<u64> inverted_primes) {
  f.validate();
  if (g.is_zero()) throw domain_error("quotient: G must be nonzero");
  QuotientProblem p;
  p.g_original_ = g;
  p.inverted_primes_ = std::move(inverted_primes);
  std::sort(p.inverted_primes_.begin(), p.inverted_primes_.end());

  const IntPolynomial d = common_factor(g, f);
  if (d.degree() >= 1) {
    p.gcd_normalized_ = true;
    g = g.divide_exact(d);
    for (auto& t : f.terms) t.poly = t.poly.divide_exact(d);
  }
  p.g_ = std::move(g);
  p.constant_g_ = p.g_.degree() < 1;
  p.h_ = factor_count(p.g_);

  p.degenerate_ = !is_nondegenerate(f).nondegenerate;
  p.torsion_ = has_torsion_flag(f);
  p.companion_ = expand_to_companion(f);
  p.exppoly_ = std::move(f);
  return p;
}

unsigned QuotientProblem::r() const {
  if (!exppoly_)
    throw domain_error("quotient: r undefined without an exppoly form");
  return exppoly_->term_count();
}

void QuotientProblem::require_usable() const {
  if (degenerate_ || torsion_)
    throw domain_error(
        "quotient: the root group is degenerate or has torsion; partition N "
        "into arithmetic progressions mod the torsion order and rerun each "
        "progression separately");
}

bool membership(const QuotientProblem& prob, u64 n) {
  prob.require_usable();
  if (n < 1) throw domain_error("membership: n must be >= 1");
  const mpz_class nz(static_cast<unsigned long>(n));
  if (prob.gcd_normalized() && prob.g_original().eval(nz) == 0) return false;
  const mpz_class gval = prob.g().eval(nz);
  if (gval == 0) return false;
  const mpz_class d = strip_s(gval, prob.inverted_primes());
  if (d == 1) return true;
  // word-size prime-power checks decide divisibility exactly (CRT); the
  // exact value of F(n) is only needed when a factor exceeds the word or
  // d itself is beyond the factorization cap
  bool need_exact = false;
  mpz_class cap = 1;
  cap <<= 128;
  if (d < cap) {
    const Factorization fac = factorize(d);
    for (const auto& [p, e] : fac.factors) {
      mpz_class pe;
      mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
      if (!pe.fits_ulong_p() || pe.get_ui() >= (1ULL << 62)) {
        need_exact = true;
        continue;
      }
      if (eval_mod(prob.companion(), n, pe.get_ui()) != 0) return false;
    }
  } else {
    need_exact = true;
  }
  if (!need_exact) return true;
  const mpz_class f = eval_exact(prob.companion(), n);
  return mpz_divisible_p(f.get_mpz_t(), d.get_mpz_t());
}

namespace {

double bound_shape(u64 x, unsigned h) {
  const double lx = std::log(static_cast<double>(x));
  if (lx <= 1.0) return static_cast<double>(x);
  return static_cast<double>(x) *
         std::pow(std::log(lx) / lx, static_cast<double>(h));
}

void finalize_report(CountReport& rep, std::vector<u64> members, u64 x,
                     const QuotientProblem& prob, std::size_t retain_cap,
                     const char* mode) {
  rep.x = x;
  rep.count = members.size();
  rep.h = prob.h();
  rep.h_caveat = prob.h_caveat();
  rep.bound_shape = bound_shape(x, prob.h());
  rep.fitted_constant =
      rep.bound_shape > 0.0 ? static_cast<double>(rep.count) / rep.bound_shape
                            : 0.0;
  rep.mode = mode;
  if (members.size() <= retain_cap) {
    rep.members = std::move(members);
    rep.members_complete = true;
    return;
  }
  // reservoir sample (algorithm R, fixed seed): counts stay exact, the
  // report stays bounded
  rep.members_complete = false;
  Rng rng(1);
  std::vector<u64> sample(members.begin(),
                          members.begin() + static_cast<long>(retain_cap));
  for (std::size_t i = retain_cap; i < members.size(); ++i) {
    const u64 j = rng.below(i + 1);
    if (j < retain_cap) sample[static_cast<std::size_t>(j)] = members[i];
  }
  std::sort(sample.begin(), sample.end());
  rep.members = std::move(sample);
}

CountReport count_exact(const QuotientProblem& prob, u64 x,
                        std::size_t retain_cap) {
  if (x > 1000000ULL) throw domain_error("count_N: exact-mode cap is 1e6");
  std::vector<u64> members;
  CompanionIterator it(prob.companion());
  it.advance();  // position at n = 1
  const bool check_orig = prob.gcd_normalized();
  for (u64 n = 1; n <= x; ++n) {
    const mpz_class nz(static_cast<unsigned long>(n));
    const mpz_class gval = prob.g().eval(nz);
    bool ok = gval != 0;
    if (ok && check_orig && prob.g_original().eval(nz) == 0) ok = false;
    if (ok) {
      const mpz_class d = strip_s(gval, prob.inverted_primes());
      if (d != 1 && !mpz_divisible_p(it.value().get_mpz_t(), d.get_mpz_t()))
        ok = false;
    }
    if (ok) members.push_back(n);
    it.advance();
  }
  CountReport rep;
  finalize_report(rep, std::move(members), x, prob, retain_cap, "exact");
  return rep;
}

struct PeriodTable {
  u64 p;
  u64 period;
  std::vector<bool> zero;  // zero[j] = (F(j) mod p == 0), j < period
};

std::vector<PeriodTable> build_period_tables(const CompanionRecurrence& rec,
                                             const std::vector<u64>& s_primes,
                                             u64 pcap) {
  std::vector<PeriodTable> out;
  for (u64 p = 2; p <= pcap; ++p) {
    if (!is_prime_u64(p)) continue;
    if (std::binary_search(s_primes.begin(), s_primes.end(), p)) continue;
    if (gcd_u64(mpz_fdiv_ui(rec.coeffs[0].get_mpz_t(), p), p) != 1) continue;
    u64 period;
    try {
      period = period_mod(rec, p, 10000000ULL);
    } catch (const resource_error&) {
      continue;  // no table; the confirm stage still checks p exactly
    }
    PeriodTable t;
    t.p = p;
    t.period = period;
    t.zero.resize(period);
    // iterate the sequence mod p over one period
    const unsigned k = rec.order();
    std::vector<u64> st(k), cm(k);
    for (unsigned i = 0; i < k; ++i)
      st[i] = mpz_fdiv_ui(rec.init[i].get_mpz_t(), p);
    for (unsigned i = 0; i < k; ++i)
      cm[i] = mpz_fdiv_ui(rec.coeffs[i].get_mpz_t(), p);
    for (u64 j = 0; j < period; ++j) {
      t.zero[j] = (st[0] == 0);
      u64 next = 0;
      for (unsigned l = 0; l < k; ++l)
        next = (next + static_cast<u128>(cm[l]) * st[l]) % p;
      for (unsigned l = 0; l + 1 < k; ++l) st[l] = st[l + 1];
      st[k - 1] = next;
    }
    out.push_back(std::move(t));
  }
  return out;
}

CountReport count_modular(const QuotientProblem& prob, u64 x,
                          std::size_t retain_cap) {
  if (!(prob.g() == IntPolynomial::x()) ||
      !(prob.g_original() == IntPolynomial::x()))
    throw domain_error("count_N: modular-filter mode requires G = X");
  if (x > 100000000ULL)
    throw domain_error("count_N: modular-filter cap is 1e8");
  const CompanionRecurrence& rec = prob.companion();
  const std::vector<u64>& s_primes = prob.inverted_primes();
  const std::vector<PeriodTable> tables =
      build_period_tables(rec, s_primes, 64);
  const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(x))) + 1;
  const PrimeTable base = primes_up_to(std::max<u64>(root, 2));

  struct Part {
    std::vector<u64> members;
  };
  Part all = parallel_chunked<Part>(
      1, x + 1, 1u << 21, Part{},
      [&](u64 lo, u64 hi) {
        const u64 len = hi - lo;
        std::vector<u64> rem(len);
        std::vector<bool> alive(len, true);
        for (u64 i = 0; i < len; ++i) rem[i] = lo + i;
        // stage 1: periodic zero tables kill most composites cheaply
        for (const auto& t : tables) {
          u64 start = lo + ((t.p - lo % t.p) % t.p);
          for (u64 n = start; n < hi; n += t.p)
            if (!t.zero[n % t.period]) alive[n - lo] = false;
        }
        // stage 2: per prime-power confirmation, exact by CRT. Primes up to
        // sqrt(hi) are divided out; at most one larger prime can remain per
        // n, handled by the leftover pass.
        for (u64 p : base.primes) {
          if (p * p >= hi) break;
          const bool in_s =
              std::binary_search(s_primes.begin(), s_primes.end(), p);
          const bool has_table =
              std::any_of(tables.begin(), tables.end(),
                          [p](const PeriodTable& t) { return t.p == p; });
          const u64 start = lo + ((p - lo % p) % p);
          for (u64 n = start; n < hi; n += p) {
            const u64 i = n - lo;
            if (!alive[i]) continue;
            u64 q = 1;
            unsigned e = 0;
            while (rem[i] % p == 0) {
              rem[i] /= p;
              q *= p;
              ++e;
            }
            if (in_s || e == 0) continue;
            if (e == 1 && has_table) continue;  // certified by stage 1
            if (eval_mod(rec, n, q) != 0) alive[i] = false;
          }
        }
        Part part;
        for (u64 i = 0; i < len; ++i) {
          if (!alive[i]) continue;
          const u64 n = lo + i;
          u64 leftover = rem[i];
          if (leftover > 1) {
            if (!std::binary_search(s_primes.begin(), s_primes.end(),
                                    leftover) &&
                eval_mod(rec, n, leftover) != 0)
              continue;
          }
          part.members.push_back(n);
        }
        return part;
      },
      [](Part acc, Part part) {
        acc.members.insert(acc.members.end(), part.members.begin(),
                           part.members.end());
        return acc;
      });
  CountReport rep;
  finalize_report(rep, std::move(all.members), x, prob, retain_cap,
                  "modular-filter");
  return rep;
}

}  // namespace

CountReport count_N(const QuotientProblem& prob, u64 x, CountMode mode,
                    std::size_t retain_cap) {
  prob.require_usable();
  if (x < 1) throw domain_error("count_N: x must be >= 1");
  if (mode == CountMode::kExact) return count_exact(prob, x, retain_cap);
  return count_modular(prob, x, retain_cap);
}

SplitReport split_diagnostic(const QuotientProblem& prob, u64 x,
                             std::optional<std::pair<u64, u64>> override_yz) {
  prob.require_usable();
  const unsigned r = prob.r();  // throws without an exppoly form
  const unsigned h = prob.h();
  SplitReport rep;
  rep.x = x;
  rep.r = r;
  rep.h = h;
  rep.exponent = 1.0 + 1.0 / std::pow(2.0, static_cast<double>(r));
  if (override_yz) {
    rep.y = override_yz->first;
    rep.z = override_yz->second;
    rep.defaults_used = false;
    rep.regime_override = true;
  } else {
    const double lx = std::log(static_cast<double>(x));
    const double ydbl =
        std::pow(lx, std::pow(2.0, static_cast<double>(r)) * h);
    const u64 z = static_cast<u64>(std::sqrt(static_cast<double>(x)));
    if (!(ydbl < static_cast<double>(z)))
      throw regime_error(
          "split: asymptotic regime unreachable at this scale (y = (log x)^"
          "(2^r h) >= z = x^(1/2)); pass an explicit (y, z) window");
    rep.y = static_cast<u64>(ydbl);
    rep.z = z;
  }

  CountReport count = count_N(prob, x, CountMode::kExact,
                              static_cast<std::size_t>(x) + 1);
  rep.total = count.count;

  SieveSystem sys;
  if (rep.y < rep.z) {
    std::vector<mpz_class> roots;
    for (const auto& t : prob.exppoly()->terms) roots.push_back(t.root);
    sys = build_sieve_system(prob.g(), roots, prob.inverted_primes(), rep.y,
                             rep.z);
  } else {
    sys.y = rep.y;
    sys.z = rep.z;
  }

  std::map<u64, u64> hist;
  for (u64 n : count.members) {
    bool hit = false;
    for (const auto& e : sys.entries) {
      if (std::binary_search(e.residues.begin(), e.residues.end(), n % e.p)) {
        ++hist[e.p];
        hit = true;
      }
    }
    if (hit) ++rep.n2;
  }
  rep.n1 = rep.total - rep.n2;
  rep.histogram.assign(hist.begin(), hist.end());
  for (const auto& [p, hits] : rep.histogram) {
    const double shape = static_cast<double>(x) /
                         std::pow(static_cast<double>(p), rep.exponent);
    if (shape > 0.0)
      rep.fitted_c = std::max(rep.fitted_c,
                              static_cast<double>(hits) / shape);
  }
  return rep;
}

AdmissibleResult admissible(const std::vector<u64>& tuple) {
  if (tuple.empty()) throw domain_error("admissible: empty tuple");
  for (std::size_t i = 1; i < tuple.size(); ++i)
    if (tuple[i] <= tuple[i - 1])
      throw domain_error("admissible: tuple must be strictly increasing");
  const u64 len = tuple.size();
  for (u64 p = 2; p <= len; ++p) {
    if (!is_prime_u64(p)) continue;
    std::vector<bool> res(p, false);
    for (u64 t : tuple) res[t % p] = true;
    if (std::all_of(res.begin(), res.end(), [](bool b) { return b; }))
      return {false, p};
  }
  return {true, std::nullopt};
}

u64 hl_count(const std::vector<u64>& tuple, u64 x) {
  if (tuple.empty()) throw domain_error("hl_count: empty tuple");
  const u64 max_off = tuple.back();
  if (x + max_off > 1000000000ULL)
    throw domain_error("hl_count: sieve limit is 1e9");
  const u64 hi_needed = x + max_off;
  const u64 root =
      static_cast<u64>(std::sqrt(static_cast<double>(hi_needed))) + 1;
  const PrimeTable base = primes_up_to(std::max<u64>(root, 2));

  struct Cnt {
    u64 count = 0;
  };
  Cnt total = parallel_chunked<Cnt>(
      1, x + 1, 1u << 22, Cnt{},
      [&](u64 lo, u64 hi) {
        // primality window [lo, hi - 1 + max_off]
        const u64 wlo = lo;
        const u64 whi = hi - 1 + max_off;
        std::vector<bool> comp(whi - wlo + 1, false);
        for (u64 p : base.primes) {
          if (p * p > whi) break;
          u64 start = std::max(p * p, ((wlo + p - 1) / p) * p);
          for (u64 m = start; m <= whi; m += p) comp[m - wlo] = true;
        }
        auto is_p = [&](u64 v) { return v >= 2 && !comp[v - wlo]; };
        Cnt c;
        for (u64 n = lo; n < hi; ++n) {
          bool all = true;
          for (u64 t : tuple)
            if (!is_p(n + t)) {
              all = false;
              break;
            }
          if (all) ++c.count;
        }
        return c;
      },
      [](Cnt a, Cnt b) {
        a.count += b.count;
        return a;
      });
  return total.count;
}

SingularSeriesReport singular_series(const std::vector<u64>& tuple, u64 p0) {
  const AdmissibleResult adm = admissible(tuple);
  if (!adm.admissible)
    throw domain_error("singular_series: inadmissible tuple (witness p = " +
                       std::to_string(*adm.witness) + ")");
  if (p0 < 2 || p0 > 10000000ULL)
    throw domain_error("singular_series: truncation must be in [2, 1e7]");
  const double h = static_cast<double>(tuple.size());
  const u64 max_off = tuple.back();
  KahanSum logsum = parallel_chunked<KahanSum>(
      2, p0 + 1, 1u << 16, KahanSum{},
      [&](u64 a, u64 b) {
        KahanSum acc;
        for_primes_in(a, b - 1, [&](u64 p) {
          u64 w;
          if (p > max_off) {
            w = tuple.size();  // offsets already distinct mod p
          } else {
            std::vector<bool> res(p, false);
            for (u64 t : tuple) res[t % p] = true;
            w = static_cast<u64>(std::count(res.begin(), res.end(), true));
          }
          acc.add(std::log1p(-static_cast<double>(w) / p) -
                  h * std::log1p(-1.0 / static_cast<double>(p)));
        });
        return acc;
      },
      [](KahanSum a, KahanSum b) {
        a.merge(b);
        return a;
      });
  SingularSeriesReport rep;
  rep.value = std::exp(logsum.sum);
  rep.p0 = p0;
  rep.tail_rel_bound = (h * h + h) / static_cast<double>(p0);
  return rep;
}

QuotientProblem hl_family(const std::vector<u64>& tuple) {
  const AdmissibleResult adm = admissible(tuple);
  if (!adm.admissible)
    throw domain_error("hl_family: inadmissible tuple (witness p = " +
                       std::to_string(*adm.witness) + ")");
  if (tuple.size() > 4)
    throw domain_error(
        "hl_family: tuple length cap is 4 (the expanded recurrence doubles "
        "its summands per offset)");
  // F as a polynomial in t = 2^n: prod_i (2^(t_i) t - 2)
  std::vector<mpz_class> coeff = {1};
  for (u64 t : tuple) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(t));
    std::vector<mpz_class> next(coeff.size() + 1, 0);
    for (std::size_t j = 0; j < coeff.size(); ++j) {
      next[j + 1] += coeff[j] * scale;
      next[j] += coeff[j] * mpz_class(-2);
    }
    coeff = std::move(next);
  }
  ExpPolyRecurrence f;
  for (std::size_t j = 0; j < coeff.size(); ++j) {
    mpz_class root;
    mpz_ui_pow_ui(root.get_mpz_t(), 2, static_cast<unsigned long>(j));
    f.terms.push_back({IntPolynomial::constant(coeff[j]), root});
  }
  IntPolynomial g = IntPolynomial::constant(1);
  for (u64 t : tuple)
    g = g * IntPolynomial({mpz_class(static_cast<unsigned long>(t)), 1});
  return QuotientProblem::from_exppoly(std::move(f), std::move(g), {});
}

}  // namespace recq
