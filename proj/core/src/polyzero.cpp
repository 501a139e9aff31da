#include "recq/polyzero.hpp"

#include <algorithm>
#include <cmath>

#include "recq/errors.hpp"
#include "recq/parallel.hpp"
#include "recq/rng.hpp"

namespace recq {

namespace {

constexpr u64 kScanLimit = 10000;

// f reduced mod p, low-to-high, trailing zeros trimmed.
std::vector<u64> reduce_mod(const IntPolynomial& f, u64 p) {
  std::vector<u64> r(f.coeffs().size());
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = mpz_fdiv_ui(f.coeffs()[i].get_mpz_t(), p);
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

u64 horner(const std::vector<u64>& f, u64 x, u64 p) {
  u64 r = 0;
  for (std::size_t i = f.size(); i-- > 0;) {
    r = mulmod(r, x, p);
    r += f[i];
    if (r >= p) r -= p;
  }
  return r;
}

// --- F_p[X] helpers shared by the gcd and root-splitting paths ---

void trim(std::vector<u64>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<u64> sub_p(const std::vector<u64>& a, const std::vector<u64>& b,
                       u64 p) {
  std::vector<u64> r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const u64 av = i < a.size() ? a[i] : 0;
    const u64 bv = i < b.size() ? b[i] : 0;
    r[i] = av >= bv ? av - bv : av + p - bv;
  }
  trim(r);
  return r;
}

std::vector<u64> mul_p(const std::vector<u64>& a, const std::vector<u64>& b,
                       u64 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<u64> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + static_cast<u128>(a[i]) * b[j]) % p;
  }
  trim(r);
  return r;
}

std::vector<u64> mod_p(std::vector<u64> a, const std::vector<u64>& m, u64 p) {
  const int dm = static_cast<int>(m.size()) - 1;
  const u64 lead_inv = invmod(m.back(), p);
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const u64 c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      u64& slot = a[i + shift];
      const u64 t = mulmod(c, m[i], p);
      slot = slot >= t ? slot - t : slot + p - t;
    }
    trim(a);
  }
  return a;
}

std::vector<u64> gcd_p(std::vector<u64> a, std::vector<u64> b, u64 p) {
  while (!b.empty()) {
    a = mod_p(std::move(a), b, p);
    std::swap(a, b);
  }
  if (!a.empty() && a.back() != 1) {
    const u64 inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
  }
  return a;
}

std::vector<u64> powmod_p(std::vector<u64> base, u64 e,
                          const std::vector<u64>& m, u64 p) {
  std::vector<u64> r = {1};
  base = mod_p(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) r = mod_p(mul_p(r, base, p), m, p);
    base = mod_p(mul_p(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

// product of (X - l) over the distinct roots of f in F_p: gcd(f, X^p - X).
std::vector<u64> root_part(const std::vector<u64>& f, u64 p) {
  // X^p mod f by repeated squaring, then gcd(f, X^p - X)
  std::vector<u64> xp = powmod_p({0, 1}, p, f, p);
  return gcd_p(f, sub_p(xp, {0, 1}, p), p);
}

// Equal-degree splitting of a monic squarefree product of linear factors.
void split_linear(const std::vector<u64>& g, u64 p, Rng& rng,
                  std::vector<u64>& out) {
  const int d = static_cast<int>(g.size()) - 1;
  if (d <= 0) return;
  if (d == 1) {
    // root of X + c is -c
    out.push_back(g[0] == 0 ? 0 : p - g[0]);
    return;
  }
  for (;;) {
    const u64 delta = rng.below(p);
    // gcd(g, (X + delta)^((p-1)/2) - 1) splits the roots into QR / QNR halves
    std::vector<u64> base = {delta, 1};
    std::vector<u64> h = powmod_p(std::move(base), (p - 1) / 2, g, p);
    if (h.empty())
      h = {p - 1};  // (X+delta)^((p-1)/2) = 0 means delta is a root shift
    else {
      if (h.size() < 1) h.resize(1, 0);
      h[0] = h[0] == 0 ? p - 1 : h[0] - 1;  // subtract 1
      trim(h);
    }
    std::vector<u64> a = gcd_p(g, h, p);
    const int da = static_cast<int>(a.size()) - 1;
    if (da <= 0 || da >= d) continue;
    std::vector<u64> b;
    {
      // b = g / a by synthetic division over F_p
      std::vector<u64> rem = g;
      std::vector<u64> quo(g.size() - a.size() + 1, 0);
      const u64 lead_inv = invmod(a.back(), p);
      while (rem.size() >= a.size() && !rem.empty()) {
        const u64 c = mulmod(rem.back(), lead_inv, p);
        const std::size_t shift = rem.size() - a.size();
        quo[shift] = c;
        for (std::size_t i = 0; i < a.size(); ++i) {
          u64& slot = rem[i + shift];
          const u64 t = mulmod(c, a[i], p);
          slot = slot >= t ? slot - t : slot + p - t;
        }
        trim(rem);
      }
      b = std::move(quo);
      trim(b);
    }
    split_linear(a, p, rng, out);
    split_linear(b, p, rng, out);
    return;
  }
}

}  // namespace

std::optional<unsigned> zeros_mod_p(const IntPolynomial& f, u64 p) {
  std::vector<u64> fp = reduce_mod(f, p);
  if (fp.empty()) return std::nullopt;
  if (p <= kScanLimit) {
    unsigned count = 0;
    for (u64 x = 0; x < p; ++x)
      if (horner(fp, x, p) == 0) ++count;
    // the whole residue line vanishing counts as identically vanishing
    if (count == p) return std::nullopt;
    return count;
  }
  if (fp.size() == 1) return 0;  // nonzero constant
  std::vector<u64> g = root_part(fp, p);
  return static_cast<unsigned>(g.empty() ? 0 : g.size() - 1);
}

std::optional<std::vector<u64>> roots_mod_p(const IntPolynomial& f, u64 p) {
  std::vector<u64> fp = reduce_mod(f, p);
  if (fp.empty()) return std::nullopt;
  std::vector<u64> roots;
  if (p <= kScanLimit) {
    for (u64 x = 0; x < p; ++x)
      if (horner(fp, x, p) == 0) roots.push_back(x);
    if (roots.size() == p) return std::nullopt;
    return roots;
  }
  if (fp.size() == 1) return roots;
  std::vector<u64> g = root_part(fp, p);
  if (g.empty() || g.size() == 1) return roots;
  // deterministic splitting seed from (p, f mod p)
  u64 seed = p * 0x9e3779b97f4a7c15ULL + 12345;
  for (u64 c : fp) seed = splitmix64(seed) ^ c;
  Rng rng(seed);
  split_linear(g, p, rng, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ---------------------------------------------------------------------------
// factorization over Z
// ---------------------------------------------------------------------------

namespace {

// all divisors of |n|, ascending
std::vector<mpz_class> positive_divisors(const mpz_class& n) {
  std::vector<mpz_class> divs = {1};
  for (const auto& [p, e] : factorize(abs(n)).factors) {
    const std::size_t base = divs.size();
    mpz_class pe = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pe *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pe);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// both signs, deterministic order
std::vector<mpz_class> signed_divisors(const mpz_class& n) {
  std::vector<mpz_class> out;
  for (const auto& d : positive_divisors(n)) {
    out.push_back(d);
    out.push_back(-d);
  }
  return out;
}

// linear factors a*X + b from rational roots b'/a' of f; f primitive
std::vector<IntPolynomial> extract_rational_roots(IntPolynomial& f) {
  std::vector<IntPolynomial> out;
  if (f.degree() < 1) return out;
  for (;;) {
    if (f.degree() < 1) break;
    if (f.coeffs()[0] == 0) {
      IntPolynomial x = IntPolynomial::x();
      f = f.divide_exact(x);
      out.push_back(x);
      continue;
    }
    bool found = false;
    const std::vector<mpz_class> nums = signed_divisors(f.coeffs()[0]);
    const std::vector<mpz_class> dens = signed_divisors(f.leading());
    for (const auto& num : nums) {
      for (const auto& den : dens) {
        if (den <= 0) continue;  // denominator sign normalized
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (g != 1) continue;
        // root num/den <-> factor den*X - num
        IntPolynomial cand({-num, den});
        if (f.divisible_by(cand)) {
          f = f.divide_exact(cand);
          out.push_back(cand.primitive_part());
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) break;
  }
  return out;
}

// Kronecker interpolation search for a factor of degree exactly d (2 <= d).
// f primitive, squarefree, no rational roots. Returns a factor or nullopt.
std::optional<IntPolynomial> kronecker_search(const IntPolynomial& f, int d) {
  // evaluation points 0, 1, -1, 2, -2, ...
  std::vector<mpz_class> points;
  for (long i = 0; static_cast<int>(points.size()) < d + 1; ++i) {
    if (i == 0)
      points.push_back(0);
    else {
      points.push_back(i);
      if (static_cast<int>(points.size()) < d + 1) points.push_back(-i);
    }
  }
  std::vector<std::vector<mpz_class>> candidates(d + 1);
  for (int i = 0; i <= d; ++i) {
    const mpz_class v = f.eval(points[i]);
    // v != 0: integer roots were already stripped. The first point's values
    // stay positive, which fixes the factor's sign; the others carry both.
    candidates[i] = i == 0 ? positive_divisors(v) : signed_divisors(v);
  }
  std::vector<std::size_t> idx(d + 1, 0);
  std::vector<mpz_class> values(d + 1);
  for (;;) {
    // candidate value tuple -> Lagrange interpolation over Q
    for (int i = 0; i <= d; ++i) values[i] = candidates[i][idx[i]];
    {
      std::vector<mpq_class> coef(d + 1, 0);
      // Newton's divided differences would be fine too; Lagrange is simple
      for (int i = 0; i <= d; ++i) {
        // term_i = values[i] * prod_{j != i} (X - x_j) / (x_i - x_j)
        std::vector<mpq_class> term = {mpq_class(values[i])};
        for (int j = 0; j <= d; ++j) {
          if (j == i) continue;
          const mpq_class denom(points[i] - points[j]);
          std::vector<mpq_class> next(term.size() + 1, 0);
          for (std::size_t t = 0; t < term.size(); ++t) {
            next[t + 1] += term[t] / denom;
            next[t] -= term[t] * mpq_class(points[j]) / denom;
          }
          term = std::move(next);
        }
        for (std::size_t t = 0; t < term.size(); ++t) {
          coef[t] += term[t];
          coef[t].canonicalize();
        }
      }
      bool integral = true;
      for (auto& c : coef) {
        c.canonicalize();
        if (c.get_den() != 1) {
          integral = false;
          break;
        }
      }
      if (integral && coef[d] != 0) {
        std::vector<mpz_class> zc(d + 1);
        for (int i = 0; i <= d; ++i) zc[i] = coef[i].get_num();
        IntPolynomial cand(std::move(zc));
        if (cand.degree() == d && f.divisible_by(cand))
          return cand.primitive_part();
      }
    }
    // odometer step
    int pos = 0;
    for (; pos <= d; ++pos) {
      if (++idx[pos] < candidates[pos].size()) break;
      idx[pos] = 0;
    }
    if (pos > d) return std::nullopt;
  }
}

// full factorization of a primitive squarefree polynomial with no
// rational roots
void factor_squarefree(IntPolynomial f, std::vector<IntPolynomial>& out) {
  for (;;) {
    const int n = f.degree();
    if (n <= 0) return;
    if (n == 1) {
      out.push_back(f);
      return;
    }
    bool split = false;
    for (int d = 2; d <= n / 2; ++d) {
      if (auto g = kronecker_search(f, d)) {
        out.push_back(*g);
        f = f.divide_exact(*g).primitive_part();
        split = true;
        break;
      }
    }
    if (!split) {
      out.push_back(f);  // no factor up to degree n/2: irreducible
      return;
    }
  }
}

}  // namespace

IntPolynomial FactorizationZ::product() const {
  IntPolynomial r = IntPolynomial::constant(content);
  for (const auto& [f, e] : factors)
    for (unsigned i = 0; i < e; ++i) r = r * f;
  return r;
}

FactorizationZ factor_over_Z(const IntPolynomial& f) {
  if (f.is_zero()) throw domain_error("factor_over_Z: zero polynomial");
  if (f.degree() > 8)
    throw domain_error("factor_over_Z: degree cap is 8");
  FactorizationZ out;
  mpz_class cont = f.content();
  if (f.leading() < 0) cont = -cont;
  out.content = cont;
  if (f.degree() == 0) return out;
  IntPolynomial g = f.primitive_part();

  // Yun's squarefree decomposition: g = prod a_i^i. g is primitive with a
  // positive leading coefficient, and each gcd comes back primitive, so
  // every division below is exact over Z (Gauss); b and c must NOT be
  // rescaled or the update invariant breaks.
  std::vector<IntPolynomial> sqf;  // sqf[i] has multiplicity i+1
  {
    IntPolynomial d = g.derivative();
    IntPolynomial a = poly_gcd(g, d);
    IntPolynomial b = g.divide_exact(a);
    IntPolynomial c = d.divide_exact(a);
    while (b.degree() > 0) {
      IntPolynomial delta = c - b.derivative();
      IntPolynomial step = poly_gcd(b, delta);
      sqf.push_back(step);
      b = b.divide_exact(step);
      c = delta.is_zero() ? IntPolynomial{} : delta.divide_exact(step);
    }
  }
  for (std::size_t i = 0; i < sqf.size(); ++i) {
    if (sqf[i].degree() < 1) continue;
    IntPolynomial part = sqf[i];
    std::vector<IntPolynomial> irred = extract_rational_roots(part);
    factor_squarefree(part.primitive_part(), irred);
    for (auto& q : irred)
      out.factors.emplace_back(q.primitive_part(),
                               static_cast<unsigned>(i + 1));
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) {
              if (a.first.degree() != b.first.degree())
                return a.first.degree() < b.first.degree();
              return a.first.coeffs() < b.first.coeffs();
            });
  out.h = 0;
  for (std::size_t i = 0; i < out.factors.size(); ++i) {
    if (i == 0 || !(out.factors[i].first == out.factors[i - 1].first)) ++out.h;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Kronecker statistic
// ---------------------------------------------------------------------------

KroneckerReport kronecker_statistic(const IntPolynomial& f,
                                    const std::vector<u64>& sample_points) {
  if (f.degree() < 1)
    throw domain_error("kronecker_statistic: f must be nonconstant");
  if (sample_points.empty())
    throw domain_error("kronecker_statistic: no sample points");
  std::vector<u64> samples = sample_points;
  std::sort(samples.begin(), samples.end());
  const u64 x = samples.back();
  if (x > 100000000ULL)
    throw domain_error("kronecker_statistic: threshold cap is 1e8");

  KroneckerReport rep;
  rep.h = factor_over_Z(f).h;

  // Segments between consecutive sample points; inside each segment the
  // prime range is cut into fixed chunks and reduced in order, so sums are
  // identical for any worker count.
  struct Acc {
    KahanSum s;
    u64 vanishing = 0;
  };
  KahanSum total;
  u64 prev = 1;
  for (u64 t : samples) {
    Acc seg = parallel_chunked<Acc>(
        prev + 1, t + 1, 1u << 16, Acc{},
        [&f](u64 a, u64 b) {
          Acc acc;
          for_primes_in(a, b - 1, [&](u64 p) {
            const auto eta = zeros_mod_p(f, p);
            if (!eta) {
              ++acc.vanishing;
              return;
            }
            if (*eta == 0) return;
            acc.s.add(static_cast<double>(*eta) * std::log((double)p) /
                      static_cast<double>(p));
          });
          return acc;
        },
        [](Acc a, Acc b) {
          a.s.merge(b.s);
          a.vanishing += b.vanishing;
          return a;
        });
    total.merge(seg.s);
    rep.skipped_vanishing += seg.vanishing;
    const double logt = std::log(static_cast<double>(t));
    const double s = total.sum;
    rep.table.push_back({t, s, s - rep.h * logt});
    prev = t;
  }
  for (const auto& pt : rep.table)
    rep.max_abs_residual = std::max(rep.max_abs_residual,
                                    std::abs(pt.residual));
  // least squares S ~ slope * log t + b
  const std::size_t n = rep.table.size();
  if (n == 1) {
    rep.slope = rep.table[0].s / std::log((double)rep.table[0].t);
    rep.slope_intercept = 0.0;
  } else {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& pt : rep.table) {
      const double lx = std::log((double)pt.t);
      sx += lx;
      sy += pt.s;
      sxx += lx * lx;
      sxy += lx * pt.s;
    }
    const double denom = n * sxx - sx * sx;
    rep.slope = (n * sxy - sx * sy) / denom;
    rep.slope_intercept = (sy - rep.slope * sx) / n;
  }
  return rep;
}

}  // namespace recq
