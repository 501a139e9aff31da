#include "recq/poly.hpp"

#include <sstream>

#include "recq/errors.hpp"

namespace recq {

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs)
    : c_(std::move(coeffs)) {
  normalize();
}

IntPolynomial IntPolynomial::constant(const mpz_class& c) {
  return IntPolynomial({c});
}

IntPolynomial IntPolynomial::x() { return IntPolynomial({0, 1}); }

void IntPolynomial::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpz_class& IntPolynomial::leading() const {
  if (c_.empty()) throw domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

mpz_class IntPolynomial::eval(const mpz_class& x) const {
  mpz_class r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

u64 IntPolynomial::eval_mod(u64 x, u64 m) const {
  u64 r = 0;
  x %= m;
  for (std::size_t i = c_.size(); i-- > 0;) {
    r = mulmod(r, x, m);
    r += mpz_fdiv_ui(c_[i].get_mpz_t(), m);
    if (r >= m) r -= m;
  }
  return r;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < c_.size()) r[i] += c_[i];
    if (i < o.c_.size()) r[i] += o.c_[i];
  }
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
  std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < c_.size()) r[i] += c_[i];
    if (i < o.c_.size()) r[i] -= o.c_[i];
  }
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  if (c_.empty() || o.c_.empty()) return {};
  std::vector<mpz_class> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-() const {
  std::vector<mpz_class> r = c_;
  for (auto& v : r) v = -v;
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<mpz_class> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * (long)i;
  return IntPolynomial(std::move(r));
}

mpz_class IntPolynomial::content() const {
  mpz_class g = 0;
  for (const auto& v : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
  if (c_.empty()) return {};
  mpz_class g = content();
  if (c_.back() < 0) g = -g;
  std::vector<mpz_class> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] / g;
  return IntPolynomial(std::move(r));
}

namespace {

// Polynomial division over Q with exact rational arithmetic. Returns
// quotient and remainder as mpq vectors.
struct QDiv {
  std::vector<mpq_class> quo, rem;
};

QDiv qdivide(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  std::vector<mpq_class> r(a.begin(), a.end());
  std::vector<mpq_class> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0,
                           0);
  const mpq_class lead(b.back());
  while (r.size() >= b.size()) {
    mpq_class c = r.back() / lead;
    c.canonicalize();
    const std::size_t shift = r.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) {
      r[i + shift] -= c * mpq_class(b[i]);
      r[i + shift].canonicalize();
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    if (r.empty()) break;
  }
  return {std::move(q), std::move(r)};
}

}  // namespace

IntPolynomial IntPolynomial::divide_exact(const IntPolynomial& o) const {
  if (o.is_zero()) throw domain_error("polynomial division by zero");
  if (is_zero()) return {};
  QDiv d = qdivide(c_, o.c_);
  if (!d.rem.empty()) throw domain_error("divide_exact: nonzero remainder");
  std::vector<mpz_class> q(d.quo.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (d.quo[i].get_den() != 1)
      throw domain_error("divide_exact: quotient not integral");
    q[i] = d.quo[i].get_num();
  }
  return IntPolynomial(std::move(q));
}

bool IntPolynomial::divisible_by(const IntPolynomial& o) const {
  if (o.is_zero()) return is_zero();
  if (is_zero()) return true;
  if (degree() < o.degree()) return false;
  return qdivide(c_, o.c_).rem.empty();
}

std::string IntPolynomial::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!first) os << (c_[i] > 0 ? " + " : " - ");
    else if (c_[i] < 0) os << "-";
    first = false;
    const mpz_class a = abs(c_[i]);
    if (a != 1 || i == 0) os << a.get_str();
    if (i >= 1) {
      if (a != 1) os << "*";
      os << "X";
      if (i >= 2) os << "^" << i;
    }
  }
  return os.str();
}

IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero()) return b.is_zero() ? IntPolynomial{} : b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  IntPolynomial f = a.primitive_part();
  IntPolynomial g = b.primitive_part();
  if (f.degree() < g.degree()) std::swap(f, g);
  // primitive PRS: pseudo-remainders, re-normalized to primitive each step
  while (!g.is_zero()) {
    // pseudo-remainder of f by g
    std::vector<mpz_class> r = f.coeffs();
    const mpz_class lead = g.leading();
    const int dg = g.degree();
    while (static_cast<int>(r.size()) - 1 >= dg && !r.empty()) {
      const mpz_class c = r.back();
      const std::size_t shift = r.size() - 1 - dg;
      for (auto& v : r) v *= lead;
      for (int i = 0; i <= dg; ++i) r[i + shift] -= c * g.coeffs()[i];
      while (!r.empty() && r.back() == 0) r.pop_back();
    }
    IntPolynomial rem{std::move(r)};
    f = std::move(g);
    g = rem.is_zero() ? IntPolynomial{} : rem.primitive_part();
  }
  return f.primitive_part();
}

mpz_class resultant(const IntPolynomial& a, const IntPolynomial& b) {
  const int da = a.degree(), db = b.degree();
  if (da < 0 || db < 0) return 0;
  if (da == 0 && db == 0) return 1;
  if (da == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), a.coeffs()[0].get_mpz_t(),
               static_cast<unsigned long>(db));
    return r;
  }
  if (db == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.coeffs()[0].get_mpz_t(),
               static_cast<unsigned long>(da));
    return r;
  }
  // Sylvester matrix, fraction-free (Bareiss) elimination
  const int n = da + db;
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n, 0));
  for (int i = 0; i < db; ++i)
    for (int j = 0; j <= da; ++j) m[i][i + j] = a.coeffs()[da - j];
  for (int i = 0; i < da; ++i)
    for (int j = 0; j <= db; ++j) m[db + i][i + j] = b.coeffs()[db - j];
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) return 0;
      std::swap(m[k], m[pivot]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : mpz_class(-m[n - 1][n - 1]);
}

mpz_class discriminant(const IntPolynomial& f) {
  const int d = f.degree();
  if (d < 1) throw domain_error("discriminant: degree must be >= 1");
  if (d == 1) return 1;
  const mpz_class res = resultant(f, f.derivative());
  const long flips = static_cast<long>(d) * (d - 1) / 2;
  mpz_class r = res / f.leading();
  return (flips % 2 == 0) ? r : mpz_class(-r);
}

}  // namespace recq
