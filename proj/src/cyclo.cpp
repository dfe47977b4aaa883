#include "lambdacf/cyclo.hpp"

#include <algorithm>
#include <sstream>

#include "lambdacf/numutil.hpp"
#include "lambdacf/quadring.hpp"

namespace lambdacf {

namespace {

long phi_of(long p, int n) { return euler_phi_prime_power(p, n); }

// reduce a coefficient vector (any length) modulo Phi_{p^n} in place:
// x^{phi} = -(x^{(p-2)q} + ... + x^q + 1), q = p^{n-1}
void reduce_mod_phi(std::vector<mpq_class>& c, long p, int n) {
  long phi = phi_of(p, n);
  long q = checked_pow_long(p, n - 1);
  for (long e = static_cast<long>(c.size()) - 1; e >= phi; --e) {
    if (c[e] == 0) continue;
    mpq_class t = c[e];
    c[e] = 0;
    for (long j = 0; j < p - 1; ++j) c[e - phi + j * q] -= t;
  }
  c.resize(phi);
}

}  // namespace

CycloNumber::CycloNumber(long p, int n) : p_(p), n_(n) {
  if (n < 1) throw precondition_error("cyclotomic level must be >= 1");
  c_.assign(phi_of(p, n), mpq_class(0));
}

CycloNumber CycloNumber::from_rational(long p, int n, const mpq_class& c) {
  CycloNumber x(p, n);
  x.c_[0] = c;
  return x;
}

CycloNumber CycloNumber::zeta_power(long p, int n, long e) {
  CycloNumber x(p, n);
  long pn = x.level();
  e = ((e % pn) + pn) % pn;
  std::vector<mpq_class> raw(pn, mpq_class(0));
  raw[e] = 1;
  reduce_mod_phi(raw, p, n);
  x.c_ = std::move(raw);
  return x;
}

CycloNumber CycloNumber::from_buckets(long p, int n,
                                      const std::vector<mpq_class>& coeffs) {
  CycloNumber x(p, n);
  if (static_cast<long>(coeffs.size()) > x.level())
    throw precondition_error("bucket vector longer than the level");
  std::vector<mpq_class> raw = coeffs;
  raw.resize(x.level(), mpq_class(0));
  reduce_mod_phi(raw, p, n);
  x.c_ = std::move(raw);
  return x;
}

long CycloNumber::level() const { return checked_pow_long(p_, n_); }
long CycloNumber::degree() const { return phi_of(p_, n_); }

bool CycloNumber::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpq_class& v) { return v == 0; });
}

bool CycloNumber::is_integral() const {
  return std::all_of(c_.begin(), c_.end(),
                     [](const mpq_class& v) { return v.get_den() == 1; });
}

bool CycloNumber::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(),
                     [](const mpq_class& v) { return v == 0; });
}

void CycloNumber::require_same_level(const CycloNumber& o) const {
  if (p_ != o.p_ || n_ != o.n_) throw precondition_error("level mismatch");
}

CycloNumber CycloNumber::operator+(const CycloNumber& o) const {
  require_same_level(o);
  CycloNumber r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

CycloNumber CycloNumber::operator-(const CycloNumber& o) const {
  require_same_level(o);
  CycloNumber r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

CycloNumber CycloNumber::operator*(const CycloNumber& o) const {
  require_same_level(o);
  std::vector<mpq_class> prod(2 * c_.size(), mpq_class(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      prod[i + j] += c_[i] * o.c_[j];
    }
  }
  reduce_mod_phi(prod, p_, n_);
  CycloNumber r(p_, n_);
  r.c_ = std::move(prod);
  return r;
}

CycloNumber CycloNumber::scaled(const mpq_class& c) const {
  CycloNumber r = *this;
  for (auto& v : r.c_) v *= c;
  return r;
}

CycloNumber CycloNumber::galois(long a) const {
  long pn = level();
  a = ((a % pn) + pn) % pn;
  if (a % p_ == 0) throw precondition_error("galois exponent must be prime to p");
  std::vector<mpq_class> raw(pn, mpq_class(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    raw[(i * a) % pn] += c_[i];
  reduce_mod_phi(raw, p_, n_);
  CycloNumber r(p_, n_);
  r.c_ = std::move(raw);
  return r;
}

std::string CycloNumber::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    mpq_class v = c_[i];
    if (!first) os << (v > 0 ? " + " : " - ");
    if (first && v < 0) os << "-";
    mpq_class av = abs(v);
    if (av != 1 || i == 0) os << av.get_str();
    if (i > 0) {
      if (av != 1) os << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::vector<std::string> CycloNumber::serialize() const {
  std::vector<std::string> out;
  out.reserve(c_.size());
  for (const auto& v : c_)
    out.push_back(v.get_num().get_str() + "/" + v.get_den().get_str());
  return out;
}

CycloNumber CycloNumber::deserialize(long p, int n,
                                     const std::vector<std::string>& coeffs) {
  CycloNumber x(p, n);
  if (static_cast<long>(coeffs.size()) != x.degree())
    throw precondition_error("coefficient count does not match the level");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    mpq_class v(coeffs[i]);
    v.canonicalize();
    x.c_[i] = v;
  }
  return x;
}

namespace {

using Poly = std::vector<mpq_class>;  // coefficient list, low degree first

long degree_of(const Poly& f) {
  for (long i = static_cast<long>(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

// remainder of f by monic-scaled g (g nonzero)
Poly poly_rem(Poly f, const Poly& g) {
  long dg = degree_of(g);
  mpq_class lead = g[dg];
  for (long df = degree_of(f); df >= dg; df = degree_of(f)) {
    mpq_class c = f[df] / lead;
    for (long i = 0; i <= dg; ++i) f[df - dg + i] -= c * g[i];
    f[df] = 0;
  }
  return f;
}

// resultant over Q by the Euclidean recurrence
mpq_class poly_resultant(Poly a, Poly b) {
  long da = degree_of(a), db = degree_of(b);
  if (da < 0 || db < 0) return 0;
  mpq_class acc = 1;
  bool negate = false;
  while (true) {
    da = degree_of(a);
    db = degree_of(b);
    if (db == 0) {
      mpq_class r = 1;
      for (long i = 0; i < da; ++i) r *= b[0];
      return (negate ? -acc : acc) * r;
    }
    Poly r = poly_rem(a, b);
    long dr = degree_of(r);
    if (dr < 0) return 0;
    // res(a,b) = (-1)^{da db} lc(b)^{da-dr} res(b,r)
    if ((da & 1) && (db & 1)) negate = !negate;
    mpq_class lb = b[db];
    for (long i = 0; i < da - dr; ++i) acc *= lb;
    a = std::move(b);
    b = std::move(r);
  }
}

Poly cyclotomic_poly(long p, int n) {
  long q = checked_pow_long(p, n - 1);
  Poly f(q * (p - 1) + 1, mpq_class(0));
  for (long j = 0; j < p; ++j) f[j * q] = 1;
  return f;
}

}  // namespace

std::optional<long> pn_valuation(const CycloNumber& x) {
  if (!x.is_integral()) throw precondition_error("not an algebraic integer");
  if (x.is_zero()) return std::nullopt;
  Poly a = cyclotomic_poly(x.p(), x.n());
  Poly b(x.coeffs().begin(), x.coeffs().end());
  mpq_class res = poly_resultant(std::move(a), std::move(b));
  if (res == 0) throw internal_error("nonzero element with zero norm");
  mpz_class num = res.get_num();
  if (res.get_den() != 1) throw internal_error("norm of an integer is not integral");
  long v = 0;
  mpz_class r = abs(num);
  while (r % x.p() == 0) {
    r /= x.p();
    ++v;
  }
  return v;
}

std::optional<long> pn_valuation_by_division(const CycloNumber& x) {
  if (!x.is_integral()) throw precondition_error("not an algebraic integer");
  if (x.is_zero()) return std::nullopt;
  long p = x.p();
  int n = x.n();
  long pn = checked_pow_long(p, n);

  // 1/(1 - zeta) = prod_{a unit, a != 1} (1 - zeta^a) / p
  CycloNumber inv = CycloNumber::from_rational(p, n, mpq_class(1, p));
  for (long a = 2; a < pn; ++a) {
    if (a % p == 0) continue;
    inv = inv * (CycloNumber::from_rational(p, n, 1) - CycloNumber::zeta_power(p, n, a));
  }

  long v = 0;
  CycloNumber cur = x;
  while (true) {
    CycloNumber next = cur * inv;
    if (!next.is_integral()) return v;
    ++v;
    cur = std::move(next);
    if (cur.is_zero()) throw internal_error("exact division reached zero");
    if (v > 64 * x.degree()) throw internal_error("runaway valuation loop");
  }
}

bool is_galois_conjugate(const CycloNumber& a, const CycloNumber& b) {
  if (a.p() != b.p() || a.n() != b.n()) return false;
  long pn = a.level();
  for (long t = 1; t < pn; ++t) {
    if (t % a.p() == 0) continue;
    if (a.galois(t) == b) return true;
  }
  return false;
}

CharacterSpec::CharacterSpec(long p, int n, long g, long twist)
    : p_(p), n_(n), g_(g), twist_(twist) {
  if (n < 1) throw precondition_error("character level must be >= 1");
  pn_ = checked_pow_long(p, n);
  f_ = pn_ * p;
  if (twist_ % p == 0)
    throw precondition_error("character twist must be prime to p");
  index_.assign(f_, -1);
  long ord = pn_ * (p - 1);
  long t = 1 % f_;
  for (long e = 0; e < ord; ++e) {
    if (index_[t] != -1) throw precondition_error("g does not generate mod p^{n+1}");
    index_[t] = e;
    t = static_cast<long>((__int128)t * g % f_);
  }
}

long CharacterSpec::index_of(long t) const {
  t = ((t % f_) + f_) % f_;
  return index_[t];
}

long CharacterSpec::exponent_at(long t) const {
  long i = index_of(t);
  if (i < 0) return -1;
  return static_cast<long>((__int128)twist_ % pn_ * i % pn_ + pn_) % pn_;
}

CycloNumber CharacterSpec::value(const mpz_class& t) const {
  long e = exponent_at(mod_reduce(t, f_));
  if (e < 0) return CycloNumber(p_, n_);
  return CycloNumber::zeta_power(p_, n_, e);
}

CycloNumber psi_value(const mpz_class& t, const CharacterSpec& spec) {
  return spec.value(t);
}

}  // namespace lambdacf
