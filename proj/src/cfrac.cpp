#include "lambdacf/cfrac.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "lambdacf/numutil.hpp"

namespace lambdacf {

QuadraticSurd::QuadraticSurd(mpz_class p, mpz_class q, mpz_class d)
    : P(std::move(p)), Q(std::move(q)), D(std::move(d)) {
  if (Q == 0) throw precondition_error("zero denominator");
  if (D <= 0 || is_perfect_square(D)) throw precondition_error("not irrational");
  if ((D - P * P) % Q != 0) {
    // scale by |Q|: (P + sqrt(D))/Q = (P|Q| + sqrt(D Q^2)) / (Q|Q|)
    mpz_class aq = abs(Q);
    P *= aq;
    D *= Q * Q;
    Q *= aq;
  }
}

mpz_class QuadraticSurd::floor() const {
  // sqrt(D) lies strictly between s and s+1
  mpz_class s = isqrt_floor(D);
  mpz_class num = Q > 0 ? P + s : P - s - 1;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
  return f;
}

mpz_class QuadraticSurd::ceil() const {
  // irrational, so ceil = floor + 1
  return floor() + 1;
}

QuadraticSurd QuadraticSurd::step(const mpz_class& b) const {
  // 1/(b - x) = (P' + sqrt(D)) / ((P'^2 - D)/Q) with P' = bQ - P
  mpz_class P2 = b * Q - P;
  mpz_class Q2 = (P2 * P2 - D) / Q;
  QuadraticSurd next{P2, Q2, D};
  return next;
}

double QuadraticSurd::to_double() const {
  return (P.get_d() + std::sqrt(D.get_d())) / Q.get_d();
}

const mpz_class& MinusCF::quotient(std::size_t k) const {
  if (k < head.size()) return head[k];
  return period[(k - head.size()) % period.size()];
}

mpz_class MinusCF::max_period_quotient() const {
  return *std::max_element(period.begin(), period.end());
}

namespace {

// minimal period of a block already known to repeat
std::size_t minimal_period(const std::vector<mpz_class>& block) {
  std::size_t n = block.size();
  for (std::size_t d = 1; d <= n / 2; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = block[i] == block[i - d];
    if (ok) return d;
  }
  return n;
}

}  // namespace

MinusCF expand_minus_cf(const QuadraticSurd& surd, std::size_t max_steps) {
  std::unordered_map<std::string, std::size_t> seen;
  std::vector<mpz_class> bs;
  QuadraticSurd cur = surd;
  for (std::size_t k = 0; k < max_steps; ++k) {
    std::string key = cur.P.get_str() + "/" + cur.Q.get_str();
    auto [it, fresh] = seen.emplace(std::move(key), k);
    if (!fresh) {
      std::size_t i = it->second;
      MinusCF cf;
      cf.D = surd.D;
      cf.head.assign(bs.begin(), bs.begin() + i);
      cf.period.assign(bs.begin() + i, bs.end());
      std::size_t d = minimal_period(cf.period);
      cf.period.resize(d);
      // pull the boundary left while head and period end the same way
      while (!cf.head.empty() && cf.head.back() == cf.period.back()) {
        cf.period.insert(cf.period.begin(), cf.period.back());
        cf.period.pop_back();
        cf.head.pop_back();
      }
      return cf;
    }
    mpz_class b = cur.ceil();
    bs.push_back(b);
    cur = cur.step(b);
  }
  throw precondition_error("period overflow");
}

MinusCF expand_discriminant(const mpz_class& D, std::size_t max_steps) {
  if (D <= 0) throw precondition_error("discriminant must be positive");
  int delta = mpz_class(D % 4).get_si();
  if (delta != 0 && delta != 1)
    throw precondition_error("not a discriminant: D mod 4 must be 0 or 1");
  MinusCF cf = expand_minus_cf(QuadraticSurd(delta, 2, D), max_steps);
  cf.delta = delta;
  if (cf.head.size() != 1)
    throw internal_error("discriminant expansion should have a single-term head");
  std::size_t m = cf.m();
  const mpz_class& b0 = cf.head[0];
  if (cf.period[m - 1] != 2 * b0 - delta)
    throw internal_error("closing partial quotient is not 2 b0 - delta");
  for (std::size_t k = 1; k + k < m; ++k)
    if (cf.period[k - 1] != cf.period[m - 1 - k])
      throw internal_error("period is not palindromic");
  return cf;
}

std::vector<mpz_class> plus_to_minus(const std::vector<mpz_class>& plus,
                                     std::size_t max_len) {
  if (plus.empty()) throw precondition_error("empty expansion");
  std::vector<mpz_class> out;
  if (max_len == 0) return out;
  out.push_back(plus[0] + 1);
  std::size_t i = 1;
  while (out.size() < max_len && i < plus.size()) {
    // a_i twos shy of one, then a_{i+1} + 2
    for (mpz_class t = 1; t < plus[i] && out.size() < max_len; ++t)
      out.push_back(2);
    if (out.size() >= max_len) break;
    ++i;
    if (i < plus.size()) {
      out.push_back(plus[i] + 2);
      ++i;
    }
  }
  return out;
}

std::vector<std::pair<mpz_class, mpz_class>> convergents_exact(const MinusCF& cf,
                                                               std::size_t count) {
  std::vector<std::pair<mpz_class, mpz_class>> out;
  out.reserve(count + 1);
  mpz_class pm2 = 0, qm2 = -1, pm1 = 1, qm1 = 0;
  out.emplace_back(pm1, qm1);
  for (std::size_t k = 0; k < count; ++k) {
    const mpz_class& b = cf.quotient(k);
    mpz_class p = b * pm1 - pm2;
    mpz_class q = b * qm1 - qm2;
    out.emplace_back(p, q);
    pm2 = std::move(pm1);
    qm2 = std::move(qm1);
    pm1 = std::move(p);
    qm1 = std::move(q);
  }
  return out;
}

std::vector<std::pair<long, long>> convergents_mod(const MinusCF& cf,
                                                   std::size_t count,
                                                   long modulus) {
  if (modulus <= 0) throw precondition_error("modulus must be positive");
  std::vector<std::pair<long, long>> out;
  out.reserve(count + 1);
  long pm2 = 0, qm2 = (modulus - 1) % modulus, pm1 = 1 % modulus, qm1 = 0;
  out.emplace_back(pm1, qm1);
  for (std::size_t k = 0; k < count; ++k) {
    long b = mod_reduce(cf.quotient(k), modulus);
    long p = static_cast<long>((((__int128)b * pm1 - pm2) % modulus + modulus) % modulus);
    long q = static_cast<long>((((__int128)b * qm1 - qm2) % modulus + modulus) % modulus);
    out.emplace_back(p, q);
    pm2 = pm1;
    qm2 = qm1;
    pm1 = p;
    qm1 = q;
  }
  return out;
}

QuadInt QuadInt::mul(const QuadInt& o) const {
  // omega^2 = (D - delta)/4 + delta*omega
  mpz_class w = (D - delta) / 4;
  QuadInt r;
  r.D = D;
  r.delta = delta;
  r.x = x * o.x + y * o.y * w;
  r.y = x * o.y + y * o.x + mpz_class(delta) * y * o.y;
  return r;
}

QuadInt QuadInt::pow(unsigned long e) const {
  QuadInt r{1, 0, D, delta};
  QuadInt base = *this;
  while (e) {
    if (e & 1) r = r.mul(base);
    base = base.mul(base);
    e >>= 1;
  }
  return r;
}

mpz_class QuadInt::norm() const {
  return x * x + mpz_class(delta) * x * y - y * y * ((D - delta) / 4);
}

mpz_class QuadInt::trace() const { return 2 * x + mpz_class(delta) * y; }

bool QuadInt::totally_positive() const {
  // x + y(delta + sqrt D)/2 > 0 and its conjugate > 0
  mpz_class a = 2 * x + mpz_class(delta) * y;
  return sign_of_quad(a, y, D) > 0 && sign_of_quad(a, -y, D) > 0;
}

bool QuadInt::is_greater_than_one() const {
  mpz_class a = 2 * x + mpz_class(delta) * y - 2;
  return sign_of_quad(a, y, D) > 0;
}

FundamentalUnit fundamental_unit(const mpz_class& D) {
  MinusCF cf = expand_discriminant(D);
  const mpz_class& b0 = cf.head[0];
  int delta = cf.delta;

  // purely periodic companion (2 b0 - delta + sqrt(D))/2
  MinusCF pp = expand_minus_cf(QuadraticSurd(2 * b0 - delta, 2, D));
  if (!pp.head.empty()) throw internal_error("unit construction failed: expansion not purely periodic");
  std::size_t m = pp.m();
  if (m != cf.m()) throw internal_error("unit construction failed: period length mismatch");

  auto conv = convergents_exact(pp, m);
  const mpz_class& Qm1 = conv[m].second;
  const mpz_class& Qm2 = conv[m - 1].second;

  // eps = Q_{m-1} * varpi - Q_{m-2}, varpi = (b0 - delta) + omega
  FundamentalUnit eps;
  eps.D = D;
  eps.delta = delta;
  eps.a = Qm1 * (b0 - delta) - Qm2;
  eps.b = Qm1;

  QuadInt v = eps.value();
  if (v.norm() != 1) throw internal_error("unit construction failed: norm is not 1");
  if (!v.totally_positive()) throw internal_error("unit construction failed: not totally positive");
  if (!v.is_greater_than_one()) throw internal_error("unit construction failed: not > 1");
  return eps;
}

long roots_of_unity_count(const mpz_class& Delta) {
  if (Delta >= 0) throw precondition_error("roots of unity count expects Delta < 0");
  if (Delta == -3) return 6;
  if (Delta == -4) return 4;
  return 2;
}

GenusFactorization genus_factorization(const mpz_class& D) {
  if (D <= 0) throw precondition_error("genus factorization expects D > 0");
  if (D % 4 != 0 && D % 4 != 1) throw precondition_error("not a discriminant");

  // find the prime q = 3 mod 4 dividing D; then D = (-q) * (D / -q)
  mpz_class rest = D;
  while (rest % 2 == 0) rest /= 2;
  mpz_class q = 0;
  for (mpz_class d = 3; d * d <= rest && q == 0; d += 2) {
    if (rest % d == 0) {
      if (d % 4 == 3)
        q = d;
      else
        while (rest % d == 0) rest /= d;
    }
  }
  if (q == 0 && rest > 1 && rest % 4 == 3) q = rest;
  if (q == 0)
    throw precondition_error("no prime factor congruent to 3 mod 4 divides D");

  GenusFactorization f;
  f.D1 = -q;
  f.D2 = -(D / q);
  // D2 shape check: -4, -8, or -(prime 3 mod 4)
  mpz_class n2 = -f.D2;
  bool ok = n2 == 4 || n2 == 8 ||
            (n2 % 4 == 3 && mpz_probab_prime_p(n2.get_mpz_t(), 30) != 0);
  if (n2 == q) ok = false;
  if (!ok)
    throw precondition_error(
        "cofactor is not -4, -8, or a distinct prime 3 mod 4: D = " + D.get_str());
  return f;
}

mpz_class hz_class_number_product(const mpz_class& D) {
  GenusFactorization f = genus_factorization(D);
  MinusCF cf = expand_discriminant(D);
  mpz_class s = 0;
  for (const auto& b : cf.period) s += b - 3;
  mpz_class num = roots_of_unity_count(f.D1) * roots_of_unity_count(f.D2) * s;
  if (num <= 0 || num % 24 != 0) throw internal_error("assumption violation");
  return num / 24;
}

}  // namespace lambdacf
