#include "lambdacf/quadring.hpp"

#include <unordered_map>
#include <unordered_set>

#include "lambdacf/numutil.hpp"

namespace lambdacf {

QuadRing::QuadRing(const mpz_class& D, long p, int k) : D_(D), p_(p), k_(k) {
  if (p < 3 || !is_prime(p)) throw precondition_error("p must be an odd prime");
  if (k < 1) throw precondition_error("exponent must be >= 1");
  if (D % p == 0) throw precondition_error("p divides the discriminant");
  delta_ = mpz_class(D % 4).get_si();
  if (delta_ != 0 && delta_ != 1) throw precondition_error("not a discriminant");
  modulus_ = checked_pow_long(p, k);
  if (modulus_ > (1L << 30)) throw precondition_error("modulus exceeds desk scale");
  wsq_ = mod_reduce((D - delta_) / 4, modulus_);
  long dp = mod_reduce(D, p);
  inert_ = mod_pow(dp, (p - 1) / 2, p) != 1;
}

void QuadRing::check(const RingElem& a) const {
  if (a.modulus != modulus_) throw precondition_error("ring mismatch");
}

RingElem QuadRing::make(const mpz_class& x, const mpz_class& y) const {
  return RingElem{mod_reduce(x, modulus_), mod_reduce(y, modulus_), modulus_};
}

RingElem QuadRing::from_unit(const FundamentalUnit& eps) const {
  if (eps.D != D_) throw precondition_error("ring mismatch");
  return make(eps.a, eps.b);
}

RingElem QuadRing::add(const RingElem& a, const RingElem& b) const {
  check(a);
  check(b);
  return RingElem{(a.x + b.x) % modulus_, (a.y + b.y) % modulus_, modulus_};
}

RingElem QuadRing::sub(const RingElem& a, const RingElem& b) const {
  check(a);
  check(b);
  return RingElem{(a.x - b.x + modulus_) % modulus_,
                  (a.y - b.y + modulus_) % modulus_, modulus_};
}

RingElem QuadRing::mul(const RingElem& a, const RingElem& b) const {
  check(a);
  check(b);
  __int128 m = modulus_;
  long x = static_cast<long>(((__int128)a.x * b.x + (__int128)a.y % m * b.y % m * wsq_) % m);
  long y = static_cast<long>(((__int128)a.x * b.y + (__int128)a.y * b.x +
                              (__int128)delta_ * a.y % m * b.y) % m);
  return RingElem{x, y, modulus_};
}

RingElem QuadRing::pow(const RingElem& a, const mpz_class& e) const {
  check(a);
  if (e < 0) return pow(inverse(a), -e);
  RingElem r = one();
  RingElem base = a;
  mpz_class t = e;
  while (t > 0) {
    if (mpz_odd_p(t.get_mpz_t())) r = mul(r, base);
    base = mul(base, base);
    t >>= 1;
  }
  return r;
}

RingElem QuadRing::conjugate(const RingElem& a) const {
  check(a);
  // conj(x + y*omega) = (x + delta*y) - y*omega
  return RingElem{(a.x + delta_ * a.y) % modulus_,
                  (modulus_ - a.y) % modulus_, modulus_};
}

long QuadRing::norm(const RingElem& a) const {
  check(a);
  __int128 m = modulus_;
  __int128 n = ((__int128)a.x * a.x + (__int128)delta_ * a.x * a.y % m -
                (__int128)a.y * a.y % m * wsq_) % m;
  return static_cast<long>((n % m + m) % m);
}

bool QuadRing::is_unit(const RingElem& a) const { return norm(a) % p_ != 0; }

RingElem QuadRing::inverse(const RingElem& a) const {
  if (!is_unit(a)) throw precondition_error("not a unit");
  long ninv = mod_inverse(norm(a), modulus_);
  RingElem c = conjugate(a);
  __int128 m = modulus_;
  return RingElem{static_cast<long>((__int128)c.x * ninv % m),
                  static_cast<long>((__int128)c.y * ninv % m), modulus_};
}

mpz_class QuadRing::unit_group_order() const {
  mpz_class pk1;  // p^{k-1}
  mpz_ui_pow_ui(pk1.get_mpz_t(), p_, k_ - 1);
  if (inert_) return pk1 * pk1 * (mpz_class(p_) * p_ - 1);
  return pk1 * (p_ - 1) * pk1 * (p_ - 1);
}

long QuadRing::unit_group_exponent() const {
  long pk1 = checked_pow_long(p_, k_ - 1);
  return inert_ ? pk1 * (p_ * p_ - 1) : pk1 * (p_ - 1);
}

long QuadRing::order_of(const RingElem& a) const {
  if (!is_unit(a)) throw precondition_error("not a unit");
  long t = unit_group_exponent();
  for (auto [q, e] : factorize(t)) {
    for (int i = 0; i < e; ++i) {
      if (t % q == 0 && pow(a, t / q) == one())
        t /= q;
      else
        break;
    }
  }
  return t;
}

long primitive_root(long p) {
  long n = p * (p - 1);
  auto fs = factorize(n);
  for (long g = 2;; ++g) {
    bool ok = true;
    for (auto [q, e] : fs)
      if (mod_pow(g, n / q, p * p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
}

namespace {

// x with gq^x = t, gq of prime order q in (Z/modulus)^x
long bsgs_prime(long t, long gq, long q, long modulus) {
  long m = 1;
  while (m * m < q) ++m;
  std::unordered_map<long, long> baby;
  long cur = 1 % modulus;
  for (long j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = static_cast<long>((__int128)cur * gq % modulus);
  }
  long factor = mod_inverse(mod_pow(gq, m, modulus), modulus);
  long gamma = t % modulus;
  for (long i = 0; i <= m; ++i) {
    auto it = baby.find(gamma);
    if (it != baby.end()) return (i * m + it->second) % q;
    gamma = static_cast<long>((__int128)gamma * factor % modulus);
  }
  throw internal_error("baby-step giant-step failed");
}

}  // namespace

long dlog(long t, long g, long p, int k) {
  long modulus = checked_pow_long(p, k);
  t = ((t % modulus) + modulus) % modulus;
  if (t % p == 0) throw precondition_error("not a unit");
  long N = checked_pow_long(p, k - 1) * (p - 1);

  // Pohlig-Hellman: solve modulo each prime power of N, then CRT
  long x = 0, mprod = 1;
  for (auto [q, e] : factorize(N)) {
    long qe = checked_pow_long(q, static_cast<int>(e));
    // digits of x mod q^e
    long gq = mod_pow(g, N / q, modulus);  // order q
    long xe = 0, qpow = 1;
    for (int i = 0; i < e; ++i) {
      // strip known digits, push remainder into the order-q subgroup
      long expo = N / (qpow * q);
      long rhs = mod_pow(
          static_cast<long>((__int128)t *
                            mod_inverse(mod_pow(g, xe, modulus), modulus) %
                            modulus),
          expo, modulus);
      long d = bsgs_prime(rhs, gq, q, modulus);
      xe += d * qpow;
      qpow *= q;
    }
    // CRT combine
    long m2 = qe;
    long r2 = xe % m2;
    long inv = mod_inverse(mprod % m2, m2);
    long diff = ((r2 - x) % m2 + m2) % m2;
    x = x + mprod * static_cast<long>((__int128)diff * inv % m2);
    mprod *= m2;
  }
  return ((x % N) + N) % N;
}

AssumptionB check_assumption_b(const mpz_class& D, long p) {
  FundamentalUnit eps = fundamental_unit(D);
  QuadRing r1(D, p, 1), r2(D, p, 2);
  AssumptionB out;
  out.r0 = r1.order_of(r1.from_unit(eps));
  out.witness = r2.pow(r2.from_unit(eps), out.r0);
  out.pass = !(out.witness == r2.one());
  return out;
}

namespace {

// Hensel-lift an eighth root of unity from 1 + omega when p = 3 and
// D = 3 mod 4 fails, i.e. delta = 0 and (D/4) = 2 mod 3, the Example-13
// configuration. Root of X^4 + 1.
std::optional<RingElem> hensel_eighth_root(const QuadRing& ring) {
  if (ring.p() != 3 || ring.delta() != 0) return std::nullopt;
  RingElem a = ring.make(1, 1);
  RingElem minus_one = ring.make(-1, 0);
  auto f = [&](const RingElem& t) {
    return ring.sub(ring.pow(t, 4), minus_one);
  };
  RingElem f0 = f(a);
  if (f0.x % 3 != 0 || f0.y % 3 != 0) return std::nullopt;  // not a root mod 3
  for (int it = 0; it < 64; ++it) {
    RingElem fa = f(a);
    if (fa == ring.make(0, 0)) return a;
    RingElem da = ring.mul(ring.make(4, 0), ring.pow(a, 3));
    a = ring.sub(a, ring.mul(fa, ring.inverse(da)));
  }
  return std::nullopt;
}

}  // namespace

EtaResult find_eta(const QuadRing& ring, const RingElem& eps_cls, long g,
                   long rn, long v) {
  long f = ring.modulus();
  long p = ring.p();
  int n = ring.k() - 1;
  long pn = checked_pow_long(p, n);
  long gord = pn * (p - 1);

  // materialize <eps, g>
  std::unordered_set<long> H;
  RingElem gc = ring.make(g, 0);
  RingElem epow = ring.one();
  for (long i = 0; i < rn; ++i) {
    RingElem cur = epow;
    for (long j = 0; j < gord; ++j) {
      H.insert(ring.key(cur));
      cur = ring.mul(cur, gc);
    }
    epow = ring.mul(epow, eps_cls);
  }

  auto finish = [&](RingElem cls, bool hensel) {
    EtaResult out;
    out.cls = cls;
    out.via_hensel = hensel;
    // totally positive lift: push the x coordinate up by multiples of p^{n+1}
    mpz_class lx = cls.x, ly = cls.y;
    while (!QuadInt{lx, ly, ring.discriminant(), ring.delta()}.totally_positive())
      lx += f;
    out.lift_x = lx;
    out.lift_y = ly;
    return out;
  };

  if (v == 1) return finish(ring.one(), false);

  // exponent projecting a candidate onto its prime-to-p part while fixing
  // its class in the order-v quotient
  mpz_class pn2;
  mpz_ui_pow_ui(pn2.get_mpz_t(), p, 2 * static_cast<unsigned long>(n));
  long s = mod_inverse(mod_reduce(pn2, v), v);
  mpz_class proj = pn2 * s;

  auto vf = factorize(v);
  auto generates = [&](const RingElem& c) {
    for (auto [q, e] : vf)
      if (H.count(ring.key(ring.pow(c, v / q)))) return false;
    return true;
  };

  if (auto h8 = hensel_eighth_root(ring)) {
    RingElem c = ring.pow(*h8, proj);
    if (ring.is_unit(c) && generates(c)) return finish(c, true);
  }

  for (long x = 0; x < f; ++x) {
    for (long y = 0; y < f; ++y) {
      RingElem cand{x, y, f};
      if (!ring.is_unit(cand)) continue;
      RingElem c = ring.pow(cand, proj);
      if (generates(c)) return finish(c, false);
    }
  }
  throw internal_error("no generator found");
}

PipelineParams build_pipeline_params(const mpz_class& D, long p, int n,
                                     std::optional<long> g_override) {
  if (n < 1) throw precondition_error("level n must be >= 1");
  PipelineParams params;
  params.D = D;
  params.p = p;
  params.n = n;
  params.eps = fundamental_unit(D);
  params.delta = params.eps.delta;

  AssumptionB ab = check_assumption_b(D, p);
  if (!ab.pass)
    throw precondition_error("assumption B fails: p^2 divides eps^" +
                             std::to_string(ab.r0) + " - 1 for p = " +
                             std::to_string(p));
  params.r0 = ab.r0;

  QuadRing ring(D, p, n + 1);
  params.inert = ring.inert();
  RingElem eps_cls = ring.from_unit(params.eps);
  params.rn = ring.order_of(eps_cls);
  long pn = checked_pow_long(p, n);
  if (params.rn != pn * params.r0)
    throw internal_error("order of eps mod p^{n+1} is not p^n r0");

  params.u = params.r0 % 2 == 0 ? 1 : 0;
  long twiddle = p + (params.inert ? 1 : -1);
  long num = (params.u ? 2 : 1) * twiddle;
  if (num % params.r0 != 0)
    throw internal_error("quotient order 2^u (p +- 1)/r0 is not integral");
  params.v = num / params.r0;

  params.g = g_override.value_or(primitive_root(p));
  if (g_override) {
    // must generate (Z/p^2)^x
    long ord = p * (p - 1);
    for (auto [q, e] : factorize(ord))
      if (mod_pow(params.g, ord / q, p * p) == 1)
        throw precondition_error("g override is not a primitive root mod p^2");
  }

  params.eta = find_eta(ring, eps_cls, params.g, params.rn, params.v);

  // e1, e2 whenever D = 4*ell with ell a unit mod p
  if (params.delta == 0 && D % 4 == 0) {
    mpz_class ell = D / 4;
    if (ell % p != 0) {
      long e1 = dlog(mod_reduce(ell, ring.modulus()), params.g, p, n + 1);
      params.e1 = e1;
      params.e2 = static_cast<long>((__int128)e1 % pn * mod_inverse(2, pn) % pn);
    }
  }
  return params;
}

}  // namespace lambdacf
