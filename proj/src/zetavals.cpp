#include "lambdacf/zetavals.hpp"

#include "lambdacf/numutil.hpp"

namespace lambdacf {

namespace {

mpq_class frac_of(const mpz_class& num, long f) {
  // {num / f} with exact reduction
  long r = mod_reduce(num, f);
  mpq_class q(r, f);
  q.canonicalize();
  return q;
}

void check_rep(const RayClassRep& rep, const MinusCF& cf) {
  if (rep.modulus < 1) throw precondition_error("modulus must be positive");
  if (cf.delta != 0 && cf.delta != 1)
    throw precondition_error("expansion is not of (delta + sqrt(D))/2 shape");
}

}  // namespace

CkSequence c_sequence(const RayClassRep& rep, const MinusCF& cf, long count) {
  check_rep(rep, cf);
  if (count < 0) throw precondition_error("count must be >= 0");
  long f = rep.modulus;
  const mpz_class& b0 = cf.head[0];

  CkSequence seq;
  seq.values.reserve(static_cast<std::size_t>(count) + 2);
  seq.values.push_back(frac_of(rep.x - (b0 - cf.delta) * rep.y, f));  // c_{-2}
  auto conv = convergents_mod(cf, static_cast<std::size_t>(count), f);
  for (long k = -1; k < count; ++k) {
    auto [pk, qk] = conv[static_cast<std::size_t>(k + 1)];
    seq.values.push_back(frac_of(-(rep.x * qk + rep.y * pk), f));
  }
  return seq;
}

std::pair<mpq_class, mpq_class> yamamoto_zeta0_prep(const RayClassRep& rep,
                                                    const MinusCF& cf, long rn) {
  check_rep(rep, cf);
  if (rn < 1) throw precondition_error("rn must be >= 1");
  long m = static_cast<long>(cf.m());
  long total = rn * m;
  CkSequence cs = c_sequence(rep, cf, total);

  auto b1 = [](const mpq_class& c) { return c - mpq_class(1, 2); };
  mpq_class sum = 0;
  mpz_class period_sum = 0;
  for (long k = 1; k <= total; ++k) {
    const mpz_class& bk = cf.period[static_cast<std::size_t>((k - 1) % m)];
    mpq_class u = b1(cs.at(k - 1));
    sum += mpq_class(bk, 2) * u * u - u * b1(cs.at(k - 2));
  }
  for (const auto& b : cf.period) period_sum += b;
  mpq_class C = mpq_class(-rn * period_sum, 24);
  C.canonicalize();
  return {sum, C};
}

mpq_class yamamoto_zeta0(const RayClassRep& rep, const MinusCF& cf, long rn) {
  auto [sum, C] = yamamoto_zeta0_prep(rep, cf, rn);
  // B2 = B1^2 - 1/12, so the B2 form is the B1^2 form plus C
  return sum + C;
}

CycloNumber twisted_dedekind(long a, long b, const CharacterSpec& spec) {
  long f = spec.conductor();
  long pn = spec.order();
  // ({at/f} - 1/2)({bt/f} - 1/2) = (2 at mod f - f)(2 bt mod f - f) / (4 f^2)
  std::vector<mpz_class> buckets(static_cast<std::size_t>(pn), mpz_class(0));
  long am = ((a % f) + f) % f;
  long bm = ((b % f) + f) % f;
  for (long t = 1; t <= f; ++t) {
    long e = spec.exponent_at(t);
    if (e < 0) continue;
    long at = static_cast<long>((__int128)am * t % f);
    long bt = static_cast<long>((__int128)bm * t % f);
    buckets[static_cast<std::size_t>(e)] +=
        mpz_class(2 * at - f) * mpz_class(2 * bt - f);
  }
  std::vector<mpq_class> coeffs(buckets.size());
  mpz_class denom = 4 * mpz_class(f) * f;
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    coeffs[i] = mpq_class(buckets[i], denom);
    coeffs[i].canonicalize();
  }
  return CycloNumber::from_buckets(spec.p(), spec.n(), coeffs);
}

CycloNumber dedekind_diag_closed_form(long a, const CharacterSpec& spec) {
  long f = spec.conductor();
  long pn = spec.order();
  long ea = spec.exponent_at(((a % f) + f) % f);
  if (ea < 0) return CycloNumber(spec.p(), spec.n());

  std::vector<mpz_class> buckets(static_cast<std::size_t>(pn), mpz_class(0));
  for (long t = 1; t < f; ++t) {
    long e = spec.exponent_at(t);
    if (e < 0) continue;
    buckets[static_cast<std::size_t>(e)] += mpz_class(t) * t;
  }
  std::vector<mpq_class> coeffs(buckets.size());
  mpz_class denom = mpz_class(f) * f;
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    coeffs[i] = mpq_class(buckets[i], denom);
    coeffs[i].canonicalize();
  }
  CycloNumber s2 = CycloNumber::from_buckets(spec.p(), spec.n(), coeffs);
  // psi_bar(a) = zeta^{-ea}
  return s2 * CycloNumber::zeta_power(spec.p(), spec.n(), -ea);
}

}  // namespace lambdacf
