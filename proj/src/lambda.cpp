#include "lambdacf/lambda.hpp"

#include <chrono>
#include <thread>

#include "lambdacf/cfrac.hpp"
#include "lambdacf/numutil.hpp"
#include "lambdacf/oracles.hpp"

namespace lambdacf {

namespace {

mpz_class int128_to_mpz(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
  mpz_class hi = static_cast<unsigned long long>(u >> 64);
  mpz_class out = (hi << 64) + static_cast<unsigned long long>(u);
  return neg ? mpz_class(-out) : out;
}

Verdict verdict_from(const std::optional<long>& valuation, long phi) {
  if (valuation && *valuation < phi) return Verdict{VerdictKind::Exact, *valuation};
  long bound = valuation ? std::min(*valuation, phi) : phi;
  return Verdict{VerdictKind::LowerBound, bound};
}

void attach_split(LambdaReport& report) {
  if (report.verdict.kind == VerdictKind::Exact)
    report.split = split_lambdas(report, report.D1, report.D2);
}

long quotient_as_long(const mpz_class& b) {
  if (!b.fits_slong_p()) throw precondition_error("partial quotient exceeds desk scale");
  return b.get_si();
}

}  // namespace

LambdaReport lambda_sum_general(const mpz_class& D, long p, int n,
                                const LambdaOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  if (!real_class_number_is_one(D))
    throw precondition_error("assumption A fails: class number of Q(sqrt(D)) is not 1");
  GenusFactorization fac = genus_factorization(D);

  PipelineParams params = build_pipeline_params(D, p, n, opts.g_override);
  MinusCF cf = expand_discriminant(D);
  long m = static_cast<long>(cf.m());
  long f = checked_pow_long(p, n + 1);
  long pn = checked_pow_long(p, n);
  long K = params.rn * m;

  QuadRing ring(D, p, n + 1);
  auto conv = convergents_mod(cf, static_cast<std::size_t>(K), f);  // k = -1..K-1

  // h_{j,k} = -(x_j q_k + y_j p_k) mod f, index shifted by one
  std::vector<std::vector<long>> h(static_cast<std::size_t>(params.v));
  for (long j = 0; j < params.v; ++j) {
    RingElem ej = ring.pow(params.eta.cls, j);
    auto& row = h[static_cast<std::size_t>(j)];
    row.resize(static_cast<std::size_t>(K) + 1);
    for (long kk = 0; kk <= K; ++kk) {
      auto [pk, qk] = conv[static_cast<std::size_t>(kk)];
      row[static_cast<std::size_t>(kk)] = static_cast<long>(
          (f - ((__int128)ej.x * qk + (__int128)ej.y * pk) % f) % f);
    }
  }

  std::vector<long> bks(static_cast<std::size_t>(m));
  for (long k = 0; k < m; ++k) bks[static_cast<std::size_t>(k)] = quotient_as_long(cf.period[static_cast<std::size_t>(k)]);

  CharacterSpec spec(p, n, params.g, opts.twist);
  std::vector<long> units;
  units.reserve(static_cast<std::size_t>(f - f / p));
  for (long t = 1; t < f; ++t)
    if (t % p != 0) units.push_back(t);

  // per-character-exponent numerators over the common denominator 8 f^2
  int workers = std::max(1, opts.threads);
  std::vector<std::vector<__int128>> partial(
      static_cast<std::size_t>(workers),
      std::vector<__int128>(static_cast<std::size_t>(pn), 0));

  auto run = [&](int w) {
    auto& buckets = partial[static_cast<std::size_t>(w)];
    for (std::size_t ti = static_cast<std::size_t>(w); ti < units.size();
         ti += static_cast<std::size_t>(workers)) {
      long t = units[ti];
      __int128 acc = 0;
      for (long j = 0; j < params.v; ++j) {
        const auto& row = h[static_cast<std::size_t>(j)];
        long ybar = static_cast<long>((__int128)t * row[0] % f);
        long xbar = static_cast<long>((__int128)t * row[1] % f);
        for (long k = 1; k <= K; ++k) {
          long bk = bks[static_cast<std::size_t>((k - 1) % m)];
          long A = 2 * xbar - f;
          long B = 2 * ybar - f;
          acc += (__int128)bk * A * A - 2 * (__int128)A * B;
          if (k < K) {
            ybar = xbar;
            xbar = static_cast<long>((__int128)t * row[static_cast<std::size_t>(k + 1)] % f);
          }
        }
      }
      buckets[static_cast<std::size_t>(spec.exponent_at(t))] += acc;
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }

  // deterministic merge, then scale by 2^{1-u} / (8 f^2)
  std::vector<mpq_class> coeffs(static_cast<std::size_t>(pn), mpq_class(0));
  mpz_class denom = mpz_class(8) * f * f;
  if (params.u == 0) denom /= 2;
  for (long e = 0; e < pn; ++e) {
    mpz_class num = 0;
    for (int w = 0; w < workers; ++w)
      num += int128_to_mpz(partial[static_cast<std::size_t>(w)][static_cast<std::size_t>(e)]);
    coeffs[static_cast<std::size_t>(e)] = mpq_class(num, denom);
    coeffs[static_cast<std::size_t>(e)].canonicalize();
  }

  LambdaReport report;
  report.D = D;
  report.D1 = fac.D1;
  report.D2 = fac.D2;
  report.p = p;
  report.n = n;
  report.params = params;
  report.psi_twist = opts.twist;
  report.value = CycloNumber::from_buckets(p, n, coeffs);
  if (!report.value.is_integral())
    throw internal_error("aggregate is not an algebraic integer");
  report.valuation = pn_valuation(report.value);
  report.phi_pn = euler_phi_prime_power(p, n);
  report.verdict = verdict_from(report.valuation, report.phi_pn);
  attach_split(report);
  report.millis = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return report;
}

LambdaReport lambda_sum_inert_fast(long ell, long p, int n,
                                   const FastOptions& opts, FastRawSum* raw) {
  auto t0 = std::chrono::steady_clock::now();
  mpz_class ellz(ell);
  if (ell <= 3 || ell % 4 != 3 || !is_prime(ell))
    throw precondition_error("fast path requires a prime ell = 3 mod 4, ell > 3");
  if (p == ell || !is_prime(p) || p == 2)
    throw precondition_error("p must be an odd prime different from ell");
  mpz_class D = 4 * ellz;
  if (!real_class_number_is_one(D))
    throw precondition_error("fast path requires class number 1 for Q(sqrt(ell))");
  if (kronecker_symbol(-ellz, p) != -1)
    throw precondition_error("fast path requires p inert in Q(sqrt(-ell))");

  AssumptionB ab = check_assumption_b(D, p);
  long r = ab.r0;
  if (p % 4 == 1 && r != p + 1)
    throw precondition_error("fast path requires order r = p + 1 when p = 1 mod 4 (got r = " +
                             std::to_string(r) + ")");
  if (p % 4 == 3 && r != (p - 1) / 2)
    throw precondition_error("fast path requires order r = (p - 1)/2 when p = 3 mod 4 (got r = " +
                             std::to_string(r) + ")");
  if (!ab.pass)
    throw precondition_error("fast path requires p^2 not dividing eps^r - 1");

  PipelineParams params;  // no eta search on this route
  params.D = D;
  params.delta = 0;
  params.p = p;
  params.n = n;
  params.eps = fundamental_unit(D);
  params.r0 = r;
  long pn = checked_pow_long(p, n);
  long f = checked_pow_long(p, n + 1);
  params.rn = pn * r;
  params.inert = kronecker_symbol(D, p) == -1;
  params.u = r % 2 == 0 ? 1 : 0;
  params.g = opts.g_override.value_or(primitive_root(p));
  // the second coset is represented by sqrt(ell) itself
  params.v = 2;
  params.eta.cls = RingElem{0, 1 % f, f};
  {
    mpz_class lx = 0, ly = 1;
    while (!QuadInt{lx, ly, D, 0}.totally_positive()) lx += f;
    params.eta.lift_x = lx;
    params.eta.lift_y = ly;
  }

  MinusCF cf = expand_discriminant(D);
  long m = static_cast<long>(cf.m());
  long K = params.rn * m;
  long e1 = dlog(mod_reduce(ellz, f), params.g, p, n + 1);
  long e2 = static_cast<long>((__int128)(e1 % pn) * mod_inverse(2, pn) % pn);
  params.e1 = e1;
  params.e2 = e2;

  auto conv = convergents_mod(cf, static_cast<std::size_t>(K) + 1, f);  // k = -1..K
  std::vector<long> bks(static_cast<std::size_t>(m));
  for (long k = 0; k < m; ++k) bks[static_cast<std::size_t>(k)] = quotient_as_long(cf.period[static_cast<std::size_t>(k)]);

  bool pair_i = p % 4 == 1 && opts.half_i;  // i and i + ord/2 contribute equally
  long imax = pn * (p - 1);
  if (pair_i) imax /= 2;
  bool want_half_k = opts.half_k;

  std::vector<__int128> buckets(static_cast<std::size_t>(pn), 0);
  std::vector<__int128> buckets_hk(static_cast<std::size_t>(pn), 0);

  long gi = 1 % f;
  for (long i = 1; i <= imax; ++i) {
    gi = static_cast<long>((__int128)gi * params.g % f);
    long pm2 = static_cast<long>((__int128)gi * conv[0].first % f);
    long qm2 = static_cast<long>((__int128)gi * conv[0].second % f);
    long pm1 = static_cast<long>((__int128)gi * conv[1].first % f);
    long qm1 = static_cast<long>((__int128)gi * conv[1].second % f);
    __int128 st = 0, ss = 0, st_hk = 0, ss_hk = 0;
    for (long k = 1; k <= K; ++k) {
      long pk = static_cast<long>((__int128)gi * conv[static_cast<std::size_t>(k + 1)].first % f);
      long qk = static_cast<long>((__int128)gi * conv[static_cast<std::size_t>(k + 1)].second % f);
      long bk = bks[static_cast<std::size_t>((k - 1) % m)];
      long sk = static_cast<long>(((__int128)bk * pm1 - pm2 - pk) / f);
      long tk = static_cast<long>(((__int128)bk * qm1 - qm2 - qk) / f);
      st += (__int128)tk * qm1;
      ss += (__int128)sk * pm1;
      if (want_half_k && k <= K / 2) {
        st_hk += (__int128)tk * qm1;
        ss_hk += (__int128)sk * pm1;
      }
      pm2 = pm1;
      qm2 = qm1;
      pm1 = pk;
      qm1 = qk;
    }
    long e_t = (2 * i) % pn;
    long e_s = (2 * i + 2 * e2) % pn;
    buckets[static_cast<std::size_t>(e_t)] += st;
    buckets[static_cast<std::size_t>(e_s)] += ss;
    if (want_half_k) {
      buckets_hk[static_cast<std::size_t>(e_t)] += st_hk;
      buckets_hk[static_cast<std::size_t>(e_s)] += ss_hk;
    }
  }

  auto to_cyclo = [&](const std::vector<__int128>& bu, const mpz_class& denom) {
    std::vector<mpq_class> coeffs(bu.size());
    for (std::size_t i = 0; i < bu.size(); ++i) {
      coeffs[i] = mpq_class(int128_to_mpz(bu[i]), denom);
      coeffs[i].canonicalize();
    }
    return CycloNumber::from_buckets(p, n, coeffs);
  };

  // canonical value = full-range sum / 2^{1 + [p = 1 mod 4]}; the computed
  // sum already carries a factor 1/2 per exploited pairing
  int halvings = 1 + (p % 4 == 1 ? 1 : 0) - (pair_i ? 1 : 0);
  mpz_class denom = mpz_class(2) * f;
  for (int i = 0; i < halvings; ++i) denom *= 2;

  LambdaReport report;
  report.D = D;
  report.D1 = -ellz;
  report.D2 = -4;
  report.p = p;
  report.n = n;
  report.params = params;
  report.fast_path = true;
  report.value = to_cyclo(buckets, denom);
  if (!report.value.is_integral())
    throw internal_error("fast-path value is not an algebraic integer");
  report.valuation = pn_valuation(report.value);
  report.phi_pn = euler_phi_prime_power(p, n);
  report.verdict = verdict_from(report.valuation, report.phi_pn);
  attach_split(report);
  report.millis = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();

  if (raw) {
    raw->i_halved = pair_i;
    raw->k_halved = want_half_k;
    raw->sum = to_cyclo(want_half_k ? buckets_hk : buckets, mpz_class(2) * f);
  }
  return report;
}

IterateResult iterate_n(const mpz_class& D, long p, int n_max,
                        const LambdaOptions& opts) {
  IterateResult out;
  for (int n = 1; n <= n_max; ++n) {
    out.trace.push_back(lambda_sum_general(D, p, n, opts));
    if (out.trace.back().verdict.kind == VerdictKind::Exact) break;
  }
  return out;
}

SplitResult split_lambdas(const LambdaReport& report, const mpz_class& D1,
                          const mpz_class& D2) {
  if (report.verdict.kind != VerdictKind::Exact)
    throw precondition_error("split needs an exact total");
  long total = report.verdict.amount;
  long p = report.p;

  auto constrain = [&](const mpz_class& Di) {
    FactorConstraint c;
    int kr = kronecker_symbol(Di, p);
    long h = imaginary_class_number(Di);
    if (kr == -1 && h % p != 0) {
      c.exact = 0;
      c.lower = 0;
      c.reason = "inert-and-class-number-coprime";
    } else if (kr == 1) {
      c.lower = 1;
      c.reason = h % p == 0 ? "split-and-p-divides-class-number" : "p-splits";
    } else if (h % p == 0) {
      c.lower = 1;
      c.reason = "p-divides-class-number";
    } else {
      c.reason = "unconstrained";
    }
    return c;
  };

  SplitResult s;
  s.first = constrain(D1);
  s.second = constrain(D2);

  if (total == 0) {
    if (s.first.lower > 0 || s.second.lower > 0)
      throw internal_error("zero total contradicts a positive lower bound");
    s.first.exact = 0;
    s.second.exact = 0;
  } else if (s.first.exact && !s.second.exact) {
    s.second.exact = total - *s.first.exact;
    s.second.reason += "+residual";
  } else if (s.second.exact && !s.first.exact) {
    s.first.exact = total - *s.second.exact;
    s.first.reason += "+residual";
  } else if (!s.first.exact && !s.second.exact &&
             s.first.lower + s.second.lower == total) {
    s.first.exact = s.first.lower;
    s.second.exact = s.second.lower;
    s.first.reason += "+bounds-saturate";
    s.second.reason += "+bounds-saturate";
  }

  if (s.first.exact && s.second.exact &&
      (*s.first.exact + *s.second.exact != total || *s.first.exact < 0 ||
       *s.second.exact < 0))
    throw internal_error("split inconsistent with the exact total");
  return s;
}

long ferrero_kida_lambda2(const mpz_class& Delta) {
  if (Delta >= 0) throw precondition_error("out of domain: Delta must be negative");
  if (Delta == -4 || Delta == -8)
    throw precondition_error("out of domain: Delta = -4 and -8 are excluded");
  if (!is_fundamental_discriminant(Delta))
    throw precondition_error("not fundamental");

  mpz_class rest = abs(Delta);
  while (rest % 2 == 0) rest /= 2;
  long out = -1;
  for (mpz_class d = 3; d * d <= rest; d += 2) {
    if (rest % d != 0) continue;
    while (rest % d == 0) rest /= d;
    mpz_class v = d * d - 1;
    long e = 0;
    while (v % 2 == 0) {
      v /= 2;
      ++e;
    }
    out += checked_pow_long(2, static_cast<int>(e - 3));
  }
  if (rest > 1) {
    mpz_class v = rest * rest - 1;
    long e = 0;
    while (v % 2 == 0) {
      v /= 2;
      ++e;
    }
    out += checked_pow_long(2, static_cast<int>(e - 3));
  }
  return out;
}

}  // namespace lambdacf
