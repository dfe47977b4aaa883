#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "lambdacf/cyclo.hpp"
#include "lambdacf/quadring.hpp"

namespace lambdacf {

enum class VerdictKind { Exact, LowerBound };

struct Verdict {
  VerdictKind kind = VerdictKind::LowerBound;
  long amount = 0;  // the exact sum, or the proven lower bound

  bool operator==(const Verdict&) const = default;
};

struct FactorConstraint {
  long lower = 0;
  std::optional<long> exact;
  std::string reason;
};

struct SplitResult {
  FactorConstraint first, second;

  bool resolved() const { return first.exact && second.exact; }
};

struct LambdaReport {
  mpz_class D, D1, D2;
  long p = 0;
  int n = 0;
  CycloNumber value;
  std::optional<long> valuation;  // nullopt = +infinity (zero value)
  long phi_pn = 0;
  Verdict verdict;
  std::optional<SplitResult> split;
  PipelineParams params;
  bool fast_path = false;
  long psi_twist = 2;  // Dedekind-sum character: psi(g) = zeta^twist
  double millis = 0.0;

  LambdaReport() : value(3, 1) {}
};

struct LambdaOptions {
  std::optional<long> g_override;
  int threads = 1;
  long twist = 2;  // character used inside the Dedekind sums
};

// The sum lambda_p(D1) + lambda_p(D2) at level n via the Dedekind-sum
// aggregate over the eta/g class parametrization. The reported value is
// normalized by 2^{1-u} so that it equals L(0, chi_n) exactly; it is asserted
// to be an algebraic integer.
LambdaReport lambda_sum_general(const mpz_class& D, long p, int n,
                                const LambdaOptions& opts = {});

struct FastOptions {
  std::optional<long> g_override;
  int threads = 1;
  // raw-sum range reductions; the canonical reported value is the same
  // either way, these only change how much work is done and which raw sum
  // is exposed
  bool half_k = false;
  bool half_i = false;
};

struct FastRawSum {
  CycloNumber sum;           // the literal convergent-carry sum as computed
  bool k_halved = false;
  bool i_halved = false;

  FastRawSum() : sum(3, 1) {}
};

// Corollary route for D = 4*ell with p inert in Q(sqrt(-ell)): no eta, only
// convergent residues and carries. Canonical value = full sum / 2^{1+[p=1 mod 4]},
// matching the halved form; raw carries the literal computed sum.
LambdaReport lambda_sum_inert_fast(long ell, long p, int n,
                                   const FastOptions& opts = {},
                                   FastRawSum* raw = nullptr);

struct IterateResult {
  std::vector<LambdaReport> trace;  // one report per level n = 1, 2, ...

  const LambdaReport* final_report() const {
    return trace.empty() ? nullptr : &trace.back();
  }
};

// Raises n until the valuation drops below phi(p^n) or n_max is exhausted.
IterateResult iterate_n(const mpz_class& D, long p, int n_max,
                        const LambdaOptions& opts = {});

// Pins lambda_p(D1), lambda_p(D2) from the exact total where the standard
// criteria force them; otherwise returns the constraint set.
SplitResult split_lambdas(const LambdaReport& report, const mpz_class& D1,
                          const mpz_class& D2);

// lambda_2 of an imaginary quadratic field by the closed formula
// -1 + sum over odd primes l | Delta of 2^{ord_2(l^2 - 1) - 3}
long ferrero_kida_lambda2(const mpz_class& Delta);

}  // namespace lambdacf
