#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "lambdacf/errors.hpp"

namespace lambdacf {

// A real quadratic irrational (P + sqrt(D))/Q, kept normalized so that
// Q divides D - P^2. The normalization keeps the expansion state space
// finite, which is what makes cycle detection terminate.
struct QuadraticSurd {
  mpz_class P, Q, D;

  QuadraticSurd(mpz_class p, mpz_class q, mpz_class d);

  mpz_class floor() const;
  mpz_class ceil() const;

  // one expansion step: 1 / (b - x) for b = ceil(x)
  QuadraticSurd step(const mpz_class& b) const;

  double to_double() const;

  bool operator==(const QuadraticSurd&) const = default;
};

// Eventually periodic minus continued fraction
//   [[head...; period repeating]]
// with every partial quotient after the first >= 2.
struct MinusCF {
  std::vector<mpz_class> head;    // nonempty, head[0] = b_0
  std::vector<mpz_class> period;  // nonempty, minimal length
  mpz_class D;
  int delta = -1;  // 0/1 when this is the expansion of (delta + sqrt(D))/2

  std::size_t m() const { return period.size(); }

  // b_k with the periodic extension b_k = b_{k+m}
  const mpz_class& quotient(std::size_t k) const;

  // largest partial quotient in the cycle
  mpz_class max_period_quotient() const;
};

MinusCF expand_minus_cf(const QuadraticSurd& surd, std::size_t max_steps = 100000);

// Expansion of (delta + sqrt(D))/2 where delta = D mod 4 in {0, 1}.
// Checks the b_m = 2 b_0 - delta and palindrome shape before returning.
MinusCF expand_discriminant(const mpz_class& D, std::size_t max_steps = 100000);

// Rewrites a plus continued fraction [a0; a1, a2, ...] into minus partial
// quotients, emitting at most max_len of them.
std::vector<mpz_class> plus_to_minus(const std::vector<mpz_class>& plus,
                                     std::size_t max_len);

// Convergent numerators/denominators p_k, q_k of cf. Entry i corresponds to
// k = i - 1, so the first entry is the conventional (p_{-1}, q_{-1}) = (1, 0).
std::vector<std::pair<mpz_class, mpz_class>> convergents_exact(const MinusCF& cf,
                                                               std::size_t count);
std::vector<std::pair<long, long>> convergents_mod(const MinusCF& cf,
                                                   std::size_t count,
                                                   long modulus);

// x + y*omega with omega = (delta + sqrt(D))/2, exact
struct QuadInt {
  mpz_class x, y;
  mpz_class D;
  int delta = 0;

  QuadInt mul(const QuadInt& o) const;
  QuadInt pow(unsigned long e) const;
  mpz_class norm() const;
  mpz_class trace() const;
  bool totally_positive() const;
  bool is_greater_than_one() const;
};

struct FundamentalUnit {
  mpz_class a, b;  // eps = a + b*omega
  mpz_class D;
  int delta = 0;

  QuadInt value() const { return QuadInt{a, b, D, delta}; }
  mpz_class norm() const { return value().norm(); }
};

// Totally positive fundamental unit of the order of discriminant D, built
// from the purely periodic expansion of (2 b_0 - delta + sqrt(D))/2.
FundamentalUnit fundamental_unit(const mpz_class& D);

struct GenusFactorization {
  mpz_class D1, D2;  // both negative fundamental discriminants, D1*D2 = D
};

// Splits D into its two negative fundamental discriminant factors. Requires
// D > 0 divisible by a prime that is 3 mod 4.
GenusFactorization genus_factorization(const mpz_class& D);

// number of roots of unity in Q(sqrt(Delta)), Delta < 0
long roots_of_unity_count(const mpz_class& Delta);

// (w1 w2 / 24) * sum (b_k - 3); errors out unless the result is a positive
// integer, which is what the genus hypotheses guarantee.
mpz_class hz_class_number_product(const mpz_class& D);

}  // namespace lambdacf
