#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "lambdacf/errors.hpp"

namespace lambdacf {

long checked_pow_long(long base, int exp);

// p^{n-1}(p-1)
long euler_phi_prime_power(long p, int n);

// trial division; fine at the sizes this library works with
bool is_prime(long n);
std::vector<std::pair<long, int>> factorize(long n);

long mod_pow(long base, long exp, long modulus);
long mod_inverse(long a, long modulus);

inline long mod_reduce(const mpz_class& v, long modulus) {
  mpz_class r = v % modulus;
  if (r < 0) r += modulus;
  return r.get_si();
}

mpz_class isqrt_floor(const mpz_class& n);
bool is_perfect_square(const mpz_class& n);

// sign of a + b*sqrt(D) for D > 0 non-square
int sign_of_quad(const mpz_class& a, const mpz_class& b, const mpz_class& D);

}  // namespace lambdacf
