#include "lambdacf/numutil.hpp"

#include <limits>

namespace lambdacf {

long checked_pow_long(long base, int exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(exp));
  if (!r.fits_slong_p()) throw precondition_error("power exceeds machine range");
  return r.get_si();
}

long euler_phi_prime_power(long p, int n) {
  if (n < 1) throw precondition_error("prime power exponent must be >= 1");
  return checked_pow_long(p, n - 1) * (p - 1);
}

bool is_prime(long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<long, int>> factorize(long n) {
  if (n < 1) throw precondition_error("factorize expects a positive integer");
  std::vector<std::pair<long, int>> out;
  for (long d = 2; d * d <= n; d == 2 ? d = 3 : d += 2) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

long mod_pow(long base, long exp, long modulus) {
  if (modulus <= 0) throw precondition_error("modulus must be positive");
  unsigned long long m = static_cast<unsigned long long>(modulus);
  unsigned long long b = static_cast<unsigned long long>(((base % modulus) + modulus) % modulus);
  unsigned long long r = 1 % m;
  unsigned long long e = static_cast<unsigned long long>(exp);
  while (e) {
    if (e & 1) r = (__uint128_t)r * b % m;
    b = (__uint128_t)b * b % m;
    e >>= 1;
  }
  return static_cast<long>(r);
}

long mod_inverse(long a, long modulus) {
  long t = 0, nt = 1, r = modulus, nr = ((a % modulus) + modulus) % modulus;
  while (nr != 0) {
    long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw precondition_error("not invertible modulo modulus");
  return t < 0 ? t + modulus : t;
}

mpz_class isqrt_floor(const mpz_class& n) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const mpz_class& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

int sign_of_quad(const mpz_class& a, const mpz_class& b, const mpz_class& D) {
  int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with b^2 D
  mpz_class lhs = a * a, rhs = b * b * D;
  int c = cmp(lhs, rhs);
  if (c == 0) throw internal_error("sqrt(D) with D a perfect square");
  // |a| > |b| sqrt(D) ? sign of a : sign of b sqrt(D)
  return c > 0 ? sa : sb;
}

}  // namespace lambdacf
