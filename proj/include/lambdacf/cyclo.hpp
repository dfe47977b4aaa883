#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "lambdacf/errors.hpp"

namespace lambdacf {

// Exact element of Q(zeta_{p^n}) in the power basis 1, z, ..., z^{phi(p^n)-1},
// always reduced modulo Phi_{p^n}(x) = sum_{j<p} x^{j p^{n-1}}.
class CycloNumber {
 public:
  CycloNumber(long p, int n);  // zero

  static CycloNumber from_rational(long p, int n, const mpq_class& c);
  static CycloNumber zeta_power(long p, int n, long e);
  // sum of coeffs[e] * zeta^e for 0 <= e < p^n, reduced
  static CycloNumber from_buckets(long p, int n, const std::vector<mpq_class>& coeffs);

  long p() const { return p_; }
  int n() const { return n_; }
  long level() const;   // p^n
  long degree() const;  // phi(p^n)
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_integral() const;
  bool is_rational() const;

  CycloNumber operator+(const CycloNumber& o) const;
  CycloNumber operator-(const CycloNumber& o) const;
  CycloNumber operator*(const CycloNumber& o) const;
  CycloNumber scaled(const mpq_class& c) const;
  bool operator==(const CycloNumber& o) const = default;

  // zeta -> zeta^a for a prime to p
  CycloNumber galois(long a) const;

  std::string str() const;

  // exact coefficient list, every entry "num/den"
  std::vector<std::string> serialize() const;
  static CycloNumber deserialize(long p, int n, const std::vector<std::string>& coeffs);

 private:
  void require_same_level(const CycloNumber& o) const;

  long p_;
  int n_;
  std::vector<mpq_class> c_;
};

// Order at the unique prime above p (generated by 1 - zeta), computed as
// ord_p of the absolute norm via a resultant with Phi_{p^n}. Input must have
// integral coefficients. nullopt encodes +infinity (the zero element).
std::optional<long> pn_valuation(const CycloNumber& x);

// Same valuation by repeated exact division by (1 - zeta); the redundant
// route used to cross-check the resultant path.
std::optional<long> pn_valuation_by_division(const CycloNumber& x);

bool is_galois_conjugate(const CycloNumber& a, const CycloNumber& b);

// Dirichlet character of conductor p^{n+1} and order p^n determined by
// psi(g) = zeta^twist. Values are looked up through a dense index table.
class CharacterSpec {
 public:
  CharacterSpec(long p, int n, long g, long twist);

  long p() const { return p_; }
  int n() const { return n_; }
  long g() const { return g_; }
  long twist() const { return twist_; }
  long conductor() const { return f_; }   // p^{n+1}
  long order() const { return pn_; }      // p^n

  // dlog base g of t mod p^{n+1}, or -1 when p | t
  long index_of(long t) const;
  // exponent e with psi(t) = zeta^e, or -1 when psi(t) = 0
  long exponent_at(long t) const;

  CycloNumber value(const mpz_class& t) const;

 private:
  long p_;
  int n_;
  long g_;
  long twist_;
  long f_;
  long pn_;
  std::vector<long> index_;  // index_[t] = dlog or -1
};

CycloNumber psi_value(const mpz_class& t, const CharacterSpec& spec);

}  // namespace lambdacf
