#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "lambdacf/cfrac.hpp"
#include "lambdacf/errors.hpp"

namespace lambdacf {

// x + y*omega in O_K/(p^k), omega = (delta + sqrt(D))/2
struct RingElem {
  long x = 0, y = 0;
  long modulus = 0;  // tags the ring; mixing moduli is an error

  bool operator==(const RingElem&) const = default;
};

// O_K/(p^k) for an odd prime p not dividing D. All arithmetic is exposed as
// methods so elements stay plain value pairs.
class QuadRing {
 public:
  QuadRing(const mpz_class& D, long p, int k);

  long p() const { return p_; }
  int k() const { return k_; }
  long modulus() const { return modulus_; }
  int delta() const { return delta_; }
  const mpz_class& discriminant() const { return D_; }
  bool inert() const { return inert_; }

  RingElem make(const mpz_class& x, const mpz_class& y) const;
  RingElem from_unit(const FundamentalUnit& eps) const;
  RingElem one() const { return RingElem{1 % modulus_, 0, modulus_}; }

  RingElem add(const RingElem& a, const RingElem& b) const;
  RingElem sub(const RingElem& a, const RingElem& b) const;
  RingElem mul(const RingElem& a, const RingElem& b) const;
  RingElem pow(const RingElem& a, const mpz_class& e) const;
  RingElem conjugate(const RingElem& a) const;
  RingElem inverse(const RingElem& a) const;
  long norm(const RingElem& a) const;
  bool is_unit(const RingElem& a) const;
  bool is_rational(const RingElem& a) const { return a.y == 0; }

  // |(O_K/(p^k))^x| and its exponent, split by inert/split shape
  mpz_class unit_group_order() const;
  long unit_group_exponent() const;

  // least t >= 1 with a^t = 1
  long order_of(const RingElem& a) const;

  // packed key for hash sets
  long key(const RingElem& a) const { return a.x * modulus_ + a.y; }

 private:
  void check(const RingElem& a) const;

  mpz_class D_;
  int delta_;
  long p_;
  int k_;
  long modulus_;
  long wsq_;  // (D - delta)/4 mod p^k
  bool inert_;
};

// smallest g >= 2 generating (Z/p^2)^x, hence (Z/p^k)^x for every k
long primitive_root(long p);

// discrete log of t to base g in (Z/p^k)^x via Pohlig-Hellman with
// baby-step giant-step per prime factor
long dlog(long t, long g, long p, int k);

struct AssumptionB {
  long r0 = 0;        // order of eps mod p
  bool pass = false;  // eps^{r0} != 1 in O_K/(p^2)
  RingElem witness;   // eps^{r0} mod p^2
};

AssumptionB check_assumption_b(const mpz_class& D, long p);

struct EtaResult {
  RingElem cls;          // generator of the quotient, order prime to p
  mpz_class lift_x, lift_y;  // totally positive lift
  bool via_hensel = false;
};

// Generator of (O_K/(p^{n+1}))^x / <eps, g>. Candidates are projected onto
// the prime-to-p part before testing; the class weights in the main formula
// require eta itself (not just its class) to have order prime to p.
EtaResult find_eta(const QuadRing& ring, const RingElem& eps_cls, long g,
                   long rn, long v);

struct PipelineParams {
  mpz_class D;
  int delta = 0;
  long p = 0;
  int n = 0;
  long g = 0;
  FundamentalUnit eps;
  long r0 = 0, rn = 0;
  int u = 0;
  long v = 0;
  EtaResult eta;
  bool inert = false;
  std::optional<long> e1, e2;  // inert fast path only
};

// Runs every hypothesis check (Assumption B, order structure) and assembles
// the data the main formula consumes. g_override must be a primitive root.
PipelineParams build_pipeline_params(const mpz_class& D, long p, int n,
                                     std::optional<long> g_override = std::nullopt);

}  // namespace lambdacf
