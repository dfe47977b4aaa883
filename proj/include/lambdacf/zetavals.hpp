#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "lambdacf/cfrac.hpp"
#include "lambdacf/cyclo.hpp"

namespace lambdacf {

// A narrow ray class of conductor (modulus) represented by a totally
// positive generator alpha = x + y*omega that is a unit mod the conductor.
// modulus = p^{n+1} in the pipeline; modulus = 1 gives the trivial-conductor
// classes where every c_k vanishes.
struct RayClassRep {
  mpz_class x, y;
  long modulus = 1;
};

// c_k in [0,1), exact, indexed from k = -2
struct CkSequence {
  std::vector<mpq_class> values;  // values[i] is c_{i-2}

  const mpq_class& at(long k) const { return values.at(static_cast<std::size_t>(k + 2)); }
  long count() const { return static_cast<long>(values.size()) - 2; }
};

// c_{-2} = {(x - (b0 - delta) y)/f}, c_k = {-(x q_k + y p_k)/f} for k >= -1.
// Produces c_{-2} .. c_{count-1}.
CkSequence c_sequence(const RayClassRep& rep, const MinusCF& cf, long count);

// zeta(0, [(alpha)]) as the Bernoulli-polynomial sum over rn*m terms
mpq_class yamamoto_zeta0(const RayClassRep& rep, const MinusCF& cf, long rn);

// the B1^2 variant: returns {sum, C} with sum + C = yamamoto_zeta0 and
// C = -(rn/24) * sum of the period quotients
std::pair<mpq_class, mpq_class> yamamoto_zeta0_prep(const RayClassRep& rep,
                                                    const MinusCF& cf, long rn);

// D_psi(a, b) = sum_t psi(t) ({at/f} - 1/2)({bt/f} - 1/2), f = p^{n+1}
CycloNumber twisted_dedekind(long a, long b, const CharacterSpec& spec);

// diagonal closed form psi_bar(a) / p^{2n+2} * sum_t psi(t) t^2
CycloNumber dedekind_diag_closed_form(long a, const CharacterSpec& spec);

}  // namespace lambdacf
