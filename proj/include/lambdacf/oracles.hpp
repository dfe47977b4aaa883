#pragma once

#include <gmpxx.h>

#include "lambdacf/cyclo.hpp"

namespace lambdacf {

// Kronecker symbol (a | n) with the standard conventions at 2, -1 and 0
int kronecker_symbol(const mpz_class& a, const mpz_class& n);

bool is_fundamental_discriminant(const mpz_class& Delta);

// L(0, eps_Delta) = -B_{1, eps_Delta} as an exact rational
mpq_class bernoulli_L0(const mpz_class& Delta);

// L(0, eps_Delta * psi) = -B_{1, eps psi} over the conductor |Delta| p^{n+1}
CycloNumber bernoulli_L0(const mpz_class& Delta, const CharacterSpec& spec);

// class number of Q(sqrt(Delta)), Delta < 0 fundamental, by counting
// reduced positive definite forms
long imaginary_class_number(const mpz_class& Delta);

// narrow class number of the real quadratic field of discriminant D,
// from cycles of reduced indefinite forms under the reduction operator
long real_narrow_class_number(const mpz_class& D);

// detects a unit of norm -1 from the totally positive fundamental unit:
// eps = eta^2 forces tr(eta)^2 = tr(eps) - 2
bool has_negative_norm_unit(const mpz_class& D);

// wide class number h = h_narrow / 2 when no unit of negative norm exists
bool real_class_number_is_one(const mpz_class& D);

}  // namespace lambdacf
