#include "lambdacf/oracles.hpp"

#include <map>
#include <set>
#include <vector>

#include "lambdacf/cfrac.hpp"
#include "lambdacf/numutil.hpp"

namespace lambdacf {

int kronecker_symbol(const mpz_class& a, const mpz_class& n) {
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

bool is_fundamental_discriminant(const mpz_class& Delta) {
  if (Delta == 1 || Delta == 0) return false;
  auto squarefree = [](mpz_class m) {
    m = abs(m);
    for (mpz_class d = 2; d * d <= m; ++d)
      if (m % (d * d) == 0) return false;
    return true;
  };
  mpz_class r4 = ((Delta % 4) + 4) % 4;
  if (r4 == 1) return squarefree(Delta);
  if (r4 == 0) {
    mpz_class m = Delta / 4;
    mpz_class m4 = ((m % 4) + 4) % 4;
    return (m4 == 2 || m4 == 3) && squarefree(m);
  }
  return false;
}

mpq_class bernoulli_L0(const mpz_class& Delta) {
  if (!is_fundamental_discriminant(Delta))
    throw precondition_error("not fundamental");
  long f = mpz_class(abs(Delta)).get_si();
  mpz_class s = 0;
  for (long t = 1; t <= f; ++t)
    s += mpz_class(kronecker_symbol(Delta, t)) * t;
  mpq_class out(-s, mpz_class(f));
  out.canonicalize();
  return out;
}

CycloNumber bernoulli_L0(const mpz_class& Delta, const CharacterSpec& spec) {
  if (!is_fundamental_discriminant(Delta))
    throw precondition_error("not fundamental");
  if (Delta % spec.p() == 0)
    throw precondition_error("p must not divide the discriminant");
  long fd = mpz_class(abs(Delta)).get_si();
  long fp = spec.conductor();
  long f = fd * fp;
  long pn = spec.order();

  std::vector<mpz_class> buckets(static_cast<std::size_t>(pn), mpz_class(0));
  for (long t = 1; t <= f; ++t) {
    long e = spec.exponent_at(t % fp);
    if (e < 0) continue;
    int eps = kronecker_symbol(Delta, t);
    if (eps == 0) continue;
    if (eps > 0)
      buckets[static_cast<std::size_t>(e)] += t;
    else
      buckets[static_cast<std::size_t>(e)] -= t;
  }
  std::vector<mpq_class> coeffs(buckets.size());
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    coeffs[i] = mpq_class(-buckets[i], mpz_class(f));
    coeffs[i].canonicalize();
  }
  return CycloNumber::from_buckets(spec.p(), spec.n(), coeffs);
}

long imaginary_class_number(const mpz_class& Delta) {
  if (Delta >= 0) throw precondition_error("expects a negative discriminant");
  if (!is_fundamental_discriminant(Delta))
    throw precondition_error("not fundamental");
  long h = 0;
  mpz_class bound = isqrt_floor(-Delta / 3);
  for (mpz_class a = 1; a <= bound; ++a) {
    for (mpz_class b = -a + 1; b <= a; ++b) {
      mpz_class t = b * b - Delta;
      if (t % (4 * a) != 0) continue;
      mpz_class c = t / (4 * a);
      if (c < a) continue;
      if (b < 0 && (-b == a || a == c)) continue;  // counted with b >= 0
      ++h;
    }
  }
  return h;
}

namespace {

struct Form {
  mpz_class a, b, c;
  auto operator<=>(const Form&) const = default;
};

// reduction step for indefinite forms
Form rho(const Form& f, const mpz_class& D) {
  mpz_class s = isqrt_floor(D);
  const mpz_class& c = f.c;
  mpz_class ac = abs(c);
  // r = -b mod 2|c|, placed in the reduced window
  mpz_class lo;
  if (ac > s)
    lo = -ac + 1;  // -|c| < r <= |c|
  else
    lo = s - 2 * ac + 1;  // sqrt(D) - 2|c| < r < sqrt(D)
  mpz_class r = -f.b;
  mpz_class two_c = 2 * ac;
  mpz_class shift = lo - r;
  mpz_class k;
  mpz_cdiv_q(k.get_mpz_t(), shift.get_mpz_t(), two_c.get_mpz_t());
  r += k * two_c;
  return Form{c, r, (r * r - D) / (4 * c)};
}

bool is_reduced(const Form& f, const mpz_class& D) {
  if (f.b <= 0) return false;
  mpz_class b2 = f.b * f.b;
  if (b2 >= D) return false;
  // |sqrt(D) - 2|a|| < b  <=>  (sqrt(D) - b)^2 < 4a^2 < (sqrt(D)+b)^2
  mpz_class fourA2 = 4 * f.a * f.a;
  mpz_class lhs = D + b2 - fourA2;  // compare 2 b sqrt(D) against this
  // need sqrt(D)-b < 2|a| and 2|a| < sqrt(D)+b, i.e. |D + b^2 - 4a^2| < 2b sqrt(D)
  mpz_class rhs2 = 4 * b2 * D;
  return lhs * lhs < rhs2;
}

}  // namespace

long real_narrow_class_number(const mpz_class& D) {
  if (D <= 0 || !is_fundamental_discriminant(D))
    throw precondition_error("expects a positive fundamental discriminant");
  mpz_class s = isqrt_floor(D);

  std::set<Form> reduced;
  for (mpz_class b = 1; b <= s; ++b) {
    if ((D - b * b) % 2 != 0) continue;
    mpz_class M = (D - b * b) / 4;
    if ((D - b * b) % 4 != 0) continue;
    for (mpz_class d = 1; d * d <= M; ++d) {
      if (M % d != 0) continue;
      for (const mpz_class& aa : {d, M / d}) {
        mpz_class cc = -(M / aa);
        Form f1{aa, b, cc}, f2{-aa, b, -cc};
        if (is_reduced(f1, D)) reduced.insert(f1);
        if (is_reduced(f2, D)) reduced.insert(f2);
      }
    }
  }

  long cycles = 0;
  std::set<Form> visited;
  for (const auto& f : reduced) {
    if (visited.count(f)) continue;
    ++cycles;
    Form cur = f;
    do {
      visited.insert(cur);
      cur = rho(cur, D);
      if (!is_reduced(cur, D)) throw internal_error("reduction left the cycle");
    } while (!(cur == f));
  }
  return cycles;
}

bool has_negative_norm_unit(const mpz_class& D) {
  FundamentalUnit eps = fundamental_unit(D);
  mpz_class t2 = eps.value().trace() - 2;  // trace of a square root of eps
  if (t2 < 0 || !is_perfect_square(t2)) return false;
  mpz_class s = isqrt_floor(t2);
  mpz_class y2num = s * s + 4;
  if (y2num % D != 0) return false;
  return is_perfect_square(y2num / D);
}

bool real_class_number_is_one(const mpz_class& D) {
  long hplus = real_narrow_class_number(D);
  if (has_negative_norm_unit(D)) return hplus == 1;
  if (hplus % 2 != 0) throw internal_error("narrow class number should be even here");
  return hplus / 2 == 1;
}

}  // namespace lambdacf
