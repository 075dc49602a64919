#pragma once
// Exact rational arithmetic, combinatorial coefficients and Bernoulli numbers:
// the scalar layer everything else builds on.  Backed by GMP (mpz/mpq), which
// keeps rationals canonical (lowest terms, positive denominator) by
// construction.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace qeis {

using Int = mpz_class;
using Rational = mpq_class;

// Parse "p", "-p" or "p/q" into a canonical rational.  Throws
// std::invalid_argument on malformed input or zero denominator.
Rational rational_from_string(const std::string& s);

// Canonical "p" or "p/q" form (denominator omitted when it is 1).
std::string rational_to_string(const Rational& r);

Int factorial(unsigned long n);
Int binomial(unsigned long n, unsigned long k);

// (sum parts)! / prod(parts_j!) as an exact integer; empty input gives 1.
Int multinomial(const std::vector<unsigned long>& parts);

// Probe for the divisibility law: with n = sum(parts), does n/gcd(parts)
// divide multinomial(parts)?  Expected to hold for every valid input; exists
// so tests can hammer it.  Requires a nonempty list of positive entries.
bool check_multinomial_divisibility(const std::vector<unsigned long>& parts);

// n-th Bernoulli number with the B_1 = -1/2 convention (the constant term of
// the standard Bernoulli polynomial B_n(X); sign conventions differ across
// the literature, so it is fixed here once).  Computed by the recurrence
// sum_{j=0..n} C(n+1,j) B_j = 0, memoised; the cache is safe under
// concurrent use.
Rational bernoulli(unsigned long n);

// Bernoulli polynomial value B_n(x) = sum_k C(n,k) B_k x^(n-k), exact.
Rational bernoulli_poly(unsigned long n, const Rational& x);

// Exact p^e for rational p and nonnegative e.
Rational rational_pow(const Rational& base, unsigned long e);

// Exact m^e for possibly negative integral m.
Int int_pow(const Int& base, unsigned long e);

}  // namespace qeis
