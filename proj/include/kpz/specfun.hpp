#pragma once

// Scalar special functions: Airy Ai / Ai', the standard normal CDF, and the
// Gumbel weight G(r) = exp(-exp(-r)).

namespace kpz::specfun {

// Airy function Ai(x), double precision, absolute error <~ 1e-10 on [-30, 30].
// Maclaurin two-series split for |x| below the switch point, Poincare
// asymptotic expansions (optimally truncated) beyond it.
double airy_ai(double x);

// Derivative Ai'(x), same accuracy contract as airy_ai.
double airy_ai_prime(double x);

// Standard normal CDF, Phi(s) = erfc(-s/sqrt(2))/2.
double gaussian_cdf(double s);

// G(r) = exp(-exp(-r)); underflows to 0 for r <~ -6.5, saturates to 1 for
// large r, both without intermediate overflow.
double gumbel_weight(double r);

} // namespace kpz::specfun
