#pragma once

#include "subfpt/accuracy.hpp"

namespace subfpt {

// Complementary error function, absolute error <= 1e-14 on the real line and
// relative error ~1e-13 for x in [0, 26].
double erfc(double x);

// erf with full relative precision near 0 (where 1 - erfc cancels).
double erf(double x);

// Scaled complement e^{x^2} erfc(x); requires x >= 0.
double erfcx(double x);

// Inverse of erfc on (0, 2); throws std::domain_error outside.
double erfc_inv(double y);

// log Gamma for x > 0; throws std::domain_error for x <= 0.
double log_gamma(double x);

// Gamma for x > 0; throws std::domain_error for x <= 0.
double gamma(double x);

// Gamma extended to negative non-integer arguments by reflection; throws
// std::domain_error at the poles x = 0, -1, -2, ...
double gamma_reflect(double x);

// Digamma / trigamma for x > 0; throw std::domain_error for x <= 0.
double digamma(double x);
double trigamma(double x);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x)/Gamma(a), a > 0,
// x >= 0. Lower series for x < a + 1, Lentz continued fraction otherwise;
// throws std::domain_error on invalid arguments.
double gamma_q(double a, double x);

// Lambert W, principal branch: W0(z) for z >= -1/e, W0 e^{W0} = z to 1e-12
// relative. Throws std::domain_error for z < -1/e.
double lambert_w0(double z);

// Lambert W, lower branch: W-1(z) for -1/e <= z < 0. Throws std::domain_error
// outside that interval.
double lambert_w_m1(double z);

// W0(e^{ln_z}): principal branch with the argument given in log form, usable
// when e^{ln_z} would overflow a double.
double lambert_w0_exp(double ln_z);

// Generalized hypergeometric 1F3(a; b1, b2, b3; z) by direct series with term
// recurrence. Truncates when |term| < abs_tol * |partial sum|; throws
// std::runtime_error if max_iter terms do not suffice, std::domain_error if a
// lower parameter is a non-positive integer or |z| exceeds the cancellation
// guard (745, where double-precision alternating sums lose all digits).
double hyp1f3(double a, double b1, double b2, double b3, double z,
              const Accuracy& acc = {});

// Harmonic number H_k, k >= 0 (H_0 = 0); throws std::domain_error for k < 0.
double harmonic(int k);

}  // namespace subfpt
