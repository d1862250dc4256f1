#pragma once

#include "subfpt/fpt_models.hpp"
#include "subfpt/stable_subordinator.hpp"

namespace subfpt {

// Short-time law of the subordinated FPT: P(tau <= t) ~ A t^p exp(-C/t^beta).
struct ShortTimeSub {
    double A;
    double p;
    double C;  // physical-time units
    double beta;
};

struct LogLift {
    double beta;
    double C;
};

// Log-scale lifting map: (theta, kappa, C1) -> (beta, C) with
// beta = alpha*theta/(alpha+theta), C = C1 (kappa theta/(C1 alpha))^{alpha/(alpha+theta)} (alpha+theta)/theta.
LogLift lift_log(double alpha, double theta, double kappa, double C1);

// Full prefactor lifting map from the raw tail constants.
ShortTimeSub lift_full(double alpha, double theta, double kappa, double B,
                       double xi, double A1, double p1, double C1);

// Specialization to the stable constants: beta = alpha/(2-alpha), p = beta*p1,
// C = (2-alpha) alpha^{alpha/(2-alpha)} C1^{1/(2-alpha)},
// A = A1 (alpha^{-alpha/(2-alpha)} C1^{(1-alpha)/(2-alpha)})^{p1} / sqrt(alpha(2-alpha)).
// alpha = 1 is the exact identity.
ShortTimeSub lift_short_time(double alpha, const ShortTimeConstants& st);

// t_alpha = (alpha^alpha (2-alpha)^{2-alpha} L^2/(4K))^{1/alpha}; C = t_alpha^beta.
double characteristic_timescale(double alpha, double L, double K);

// Leading-order moment (C/ln N)^{m/beta}; independent of k, A, p by design.
// N is accepted as a real >= 2.
double leading_moment(int k, double N, double m, const ShortTimeSub& sub);

enum class RescalingScheme { lambert, loglog };

struct GumbelRescaling {
    double a_N;
    double b_N;
    RescalingScheme scheme;
};

// Gumbel centering/scaling sequences.
// lambert: W = W0((C beta/p)(AN)^{beta/p}) if p > 0, W-1(...) if p < 0,
//          b_N = (C beta/(p W))^{1/beta}, a_N = b_N/(p(1+W));
//          p = 0 closed form b_N = (C/ln(AN))^{1/beta}, a_N = b_N/(beta ln(AN)).
// loglog:  a_N = C^{1/beta}/(beta (ln N)^{1+1/beta}),
//          b_N = (C/ln N + C p lnln N/(beta ln^2 N) - C ln(A C^{p/beta})/ln^2 N)^{1/beta}.
// Throws std::domain_error naming the offending N when a branch condition
// fails (Lambert argument outside the branch, or the loglog radicand <= 0).
GumbelRescaling gumbel_rescaling(double N, const ShortTimeSub& sub,
                                 RescalingScheme scheme);

// Standardized minimum-type Gumbel: P(X > x) = exp(-exp(x)).
double gumbel_survival(double x);

// Limit density of the k-th rescaled order statistic: exp(kx - e^x)/(k-1)!.
double xk_density(int k, double x);

struct MomentExpansion {
    double mean;      // b_N + psi(k) a_N  (k = 1: b_N - gamma a_N)
    double variance;  // psi'(k) a_N^2
};

MomentExpansion moment_expansion(int k, const GumbelRescaling& r);

// E[T_{k,N}] - E[T_{1,N}] = H_{k-1} a_N.
double expected_gap_from_first(int k, const GumbelRescaling& r);

// Varadhan-type lift of a log-density constant: same map as lift_log
// specialized to the stable constants; beta = alpha/(2-alpha).
LogLift varadhan_lift(double alpha, double C1_density);

struct WeibullLimit {
    double shape;  // alpha/2
    double scale;  // (A N)^{-2/alpha}
    double mean;   // Gamma(1 + 2/alpha) A^{-2/alpha} N^{-2/alpha}
    double A;      // (2/(alpha Gamma(alpha/2))) (d/L) sqrt(K)
};

// Uniform-initial-condition fastest-FPT limit on a d-factor geometry of size L.
WeibullLimit weibull_uniform_limit(double alpha, int d, double L, double K,
                                   double N);

struct FinitenessThreshold {
    double tail_exponent;  // alpha r/(1+r)
    double N_min;          // (1+r)/(alpha r)
};

FinitenessThreshold finiteness_threshold(double alpha, double r);

}  // namespace subfpt
