#include "subfpt/special_functions.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace subfpt {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kInvE = 0.36787944117144232160;

// Maclaurin series of erf; alternating but with mild cancellation for |x| < 1.
double erf_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= -x2 / n;
        const double add = term / (2 * n + 1);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return sum * 2.0 / kSqrtPi;
}

// erf(x) = (2x/sqrt(pi)) e^{-x^2} M(x) with M a positive-term series;
// no cancellation, used on [1, 2) where both the Maclaurin series and the
// continued fraction are weakest.
double erf_scaled_series(double x) {
    const double two_x2 = 2.0 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < 300; ++n) {
        term *= two_x2 / (2 * n + 3);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return 2.0 * x / kSqrtPi * std::exp(-x * x) * sum;
}

// Laplace continued fraction for erfcx(x), reliable for x >= 2. Modified
// Lentz evaluation of 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
double erfcx_cf(double x) {
    const double tiny = 1e-300;
    double f = x > tiny ? x : tiny;
    double c = f;
    double d = 0.0;
    for (int n = 1; n < 400; ++n) {
        const double a_n = 0.5 * n;
        d = x + a_n * d;
        if (std::abs(d) < tiny) d = tiny;
        c = x + a_n / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return 1.0 / (f * kSqrtPi);
}

}  // namespace

double erf(double x) {
    if (x < 0.0) return -erf(-x);
    if (x < 1.0) return erf_series(x);
    return 1.0 - erfc(x);
}

double erfc(double x) {
    if (std::isnan(x)) return x;
    if (x < 0.0) return 2.0 - erfc(-x);
    if (x < 1.0) return 1.0 - erf_series(x);
    if (x < 2.0) return 1.0 - erf_scaled_series(x);
    if (x > 27.3) return 0.0;  // below the smallest positive subnormal double
    return std::exp(-x * x) * erfcx_cf(x);
}

double erfcx(double x) {
    if (!(x >= 0.0)) throw std::domain_error("erfcx requires x >= 0");
    if (x < 2.0) return std::exp(x * x) * erfc(x);
    return erfcx_cf(x);
}

double erfc_inv(double y) {
    if (!(y > 0.0 && y < 2.0)) throw std::domain_error("erfc_inv requires 0 < y < 2");
    if (y == 1.0) return 0.0;
    if (y > 1.0) return -erfc_inv(2.0 - y);

    // Initializer: Acklam's rational probit approximation (~1e-9 relative),
    // via x = -probit(y/2)/sqrt(2); then Newton on erfc itself.
    const double p = 0.5 * y;
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    double z;  // probit(p), p <= 1/2 here
    if (p < 0.02425) {
        const double q = std::sqrt(-2.0 * std::log(p));
        z = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else {
        const double q = p - 0.5;
        const double r = q * q;
        z = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    double x = -z / std::sqrt(2.0);

    // Newton in log space (overflow-free): g(x) = ln erfc(x) - ln y,
    // g'(x) = -2/(sqrt(pi) erfcx(x)).
    double lo = 0.0, hi = 30.0;  // erfc is <= 1 here, so the root is >= 0
    const double ln_y = std::log(y);
    for (int it = 0; it < 60; ++it) {
        if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        const double ex = erfcx(x);
        const double g = std::log(ex) - x * x - ln_y;
        if (g > 0.0) lo = x; else hi = x;  // erfc decreasing: g>0 means x too small
        const double step = g * ex * kSqrtPi / 2.0;
        const double x_new = x + step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) { x = x_new; break; }
        x = x_new;
    }
    return x;
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma requires x > 0");
    // Lanczos, g = 7, 9 coefficients (Godfrey's set): ~1e-15 relative.
    static const double lg[9] = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // reflection keeps the Lanczos argument >= 0.5
        return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double sum = lg[0];
    for (int i = 1; i < 9; ++i) sum += lg[i] / (z + i);
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

double gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma requires x > 0");
    return std::exp(log_gamma(x));
}

double gamma_reflect(double x) {
    if (x > 0.0) return gamma(x);
    if (x == std::floor(x)) throw std::domain_error("gamma_reflect pole at non-positive integer");
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return M_PI / (std::sin(M_PI * x) * gamma(1.0 - x));
}

double digamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("digamma requires x > 0");
    double result = 0.0;
    while (x < 8.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    // asymptotic series with Bernoulli coefficients, x >= 8
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv;
    result -= inv2 * (1.0 / 12 + inv2 * (-1.0 / 120 + inv2 * (1.0 / 252 +
              inv2 * (-1.0 / 240 + inv2 * (1.0 / 132 + inv2 * (-691.0 / 32760 +
              inv2 * (1.0 / 12)))))));
    return result;
}

double trigamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("trigamma requires x > 0");
    double result = 0.0;
    while (x < 8.0) {
        result += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += inv * (1.0 + 0.5 * inv + inv2 * (1.0 / 6 + inv2 * (-1.0 / 30 +
              inv2 * (1.0 / 42 + inv2 * (-1.0 / 30 + inv2 * (5.0 / 66 +
              inv2 * (-691.0 / 2730 + inv2 * (7.0 / 6))))))));
    return result;
}

double gamma_q(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("gamma_q requires a > 0");
    if (!(x >= 0.0)) throw std::domain_error("gamma_q requires x >= 0");
    if (x == 0.0) return 1.0;
    const double log_front = a * std::log(x) - x - log_gamma(a);
    if (x < a + 1.0) {
        // lower series: P(a,x) = x^a e^{-x}/Gamma(a) sum_n x^n / (a (a+1)...(a+n))
        double term = 1.0 / a;
        double sum = term;
        for (int n = 1; n < 500; ++n) {
            term *= x / (a + n);
            sum += term;
            if (term < 1e-17 * sum) return 1.0 - sum * std::exp(log_front);
        }
        throw std::runtime_error("gamma_q series did not converge");
    }
    // modified Lentz on Q(a,x) = x^a e^{-x}/Gamma(a) * 1/(x+1-a- 1(1-a)/(x+3-a- ...))
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / (std::abs(b) > tiny ? b : tiny);
    double f = d;
    for (int n = 1; n < 500; ++n) {
        const double an = -n * (n - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) return f * std::exp(log_front);
    }
    throw std::runtime_error("gamma_q continued fraction did not converge");
}

namespace {

// Halley iteration for w e^w = z from a branch-appropriate initial guess.
double halley_w(double z, double w) {
    for (int it = 0; it < 100; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - z;
        const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
        const double step = f / denom;
        w -= step;
        if (std::abs(step) < 1e-14 * (1.0 + std::abs(w))) break;
    }
    return w;
}

// series around the branch point z = -1/e: W = -1 + p - p^2/3 + 11 p^3/72 ...
double branch_series(double p) {
    return -1.0 + p * (1.0 - p * (1.0 / 3.0 - p * (11.0 / 72.0)));
}

}  // namespace

double lambert_w0(double z) {
    if (std::isnan(z) || z < -kInvE * (1.0 + 1e-12))
        throw std::domain_error("lambert_w0 requires z >= -1/e");
    if (z == 0.0) return 0.0;
    double w;
    if (z < -0.25) {
        const double p = std::sqrt(2.0 * std::max(0.0, M_E * z + 1.0));
        if (p < 1e-8) return -1.0 + p;  // Halley denominator degenerates here
        w = branch_series(p);
    } else if (z < 2.0) {
        w = z / (1.0 + z);  // crude but inside the Halley basin
    } else {
        const double l1 = std::log(z);
        const double l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }
    return halley_w(z, w);
}

double lambert_w_m1(double z) {
    if (std::isnan(z) || z >= 0.0 || z < -kInvE * (1.0 + 1e-12))
        throw std::domain_error("lambert_w_m1 requires -1/e <= z < 0");
    double w;
    if (z > -0.27) {
        // z -> 0^-: W ~ ln(-z) - ln(-ln(-z))
        const double l1 = std::log(-z);
        const double l2 = std::log(-l1);
        w = l1 - l2 + l2 / l1;
    } else {
        const double p = std::sqrt(2.0 * std::max(0.0, M_E * z + 1.0));
        if (p < 1e-8) return -1.0 - p;
        w = -1.0 - p * (1.0 + p * (1.0 / 3.0 + p * (11.0 / 72.0)));
    }
    return halley_w(z, w);
}

double lambert_w0_exp(double ln_z) {
    if (ln_z < 700.0) return lambert_w0(std::exp(ln_z));
    // Newton on w + ln w = ln_z; no exponentials of ln_z appear.
    double w = ln_z - std::log(ln_z);
    for (int it = 0; it < 50; ++it) {
        const double step = (ln_z - w - std::log(w)) * w / (w + 1.0);
        w += step;
        if (std::abs(step) < 1e-14 * w) break;
    }
    return w;
}

double hyp1f3(double a, double b1, double b2, double b3, double z,
              const Accuracy& acc) {
    for (double b : {b1, b2, b3}) {
        if (b <= 0.0 && b == std::floor(b))
            throw std::domain_error("hyp1f3 lower parameter is a non-positive integer");
    }
    // Series guard: past |z| ~ 745 the alternating sums for z < 0 lose all
    // double-precision digits (and positive z of that size is unused here).
    if (std::abs(z) > 745.0)
        throw std::domain_error("hyp1f3 argument exceeds the series radius guard");
    if (z == 0.0) return 1.0;
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < acc.max_iter; ++n) {
        term *= (a + n) / ((b1 + n) * (b2 + n) * (b3 + n)) * z / (n + 1.0);
        sum += term;
        if (std::abs(term) < acc.abs_tol * std::abs(sum)) return sum;
    }
    throw std::runtime_error("hyp1f3 series did not converge within max_iter");
}

double harmonic(int k) {
    if (k < 0) throw std::domain_error("harmonic requires k >= 0");
    double h = 0.0;
    for (int i = k; i >= 1; --i) h += 1.0 / i;  // small terms first
    return h;
}

}  // namespace subfpt
