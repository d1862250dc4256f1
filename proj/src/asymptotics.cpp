#include "subfpt/asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "subfpt/special_functions.hpp"

namespace subfpt {

namespace {

const double kInvE = 0.36787944117144232160;  // 1/e

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("alpha must lie in (0,1]");
}

void check_n(double N) {
    if (!(N >= 2.0))
        throw std::domain_error("N must be >= 2, got " + std::to_string(N));
}

}  // namespace

LogLift lift_log(double alpha, double theta, double kappa, double C1) {
    if (!(alpha > 0.0)) throw std::domain_error("lift_log requires alpha > 0");
    if (!(theta > 0.0 && kappa > 0.0 && C1 > 0.0))
        throw std::domain_error("lift_log requires theta, kappa, C1 > 0");
    LogLift out;
    out.beta = alpha * theta / (alpha + theta);
    out.C = C1 * std::pow(kappa * theta / (C1 * alpha), alpha / (alpha + theta)) *
            (alpha + theta) / theta;
    return out;
}

ShortTimeSub lift_full(double alpha, double theta, double kappa, double B,
                       double xi, double A1, double p1, double C1) {
    if (!(alpha > 0.0 && theta > 0.0 && kappa > 0.0 && B > 0.0))
        throw std::domain_error("lift_full requires positive alpha, theta, kappa, B");
    if (!(A1 > 0.0 && C1 > 0.0))
        throw std::domain_error("lift_full requires A1 > 0 and C1 > 0");
    const LogLift log_part = lift_log(alpha, theta, kappa, C1);
    ShortTimeSub out;
    out.beta = log_part.beta;
    out.C = log_part.C;
    out.p = alpha * (2.0 * p1 * theta - 2.0 * xi + theta + 2.0) /
            (2.0 * (alpha + theta));
    out.A = A1 * B * std::sqrt(2.0 * M_PI / (C1 * alpha * (alpha + theta))) *
            std::pow(alpha * C1 / (kappa * theta),
                     (alpha + 2.0 * alpha * p1 + 2.0 * xi - 2.0) /
                         (2.0 * (alpha + theta)));
    return out;
}

ShortTimeSub lift_short_time(double alpha, const ShortTimeConstants& st) {
    check_alpha(alpha);
    if (alpha == 1.0) return {st.A1, st.p1, st.C1, 1.0};
    ShortTimeSub out;
    out.beta = alpha / (2.0 - alpha);
    out.C = (2.0 - alpha) * std::pow(alpha, alpha / (2.0 - alpha)) *
            std::pow(st.C1, 1.0 / (2.0 - alpha));
    out.p = out.beta * st.p1;
    out.A = st.A1 *
            std::pow(std::pow(alpha, -alpha / (2.0 - alpha)) *
                         std::pow(st.C1, (1.0 - alpha) / (2.0 - alpha)),
                     st.p1) /
            std::sqrt(alpha * (2.0 - alpha));
    return out;
}

double characteristic_timescale(double alpha, double L, double K) {
    check_alpha(alpha);
    if (!(L > 0.0 && K > 0.0))
        throw std::domain_error("characteristic_timescale requires L, K > 0");
    return std::pow(std::pow(alpha, alpha) * std::pow(2.0 - alpha, 2.0 - alpha) *
                        L * L / (4.0 * K),
                    1.0 / alpha);
}

double leading_moment(int k, double N, double m, const ShortTimeSub& sub) {
    if (k < 1) throw std::domain_error("leading_moment requires k >= 1");
    check_n(N);
    if (!(m >= 1.0)) throw std::domain_error("leading_moment requires m >= 1");
    (void)k;  // the leading order is rank-independent
    return std::pow(sub.C / std::log(N), m / sub.beta);
}

GumbelRescaling gumbel_rescaling(double N, const ShortTimeSub& sub,
                                 RescalingScheme scheme) {
    check_n(N);
    const double A = sub.A;
    const double p = sub.p;
    const double C = sub.C;
    const double beta = sub.beta;
    GumbelRescaling out;
    out.scheme = scheme;

    if (scheme == RescalingScheme::loglog) {
        const double ln_n = std::log(N);
        const double lnln_n = std::log(ln_n);
        out.a_N = std::pow(C, 1.0 / beta) /
                  (beta * std::pow(ln_n, 1.0 + 1.0 / beta));
        const double radicand = C / ln_n +
                                C * p * lnln_n / (beta * ln_n * ln_n) -
                                C * std::log(A * std::pow(C, p / beta)) /
                                    (ln_n * ln_n);
        if (!(radicand > 0.0))
            throw std::domain_error(
                "gumbel_rescaling: loglog radicand not positive at N = " +
                std::to_string(N));
        out.b_N = std::pow(radicand, 1.0 / beta);
        return out;
    }

    const double ln_an = std::log(A) + std::log(N);
    if (p == 0.0) {
        if (!(ln_an > 0.0))
            throw std::domain_error(
                "gumbel_rescaling: ln(AN) not positive at N = " +
                std::to_string(N));
        out.b_N = std::pow(C / ln_an, 1.0 / beta);
        out.a_N = out.b_N / (beta * ln_an);
        return out;
    }

    double w;
    if (p > 0.0) {
        // the argument (C beta/p)(AN)^{beta/p} can overflow as a double long
        // before the rescaling itself degenerates, so feed W0 its logarithm
        w = lambert_w0_exp(std::log(C * beta / p) + (beta / p) * ln_an);
    } else {
        const double arg = (C * beta / p) * std::exp((beta / p) * ln_an);
        if (arg < -kInvE)
            throw std::domain_error(
                "gumbel_rescaling: Lambert argument below -1/e at N = " +
                std::to_string(N));
        w = lambert_w_m1(arg);
    }
    out.b_N = std::pow(C * beta / (p * w), 1.0 / beta);
    out.a_N = out.b_N / (p * (1.0 + w));
    return out;
}

double gumbel_survival(double x) { return std::exp(-std::exp(x)); }

double xk_density(int k, double x) {
    if (k < 1) throw std::domain_error("xk_density requires k >= 1");
    const double e = std::exp(x);
    // (k-1)! through the log keeps large k and large |x| from overflowing
    return std::exp(k * x - e - log_gamma(static_cast<double>(k)));
}

MomentExpansion moment_expansion(int k, const GumbelRescaling& r) {
    if (k < 1) throw std::domain_error("moment_expansion requires k >= 1");
    MomentExpansion out;
    out.mean = r.b_N + digamma(static_cast<double>(k)) * r.a_N;
    out.variance = trigamma(static_cast<double>(k)) * r.a_N * r.a_N;
    return out;
}

double expected_gap_from_first(int k, const GumbelRescaling& r) {
    if (k < 1) throw std::domain_error("expected_gap_from_first requires k >= 1");
    return harmonic(k - 1) * r.a_N;
}

LogLift varadhan_lift(double alpha, double C1_density) {
    check_alpha(alpha);
    if (!(C1_density > 0.0))
        throw std::domain_error("varadhan_lift requires C1_density > 0");
    LogLift out;
    out.beta = alpha / (2.0 - alpha);
    out.C = (2.0 - alpha) * std::pow(alpha, alpha / (2.0 - alpha)) *
            std::pow(C1_density, 1.0 / (2.0 - alpha));
    return out;
}

WeibullLimit weibull_uniform_limit(double alpha, int d, double L, double K,
                                   double N) {
    check_alpha(alpha);
    if (d < 1) throw std::domain_error("weibull_uniform_limit requires d >= 1");
    if (!(L > 0.0 && K > 0.0))
        throw std::domain_error("weibull_uniform_limit requires L, K > 0");
    if (!(N > 0.0)) throw std::domain_error("weibull_uniform_limit requires N > 0");
    WeibullLimit out;
    out.A = 2.0 / (alpha * gamma(alpha / 2.0)) * (static_cast<double>(d) / L) *
            std::sqrt(K);
    out.shape = alpha / 2.0;
    out.scale = std::pow(out.A * N, -2.0 / alpha);
    out.mean = gamma(1.0 + 2.0 / alpha) * out.scale;
    return out;
}

FinitenessThreshold finiteness_threshold(double alpha, double r) {
    check_alpha(alpha);
    if (!(r > 0.0)) throw std::domain_error("finiteness_threshold requires r > 0");
    FinitenessThreshold out;
    out.tail_exponent = alpha * r / (1.0 + r);
    out.N_min = (1.0 + r) / (alpha * r);
    return out;
}

}  // namespace subfpt
