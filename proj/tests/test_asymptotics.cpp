#include <cmath>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "subfpt/asymptotics.hpp"
#include "subfpt/quadrature.hpp"
#include "subfpt/special_functions.hpp"

namespace subfpt {

namespace {

const ShortTimeConstants kUnitHalfLine =
    short_time_constants(FptModel::half_line(1.0, 1.0));

}  // namespace

TEST_CASE("lifting maps compose consistently") {
    const ShortTimeConstants st{1.3, 0.5, 2.0};
    const ShortTimeConstants st2{0.7, -0.5, 0.3};
    for (double alpha : {0.2, 0.35, 0.5, 0.65, 0.8, 0.95}) {
        const auto c = stable_tail_constants(alpha);
        for (const auto* s : {&st, &st2}) {
            const auto full =
                lift_full(alpha, c.theta, c.kappa, c.B, c.xi, s->A1, s->p1, s->C1);
            const auto lifted = lift_short_time(alpha, *s);
            INFO("alpha=" << alpha);
            CHECK(full.beta == doctest::Approx(lifted.beta).epsilon(1e-12));
            CHECK(full.C == doctest::Approx(lifted.C).epsilon(1e-12));
            CHECK(full.p == doctest::Approx(lifted.p).epsilon(1e-12));
            CHECK(full.A == doctest::Approx(lifted.A).epsilon(1e-12));

            const auto lg = lift_log(alpha, c.theta, c.kappa, s->C1);
            CHECK(lg.beta == doctest::Approx(lifted.beta).epsilon(1e-12));
            CHECK(lg.C == doctest::Approx(lifted.C).epsilon(1e-12));
        }
    }
}

TEST_CASE("lift at alpha = 1 is the exact identity") {
    const ShortTimeConstants st{2.5, -0.5, 0.75};
    const auto sub = lift_short_time(1.0, st);
    CHECK(sub.A == st.A1);
    CHECK(sub.p == st.p1);
    CHECK(sub.C == st.C1);
    CHECK(sub.beta == 1.0);
}

TEST_CASE("lifted constants for the unit half line at alpha = 1/2") {
    // reference: closed-form evaluation at 30 digits, frozen
    const auto sub = lift_short_time(0.5, kUnitHalfLine);
    CHECK(sub.beta == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(sub.p == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(sub.C == doctest::Approx(0.472470393711).epsilon(1e-11));
    CHECK(sub.A == doctest::Approx(1.16078760409).epsilon(1e-11));
}

TEST_CASE("characteristic timescale") {
    // closed form at alpha = 1/2, L = K = 1
    CHECK(characteristic_timescale(0.5, 1.0, 1.0) ==
          doctest::Approx(std::pow(std::sqrt(0.5) * std::pow(1.5, 1.5) / 4.0, 2.0))
              .epsilon(1e-14));

    // C = t_alpha^beta ties the timescale to the lifted constant
    for (double alpha : {0.3, 0.5, 0.9}) {
        const ShortTimeConstants st{1.0, 0.5, 0.25};
        const auto sub = lift_short_time(alpha, st);
        const double t_a = characteristic_timescale(alpha, 2.0 * std::sqrt(st.C1), 1.0);
        INFO("alpha=" << alpha);
        CHECK(std::pow(t_a, sub.beta) == doctest::Approx(sub.C).epsilon(1e-12));
    }
    CHECK_THROWS_AS(characteristic_timescale(0.5, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(characteristic_timescale(1.5, 1.0, 1.0), std::domain_error);
}

TEST_CASE("leading moment") {
    const auto sub = lift_short_time(0.5, kUnitHalfLine);
    const double n = 1e4;
    const double direct = std::pow(sub.C / std::log(n), 1.0 / sub.beta);
    CHECK(leading_moment(1, n, 1.0, sub) == doctest::Approx(direct).epsilon(1e-14));
    // rank independence and moment-order power law
    CHECK(leading_moment(5, n, 1.0, sub) == leading_moment(1, n, 1.0, sub));
    CHECK(leading_moment(1, n, 2.0, sub) ==
          doctest::Approx(std::pow(leading_moment(1, n, 1.0, sub), 2.0))
              .epsilon(1e-12));

    // the subdiffusive fastest is far ahead of the diffusive one
    const auto sub1 = lift_short_time(1.0, kUnitHalfLine);
    CHECK(leading_moment(1, 1e6, 1.0, sub) < 0.01 * leading_moment(1, 1e6, 1.0, sub1));

    CHECK_THROWS_AS(leading_moment(0, n, 1.0, sub), std::domain_error);
    CHECK_THROWS_AS(leading_moment(1, n, 0.5, sub), std::domain_error);
    CHECK_THROWS_AS(leading_moment(1, 1.5, 1.0, sub), std::domain_error);
}

TEST_CASE("lambert rescaling, positive p") {
    const auto sub = lift_short_time(0.5, kUnitHalfLine);
    const auto r = gumbel_rescaling(1e4, sub, RescalingScheme::lambert);
    CHECK(r.scheme == RescalingScheme::lambert);

    // reference: 30-digit arbitrary-precision evaluation, frozen
    CHECK(r.b_N == doctest::Approx(2.1005669e-4).epsilon(1e-6));
    CHECK(r.a_N == doctest::Approx(7.4593257e-5).epsilon(1e-6));

    // the W that produced b_N must satisfy its defining equation
    const double w = sub.C * sub.beta / (sub.p * std::pow(r.b_N, sub.beta));
    CHECK(w == doctest::Approx(15.896167).epsilon(1e-6));
    const double arg =
        sub.C * sub.beta / sub.p * std::pow(sub.A * 1e4, sub.beta / sub.p);
    CHECK(w * std::exp(w) == doctest::Approx(arg).epsilon(1e-10));
    // and a_N is tied to it
    CHECK(r.a_N == doctest::Approx(r.b_N / (sub.p * (1.0 + w))).epsilon(1e-10));

    // huge N exercises the overflow-free Lambert path
    const auto rr = gumbel_rescaling(1e280, sub, RescalingScheme::lambert);
    CHECK(rr.b_N > 0.0);
    CHECK(rr.a_N > 0.0);
    CHECK(rr.b_N < r.b_N);
}

TEST_CASE("lambert rescaling, zero and negative p") {
    // p = 0 closed form
    ShortTimeSub flat{2.0, 0.0, 1.2, 0.5};
    const auto r0 = gumbel_rescaling(1e3, flat, RescalingScheme::lambert);
    const double ln_an = std::log(2.0 * 1e3);
    CHECK(r0.b_N == doctest::Approx(std::pow(1.2 / ln_an, 2.0)).epsilon(1e-13));
    CHECK(r0.a_N == doctest::Approx(r0.b_N / (0.5 * ln_an)).epsilon(1e-13));

    ShortTimeSub flat_bad{1e-4, 0.0, 1.2, 0.5};
    CHECK_THROWS_AS(gumbel_rescaling(100.0, flat_bad, RescalingScheme::lambert),
                    std::domain_error);

    // p < 0 rides the lower Lambert branch (narrow-escape-type prefactor)
    const auto ne = short_time_constants(FptModel::narrow_escape_sphere(1.0, 1.0, 0.1));
    const auto sub_ne = lift_short_time(0.5, ne);
    CHECK(sub_ne.p < 0.0);
    const auto rn = gumbel_rescaling(1e3, sub_ne, RescalingScheme::lambert);
    CHECK(rn.b_N > 0.0);
    CHECK(rn.a_N > 0.0);
    const double wn = sub_ne.C * sub_ne.beta / (sub_ne.p * std::pow(rn.b_N, sub_ne.beta));
    const double argn = sub_ne.C * sub_ne.beta / sub_ne.p *
                        std::pow(sub_ne.A * 1e3, sub_ne.beta / sub_ne.p);
    CHECK(wn < -1.0);
    CHECK(wn * std::exp(wn) == doctest::Approx(argn).epsilon(1e-10));

    // too small an N pushes the argument past the branch point; the error
    // names the offending N
    try {
        gumbel_rescaling(400.0, sub_ne, RescalingScheme::lambert);
        FAIL("expected a domain error");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("400") != std::string::npos);
    }
}

TEST_CASE("loglog rescaling") {
    const auto sub = lift_short_time(0.5, kUnitHalfLine);
    const double n = 1e6;
    const auto r = gumbel_rescaling(n, sub, RescalingScheme::loglog);
    CHECK(r.scheme == RescalingScheme::loglog);

    const double ln_n = std::log(n);
    const double a_direct =
        std::pow(sub.C, 1.0 / sub.beta) / (sub.beta * std::pow(ln_n, 1.0 + 1.0 / sub.beta));
    CHECK(r.a_N == doctest::Approx(a_direct).epsilon(1e-13));
    const double radicand =
        sub.C / ln_n + sub.C * sub.p * std::log(ln_n) / (sub.beta * ln_n * ln_n) -
        sub.C * std::log(sub.A * std::pow(sub.C, sub.p / sub.beta)) / (ln_n * ln_n);
    CHECK(r.b_N == doctest::Approx(std::pow(radicand, 1.0 / sub.beta)).epsilon(1e-13));

    // a nonpositive radicand is reported, naming N
    ShortTimeSub spoiled{1e30, 0.1, 1.0, 0.5};
    try {
        gumbel_rescaling(3.0, spoiled, RescalingScheme::loglog);
        FAIL("expected a domain error");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }

    CHECK_THROWS_AS(gumbel_rescaling(1.5, sub, RescalingScheme::loglog),
                    std::domain_error);
}

TEST_CASE("lambert and loglog schemes agree asymptotically") {
    const auto sub = lift_short_time(0.5, kUnitHalfLine);
    double prev_b = 1e300, prev_a = 1e300;
    for (double n : {1e4, 1e6, 1e8, 1e10}) {
        const auto rl = gumbel_rescaling(n, sub, RescalingScheme::lambert);
        const auto rg = gumbel_rescaling(n, sub, RescalingScheme::loglog);
        const double db = std::fabs(rg.b_N / rl.b_N - 1.0);
        const double da = std::fabs(rg.a_N / rl.a_N - 1.0);
        INFO("N=" << n);
        CHECK(db < prev_b);
        CHECK(da < prev_a);
        prev_b = db;
        prev_a = da;
    }
}

TEST_CASE("gumbel limit family") {
    CHECK(gumbel_survival(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(gumbel_survival(-3.0) ==
          doctest::Approx(std::exp(-std::exp(-3.0))).epsilon(1e-15));

    // the k = 1 density is exactly the derivative of 1 - survival
    for (double x : {-3.0, -1.0, 0.0, 1.0, 2.0}) {
        CHECK(xk_density(1, x) ==
              doctest::Approx(std::exp(x - std::exp(x))).epsilon(1e-13));
    }

    // normalization and moments against digamma/trigamma
    for (int k : {1, 2, 5}) {
        auto f = [k](double x) { return xk_density(k, x); };
        const double mass = integrate(f, -40.0, 8.0).value;
        INFO("k=" << k);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));

        auto fx = [k](double x) { return x * xk_density(k, x); };
        const double mean = integrate(fx, -40.0, 8.0).value;
        CHECK(mean == doctest::Approx(digamma(k)).epsilon(1e-6));

        auto fxx = [k, mean](double x) {
            return (x - mean) * (x - mean) * xk_density(k, x);
        };
        const double var = integrate(fxx, -40.0, 8.0).value;
        CHECK(var == doctest::Approx(trigamma(k)).epsilon(1e-6));
    }

    // large k and large |x| stay finite through the log-space form
    CHECK(xk_density(120, -1.0) >= 0.0);
    CHECK(std::isfinite(xk_density(120, 4.0)));
    CHECK(xk_density(1, 12.0) == 0.0);  // e^{-e^12} underflows to zero

    CHECK_THROWS_AS(xk_density(0, 0.0), std::domain_error);
}

TEST_CASE("moment expansion and rank gaps") {
    const auto sub = lift_short_time(0.5, kUnitHalfLine);
    const auto r = gumbel_rescaling(1e4, sub, RescalingScheme::lambert);

    const double euler_gamma = 0.57721566490153286061;
    const auto m1 = moment_expansion(1, r);
    CHECK(m1.mean == doctest::Approx(r.b_N - euler_gamma * r.a_N).epsilon(1e-12));
    CHECK(m1.variance ==
          doctest::Approx(M_PI * M_PI / 6.0 * r.a_N * r.a_N).epsilon(1e-12));

    const auto m3 = moment_expansion(3, r);
    CHECK(m3.mean == doctest::Approx(r.b_N + digamma(3) * r.a_N).epsilon(1e-12));
    CHECK(m3.variance == doctest::Approx(trigamma(3) * r.a_N * r.a_N).epsilon(1e-12));

    CHECK(expected_gap_from_first(1, r) == 0.0);
    CHECK(expected_gap_from_first(2, r) == doctest::Approx(r.a_N).epsilon(1e-13));
    CHECK(expected_gap_from_first(4, r) ==
          doctest::Approx((1.0 + 0.5 + 1.0 / 3.0) * r.a_N).epsilon(1e-13));
    CHECK_THROWS_AS(moment_expansion(0, r), std::domain_error);
    CHECK_THROWS_AS(expected_gap_from_first(-1, r), std::domain_error);
}

TEST_CASE("varadhan lift matches the log-scale map") {
    for (double alpha : {0.3, 0.5, 0.8}) {
        const auto c = stable_tail_constants(alpha);
        const auto v = varadhan_lift(alpha, 0.25);
        const auto lg = lift_log(alpha, c.theta, c.kappa, 0.25);
        INFO("alpha=" << alpha);
        CHECK(v.beta == doctest::Approx(alpha / (2.0 - alpha)).epsilon(1e-13));
        CHECK(v.beta == doctest::Approx(lg.beta).epsilon(1e-13));
        CHECK(v.C == doctest::Approx(lg.C).epsilon(1e-12));
    }
    CHECK(varadhan_lift(0.5, 0.25).C == doctest::Approx(0.472470393711).epsilon(1e-11));
    CHECK_THROWS_AS(varadhan_lift(0.5, 0.0), std::domain_error);
}

TEST_CASE("weibull limit under uniform initial conditions") {
    const auto w = weibull_uniform_limit(0.5, 1, 1.0, 1.0, 100.0);
    CHECK(w.shape == doctest::Approx(0.25).epsilon(1e-14));
    // A = 4 / Gamma(1/4) at these parameters
    CHECK(w.A == doctest::Approx(4.0 / 3.6256099082219083119).epsilon(1e-12));
    CHECK(w.scale == doctest::Approx(std::pow(w.A * 100.0, -4.0)).epsilon(1e-12));
    CHECK(w.mean == doctest::Approx(gamma(5.0) * w.scale).epsilon(1e-12));

    // alpha = 1: mean N^2 = pi/2 for the unit interval
    const auto w1 = weibull_uniform_limit(1.0, 1, 1.0, 1.0, 50.0);
    CHECK(w1.mean * 50.0 * 50.0 == doctest::Approx(M_PI / 2.0).epsilon(1e-12));

    // doubling N scales the mean by 2^{-2/alpha}
    const auto wa = weibull_uniform_limit(0.5, 1, 1.0, 1.0, 200.0);
    CHECK(wa.mean / w.mean == doctest::Approx(std::pow(2.0, -4.0)).epsilon(1e-12));

    CHECK_THROWS_AS(weibull_uniform_limit(0.5, 0, 1.0, 1.0, 10.0), std::domain_error);
    CHECK_THROWS_AS(weibull_uniform_limit(0.5, 1, 1.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("finiteness threshold") {
    const auto f = finiteness_threshold(0.5, 0.5);
    CHECK(f.tail_exponent == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(f.N_min == doctest::Approx(6.0).epsilon(1e-14));

    const auto g = finiteness_threshold(1.0, 1.0);
    CHECK(g.tail_exponent == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(g.N_min == doctest::Approx(2.0).epsilon(1e-14));

    CHECK_THROWS_AS(finiteness_threshold(0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(finiteness_threshold(0.0, 0.5), std::domain_error);
}

}  // namespace subfpt
