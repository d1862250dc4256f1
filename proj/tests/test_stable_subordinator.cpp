#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "subfpt/quadrature.hpp"
#include "subfpt/special_functions.hpp"
#include "subfpt/stable_subordinator.hpp"

namespace subfpt {

TEST_CASE("degenerate case alpha = 1") {
    Xoshiro256pp rng(1);
    for (int i = 0; i < 100; ++i) CHECK(sample_stable_positive(1.0, rng) == 1.0);
    CHECK_THROWS_AS(sample_stable_positive(1.2, rng), std::domain_error);
    CHECK_THROWS_AS(sample_stable_positive(0.0, rng), std::domain_error);
}

TEST_CASE("sampler reproduces the Laplace transform") {
    // E[exp(-r V)] = exp(-r^alpha); Monte Carlo mean against the exact value
    for (double alpha : {0.3, 0.5, 0.8}) {
        Xoshiro256pp rng(314159);
        const int n = 400000;
        std::vector<double> draws(n);
        for (auto& v : draws) v = sample_stable_positive(alpha, rng);
        for (double r : {0.5, 1.0, 2.0}) {
            double s = 0.0, s2 = 0.0;
            for (double v : draws) {
                const double x = std::exp(-r * v);
                s += x;
                s2 += x * x;
            }
            const double mean = s / n;
            const double var = s2 / n - mean * mean;
            const double sigma = std::sqrt(var / n);
            const double exact = std::exp(-std::pow(r, alpha));
            INFO("alpha=" << alpha << " r=" << r);
            CHECK(std::fabs(mean - exact) < 4.0 * sigma);
        }
    }
}

TEST_CASE("sampler matches the closed-form distribution at alpha = 1/2") {
    // P(V <= z) = erfc(1 / (2 sqrt(z))); two-sided Kolmogorov-Smirnov check
    Xoshiro256pp rng(777);
    const int n = 100000;
    std::vector<double> v(n);
    for (auto& x : v) x = sample_stable_positive(0.5, rng);
    std::sort(v.begin(), v.end());
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = erfc(0.5 / std::sqrt(v[i]));
        d = std::max(d, std::fabs(f - (i + 1.0) / n));
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    }
    // 1.95 / sqrt(n) rejects a true match with probability ~1e-3
    CHECK(d < 1.95 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("stable density frozen references") {
    // reference: 30-digit arbitrary-precision evaluation of the one-sided
    // stable density, frozen
    struct Row {
        double alpha, z, value;
    };
    const Row rows[] = {
        {0.3, 0.5, 0.24064578302542873},  {0.3, 1.0, 0.11715700256591615},
        {0.3, 2.0, 0.054783242263121491}, {0.3, 5.0, 0.019154354837293765},
        {0.5, 0.5, 0.4839414490382867},   {0.5, 1.0, 0.2196956447338612},
        {0.5, 2.0, 0.088016331691074869}, {0.5, 5.0, 0.02400077896860272},
        {0.8, 0.5, 1.1264373763383141},   {0.8, 1.0, 0.54562695948554474},
        {0.8, 2.0, 0.10258186691169799},  {0.8, 5.0, 0.013612489880903667},
    };
    for (const auto& r : rows) {
        INFO("alpha=" << r.alpha << " z=" << r.z);
        CHECK(stable_density(r.alpha, r.z) ==
              doctest::Approx(r.value).epsilon(1e-10));
    }
    CHECK_THROWS_AS(stable_density(0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(stable_density(1.0, 1.0), std::domain_error);
}

TEST_CASE("stable density integrates to one") {
    // Head by quadrature of the implementation; the z^{-1-alpha} tail decays
    // too slowly for a mapped quadrature to pin down 7 absolute digits, so the
    // mass beyond the cutoff comes from the classical large-argument series
    // (1/pi) sum_k (-1)^{k+1} Gamma(alpha k + 1)/k! sin(pi alpha k) z^{-alpha k - 1},
    // integrated term by term.
    for (double alpha : {0.3, 0.5}) {
        auto f = [alpha](double z) { return stable_density(alpha, z); };
        Accuracy acc;
        acc.rel_tol = 1e-10;
        acc.abs_tol = 1e-12;
        const double cut = 100.0;
        const double head = integrate(f, 0.0, 1.0, acc).value +
                            integrate(f, 1.0, cut, acc).value;
        double tail = 0.0;
        double factorial = 1.0;
        for (int k = 1; k <= 60; ++k) {
            factorial *= k;
            const double term = gamma(alpha * k + 1.0) / factorial *
                                std::sin(M_PI * alpha * k) *
                                std::pow(cut, -alpha * k) / (alpha * k);
            tail += (k % 2 == 1 ? term : -term) / M_PI;
        }
        INFO("alpha=" << alpha);
        CHECK(head + tail == doctest::Approx(1.0).epsilon(1e-7));
    }
}

TEST_CASE("small-argument asymptote of the density") {
    // l(z) ~ B z^{-xi} exp(-kappa z^{-theta}) as z -> 0
    {
        const auto c = stable_tail_constants(0.8);
        const double z = 0.3;
        const double asym =
            c.B * std::pow(z, -c.xi) * std::exp(-c.kappa * std::pow(z, -c.theta));
        CHECK(stable_density(0.8, z) / asym == doctest::Approx(1.0).epsilon(0.05));
    }
    {
        const auto c = stable_tail_constants(0.3);
        const double z = 1e-3;
        const double asym =
            c.B * std::pow(z, -c.xi) * std::exp(-c.kappa * std::pow(z, -c.theta));
        CHECK(stable_density(0.3, z) / asym == doctest::Approx(1.0).epsilon(0.10));
    }
}

TEST_CASE("tail constants at alpha = 1/2 are elementary") {
    const auto c = stable_tail_constants(0.5);
    CHECK(c.theta == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.kappa == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(c.B == doctest::Approx(1.0 / (2.0 * std::sqrt(M_PI))).epsilon(1e-15));
    CHECK(c.xi == doctest::Approx(1.5).epsilon(1e-15));
    CHECK_THROWS_AS(stable_tail_constants(1.0), std::domain_error);
    CHECK_THROWS_AS(stable_tail_constants(0.0), std::domain_error);
}

TEST_CASE("inverse subordinator density") {
    // q(1, 1) at alpha = 1/2 equals 2 l(1)
    CHECK(q_density(0.5, 1.0, 1.0) ==
          doctest::Approx(2.0 * 0.2196956447338612).epsilon(1e-12));

    // partial mass integrates to the closed-form distribution function:
    // int_0^s q(s', t) ds' = erf(s / (2 sqrt(t))) at alpha = 1/2
    const double t = 0.7;
    auto f = [t](double s) { return q_density(0.5, s, t); };
    for (double s_up : {0.5, 1.5, 4.0}) {
        const double mass = integrate(f, 0.0, s_up).value;
        CHECK(mass == doctest::Approx(erf(s_up / (2.0 * std::sqrt(t)))).epsilon(1e-10));
    }

    // normalization holds on the quadrature path too
    auto g = [](double s) { return q_density(0.3, s, 1.0); };
    Accuracy acc;
    acc.rel_tol = 1e-9;
    const double mass =
        integrate(g, 0.0, 2.0, acc).value + integrate_to_infinity(g, 2.0, 1.0, acc).value;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-7));

    CHECK_THROWS_AS(q_density(0.5, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(q_density(0.5, 1.0, 0.0), std::domain_error);
}

TEST_CASE("subordinator paths") {
    Xoshiro256pp rng(5);
    const auto path = sample_subordinator_path(0.5, 0.01, 2.0, rng);
    REQUIRE(path.internal_grid.size() == path.values.size());
    REQUIRE(path.internal_grid.size() == 201);
    CHECK(path.internal_grid.front() == 0.0);
    CHECK(path.values.front() == 0.0);
    CHECK(path.internal_grid.back() >= 2.0 - 1e-12);
    for (std::size_t i = 1; i < path.values.size(); ++i) {
        CHECK(path.values[i] > path.values[i - 1]);
        CHECK(path.internal_grid[i] ==
              doctest::Approx(0.01 * static_cast<double>(i)).epsilon(1e-12));
    }

    // the degenerate path is the identity
    Xoshiro256pp rng2(5);
    const auto unit = sample_subordinator_path(1.0, 0.25, 1.0, rng2);
    for (std::size_t i = 0; i < unit.values.size(); ++i) {
        CHECK(unit.values[i] == unit.internal_grid[i]);
    }

    CHECK_THROWS_AS(sample_subordinator_path(0.5, 0.0, 1.0, rng), std::domain_error);
    CHECK_THROWS_AS(sample_subordinator_path(0.5, 2.0, 1.0, rng), std::domain_error);
}

TEST_CASE("path increments show no serial dependence") {
    Xoshiro256pp rng(11);
    const auto path = sample_subordinator_path(0.5, 0.01, 2000.0, rng);
    // increments are heavy tailed; correlate their logs, which have all moments
    std::vector<double> li;
    li.reserve(path.values.size() - 1);
    for (std::size_t i = 1; i < path.values.size(); ++i) {
        li.push_back(std::log(path.values[i] - path.values[i - 1]));
    }
    const std::size_t n = li.size();
    double mean = 0.0;
    for (double x : li) mean += x;
    mean /= static_cast<double>(n);
    double c0 = 0.0, c1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        c0 += (li[i] - mean) * (li[i] - mean);
        if (i + 1 < n) c1 += (li[i] - mean) * (li[i + 1] - mean);
    }
    CHECK(std::fabs(c1 / c0) < 0.01);
}

TEST_CASE("inverting the path") {
    Xoshiro256pp rng(21);
    const auto path = sample_subordinator_path(0.5, 0.01, 50.0, rng);
    const std::vector<double> t_grid = {0.01, 0.1, 0.5, 1.0, 2.0};
    const auto s = invert_subordinator(path, t_grid);
    REQUIRE(s.size() == t_grid.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
        // s happens at a grid point whose path value first exceeds t
        const auto it = std::lower_bound(path.internal_grid.begin(),
                                         path.internal_grid.end(), s[j] - 1e-12);
        REQUIRE(it != path.internal_grid.end());
        const auto idx =
            static_cast<std::size_t>(it - path.internal_grid.begin());
        CHECK(path.values[idx] > t_grid[j]);
        if (idx > 0) CHECK(path.values[idx - 1] <= t_grid[j]);
        if (j > 0) CHECK(s[j] >= s[j - 1]);
    }
    CHECK_THROWS_AS(invert_subordinator(path, {1e9}), std::range_error);
}

}  // namespace subfpt
