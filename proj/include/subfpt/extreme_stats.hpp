#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "subfpt/asymptotics.hpp"
#include "subfpt/fpt_models.hpp"

namespace subfpt {

struct OrderStatSample {
    int k = 1;
    std::int64_t N = 1;
    std::vector<double> values;  // one T_{k,N} per replication
    std::uint64_t seed = 0;
};

struct ErrorReport {
    std::vector<double> N_grid;
    std::string approx_name;  // "leading" | "lambert" | "loglog"
    std::vector<double> relative_errors;
};

// Monte Carlo replications of the k-th smallest of N iid first-passage times.
// Replications are distributed over OpenMP workers, one random stream per
// replication, merged in replication order: output is bit-identical for any
// worker count. For N >= 1e7 on the half-line model the k smallest are
// generated directly from uniform order statistics composed with the numeric
// inverse of the analytic CDF instead of N individual draws.
OrderStatSample mc_order_statistics(const FptModel& model, double alpha,
                                    std::int64_t N, int k, int reps,
                                    std::uint64_t seed,
                                    const SdeConfig& sde = {});

// Serial reference of the same computation (no OpenMP), for testing and for
// the benchmark target. Bit-identical to mc_order_statistics.
OrderStatSample mc_order_statistics_serial(const FptModel& model, double alpha,
                                           std::int64_t N, int k, int reps,
                                           std::uint64_t seed,
                                           const SdeConfig& sde = {});

// Survival function handle for the quadrature drivers. `log_survival` is
// optional; when present it is used to form S^N = exp(N log S) without the
// 1 - F rounding at survival values near 1 (relevant for N >= 1e8).
struct SurvivalFunction {
    std::function<double(double)> survival;
    std::function<double(double)> log_survival;  // may be empty
};

// True power-law exponent of the subordinated survival tail P(tau > t) ~
// t^{-e}: alpha/2 for the s^{-1/2} diffusive tails (half-line, partial
// absorption), alpha for exponential diffusive tails (interval, and generic
// models carrying a tail_rate), and 0 (unknown) otherwise. alpha = 1 keeps an
// exponential tail exponential, reported as 0.
double survival_tail_exponent(const FptModel& model, double alpha);

// Analytic survival handle for a model: the hybrid closed form for the
// half-line at alpha = 1/2 (rescaled to unit parameters), the diffusive law at
// alpha = 1, and the subordination integral otherwise. log_survival is always
// populated, via the complementary CDF so values near 1 keep full precision.
SurvivalFunction make_survival_function(const FptModel& model, double alpha);

// E[(T_N)^m] = int_0^inf m t^{m-1} S(t)^N dt by adaptive quadrature with the
// infinite tail mapped through t = u/(1-u)-type substitutions. If
// tail_exponent (of S(t) ~ t^{-tail_exponent}) is supplied and
// tail_exponent * N <= m the integral is divergent and std::domain_error is
// thrown (divergence flag).
double mean_fastest_quadrature(const SurvivalFunction& survival, std::int64_t N,
                               double m, const Accuracy& acc = {},
                               double tail_exponent = 0.0);

// Exact mean E[T_N] and the three closed-form approximations on a grid of N.
std::vector<ErrorReport> relative_error_curve(
    const FptModel& model, double alpha, const std::vector<double>& N_grid,
    const std::vector<std::string>& approximations, const Accuracy& acc = {});

// Density of (T_N - b_N)/a_N on x_grid, by central differences of
// 1 - S(a_N x + b_N)^N with step max(1e-5, a_N * 1e-3) in x.
std::vector<double> rescaled_density(const SurvivalFunction& survival, double N,
                                     const GumbelRescaling& r,
                                     const std::vector<double>& x_grid);

struct VarianceCv {
    double variance;  // unbiased
    double cv;        // std/mean
};

VarianceCv variance_and_cv(const OrderStatSample& sample);

}  // namespace subfpt
