#include "subfpt/extreme_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "subfpt/quadrature.hpp"
#include "subfpt/special_functions.hpp"

namespace subfpt {

namespace {

const double kLn2 = 0.69314718055994530942;
const std::int64_t kShortcutThreshold = 10000000;  // 1e7 draws per replication

bool use_order_stat_shortcut(const FptModel& model, std::int64_t N) {
    return model.kind == FptModelKind::half_line && N >= kShortcutThreshold;
}

// CDF of the unit half-line model (x0 = K = 1) at the given alpha
double unit_half_line_cdf(double alpha, double t) {
    if (t <= 0.0) return 0.0;
    if (alpha == 1.0) return erfc(0.5 / std::sqrt(t));
    if (alpha == 0.5) return half_line_reference_cdf(t);
    return cdf_subdiffusive(FptModel::half_line(1.0, 1.0), alpha, t);
}

double invert_unit_half_line_cdf(double alpha, double u) {
    if (alpha == 1.0) {
        const double z = erfc_inv(u);
        return 0.25 / (z * z);
    }
    double lo = std::log(1e-12);
    double hi = std::log(1e8);
    for (int i = 0; i < 100 && lo > -700.0 && unit_half_line_cdf(alpha, std::exp(lo)) > u;
         ++i)
        lo -= 20.0;
    for (int i = 0; i < 100 && hi < 700.0 && unit_half_line_cdf(alpha, std::exp(hi)) < u;
         ++i)
        hi += 20.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (unit_half_line_cdf(alpha, std::exp(mid)) < u)
            lo = mid;
        else
            hi = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

// one replication of T_{k,N}; owns its stream, so replications can run on any
// worker in any order without changing the result
double one_replication(const FptModel& model, double alpha, std::int64_t N,
                       int k, std::uint64_t seed, int rep,
                       const SdeConfig& sde) {
    Xoshiro256pp rng = make_stream(seed, static_cast<std::uint64_t>(rep));

    if (use_order_stat_shortcut(model, N)) {
        // generate only the k smallest: the uniform order statistics arrive
        // through the spacings recursion, the times through the inverse CDF
        // of tau at unit parameters plus the exact scaling
        // tau(x0,K) = (x0^2/K)^{1/alpha} tau(1,1)
        double u = 0.0;
        for (int i = 1; i <= k; ++i) {
            const double v = uniform_open(rng);
            u = 1.0 - (1.0 - u) *
                          std::pow(v, 1.0 / static_cast<double>(N - i + 1));
        }
        const double unit_scale =
            std::pow(model.x0 * model.x0 / model.K, 1.0 / alpha);
        return unit_scale * invert_unit_half_line_cdf(alpha, u);
    }

    // max-heap of the k smallest seen so far
    std::vector<double> heap;
    heap.reserve(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < N; ++i) {
        const double tau = sample_subdiffusive_fpt(model, alpha, rng, sde);
        if (static_cast<int>(heap.size()) < k) {
            heap.push_back(tau);
            std::push_heap(heap.begin(), heap.end());
        } else if (tau < heap.front()) {
            std::pop_heap(heap.begin(), heap.end());
            heap.back() = tau;
            std::push_heap(heap.begin(), heap.end());
        }
    }
    return heap.front();
}

OrderStatSample run_order_statistics(const FptModel& model, double alpha,
                                     std::int64_t N, int k, int reps,
                                     std::uint64_t seed, const SdeConfig& sde,
                                     bool parallel) {
    if (k < 1 || static_cast<std::int64_t>(k) > N)
        throw std::invalid_argument("mc_order_statistics requires 1 <= k <= N");
    if (reps < 1)
        throw std::invalid_argument("mc_order_statistics requires reps >= 1");
    OrderStatSample out;
    out.k = k;
    out.N = N;
    out.seed = seed;
    out.values.resize(static_cast<std::size_t>(reps));
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (int r = 0; r < reps; ++r)
            out.values[static_cast<std::size_t>(r)] =
                one_replication(model, alpha, N, k, seed, r, sde);
    } else {
        for (int r = 0; r < reps; ++r)
            out.values[static_cast<std::size_t>(r)] =
                one_replication(model, alpha, N, k, seed, r, sde);
    }
    return out;
}

}  // namespace

OrderStatSample mc_order_statistics(const FptModel& model, double alpha,
                                    std::int64_t N, int k, int reps,
                                    std::uint64_t seed, const SdeConfig& sde) {
    return run_order_statistics(model, alpha, N, k, reps, seed, sde, true);
}

OrderStatSample mc_order_statistics_serial(const FptModel& model, double alpha,
                                           std::int64_t N, int k, int reps,
                                           std::uint64_t seed,
                                           const SdeConfig& sde) {
    return run_order_statistics(model, alpha, N, k, reps, seed, sde, false);
}

double survival_tail_exponent(const FptModel& model, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("survival_tail_exponent requires alpha in (0,1]");
    switch (model.kind) {
        case FptModelKind::half_line:
        case FptModelKind::partial_absorb:
            return alpha / 2.0;
        case FptModelKind::drift_interval:
            return alpha < 1.0 ? alpha : 0.0;
        default:
            return (model.tail_rate && alpha < 1.0) ? alpha : 0.0;
    }
}

SurvivalFunction make_survival_function(const FptModel& model, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("make_survival_function requires alpha in (0,1]");
    SurvivalFunction sf;
    if (model.kind == FptModelKind::half_line && alpha == 0.5) {
        const double clock =
            std::pow(model.K / (model.x0 * model.x0), 1.0 / alpha);
        sf.survival = [clock](double t) {
            return t <= 0.0 ? 1.0 : 1.0 - half_line_reference_cdf(t * clock);
        };
        sf.log_survival = [clock](double t) {
            return t <= 0.0 ? 0.0 : std::log1p(-half_line_reference_cdf(t * clock));
        };
        return sf;
    }
    if (alpha == 1.0) {
        sf.survival = [model](double t) {
            return t <= 0.0 ? 1.0 : survival_diffusive(model, t);
        };
        sf.log_survival = [model](double t) {
            return t <= 0.0 ? 0.0 : std::log1p(-cdf_diffusive(model, t));
        };
        return sf;
    }
    sf.survival = [model, alpha](double t) {
        return t <= 0.0 ? 1.0 : survival_subdiffusive(model, alpha, t);
    };
    sf.log_survival = [model, alpha](double t) {
        return t <= 0.0 ? 0.0 : std::log1p(-cdf_subdiffusive(model, alpha, t));
    };
    return sf;
}

double mean_fastest_quadrature(const SurvivalFunction& sf, std::int64_t N,
                               double m, const Accuracy& acc,
                               double tail_exponent) {
    if (N < 1) throw std::invalid_argument("mean_fastest_quadrature requires N >= 1");
    if (!(m > 0.0))
        throw std::domain_error("mean_fastest_quadrature requires m > 0");
    if (!sf.survival && !sf.log_survival)
        throw std::invalid_argument("mean_fastest_quadrature: empty survival handle");
    if (tail_exponent > 0.0 && tail_exponent * static_cast<double>(N) <= m)
        throw std::domain_error(
            "mean_fastest_quadrature: E[(T_N)^m] diverges, tail exponent " +
            std::to_string(tail_exponent) + " times N = " +
            std::to_string(N) + " does not exceed m = " + std::to_string(m));

    auto log_sn = [&](double t) -> double {
        if (sf.log_survival) return static_cast<double>(N) * sf.log_survival(t);
        const double s = sf.survival(t);
        if (s <= 0.0) return -std::numeric_limits<double>::infinity();
        return static_cast<double>(N) * std::log(s);
    };
    auto integrand = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double g = log_sn(t);
        if (g < -745.0) return 0.0;
        return m * std::pow(t, m - 1.0) * std::exp(g);
    };

    // the integrand lives around the scale where S^N drops through 1/2; a
    // blind quadrature over (0, inf) would miss that spike entirely at large N
    double lo = 0.0;
    double hi = 0.0;
    if (log_sn(1.0) > -kLn2) {
        hi = 1.0;
        while (hi < 700.0 && log_sn(std::exp(hi)) > -kLn2) hi += 1.0;
    } else {
        lo = -1.0;
        while (lo > -700.0 && log_sn(std::exp(lo)) <= -kLn2) lo -= 1.0;
    }
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (log_sn(std::exp(mid)) > -kLn2)
            lo = mid;
        else
            hi = mid;
    }
    const double t_half = std::exp(0.5 * (lo + hi));

    Accuracy qacc = acc;
    qacc.abs_tol = 0.0;  // results range over many orders of magnitude
    double total = integrate(integrand, 0.0, 0.1 * t_half, qacc).value;
    total += integrate(integrand, 0.1 * t_half, t_half, qacc).value;
    total += integrate(integrand, t_half, 3.0 * t_half, qacc).value;
    total += integrate(integrand, 3.0 * t_half, 10.0 * t_half, qacc).value;
    total += integrate_to_infinity(integrand, 10.0 * t_half, 10.0 * t_half, qacc).value;
    return total;
}

std::vector<ErrorReport> relative_error_curve(
    const FptModel& model, double alpha, const std::vector<double>& N_grid,
    const std::vector<std::string>& approximations, const Accuracy& acc) {
    for (const auto& name : approximations)
        if (name != "leading" && name != "lambert" && name != "loglog")
            throw std::invalid_argument("relative_error_curve: unknown approximation '" +
                                        name + "'");
    const ShortTimeSub sub = lift_short_time(alpha, short_time_constants(model));
    const SurvivalFunction sf = make_survival_function(model, alpha);

    const double tail = survival_tail_exponent(model, alpha);

    std::vector<double> exact(N_grid.size());
    for (std::size_t i = 0; i < N_grid.size(); ++i)
        exact[i] = mean_fastest_quadrature(
            sf, static_cast<std::int64_t>(std::llround(N_grid[i])), 1.0, acc,
            tail);

    std::vector<ErrorReport> reports;
    reports.reserve(approximations.size());
    for (const auto& name : approximations) {
        ErrorReport rep;
        rep.N_grid = N_grid;
        rep.approx_name = name;
        rep.relative_errors.resize(N_grid.size());
        for (std::size_t i = 0; i < N_grid.size(); ++i) {
            const double n = N_grid[i];
            double approx;
            if (name == "leading") {
                approx = leading_moment(1, n, 1.0, sub);
            } else {
                const auto scheme = (name == "lambert") ? RescalingScheme::lambert
                                                        : RescalingScheme::loglog;
                approx = moment_expansion(1, gumbel_rescaling(n, sub, scheme)).mean;
            }
            rep.relative_errors[i] = std::fabs(exact[i] - approx) / exact[i];
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

std::vector<double> rescaled_density(const SurvivalFunction& sf, double N,
                                     const GumbelRescaling& r,
                                     const std::vector<double>& x_grid) {
    if (!(N >= 1.0)) throw std::invalid_argument("rescaled_density requires N >= 1");
    auto distribution = [&](double x) {
        const double t = r.a_N * x + r.b_N;
        if (t <= 0.0) return 0.0;  // tau is positive, mass only above -b/a
        if (sf.log_survival) {
            const double g = N * sf.log_survival(t);
            return g < -745.0 ? 1.0 : 1.0 - std::exp(g);
        }
        const double s = sf.survival(t);
        return s <= 0.0 ? 1.0 : 1.0 - std::pow(s, N);
    };
    const double h = std::max(1e-5, r.a_N * 1e-3);
    std::vector<double> out(x_grid.size());
    for (std::size_t i = 0; i < x_grid.size(); ++i)
        out[i] = (distribution(x_grid[i] + h) - distribution(x_grid[i] - h)) /
                 (2.0 * h);
    return out;
}

VarianceCv variance_and_cv(const OrderStatSample& sample) {
    const std::size_t n = sample.values.size();
    if (n < 2)
        throw std::invalid_argument("variance_and_cv requires at least 2 replications");
    double mean = 0.0;
    for (double v : sample.values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : sample.values) ss += (v - mean) * (v - mean);
    VarianceCv out;
    out.variance = ss / static_cast<double>(n - 1);
    out.cv = std::sqrt(out.variance) / mean;
    return out;
}

}  // namespace subfpt
