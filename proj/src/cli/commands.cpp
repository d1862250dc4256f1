#include "commands.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "subfpt/asymptotics.hpp"
#include "subfpt/csv.hpp"
#include "subfpt/extreme_stats.hpp"
#include "subfpt/special_functions.hpp"

namespace subfpt {

const char* kToolVersion = "subfpt 1.0.0";

namespace {

CsvBuilder make_builder(const ExperimentConfig& cfg, const char* schema,
                        int version) {
    // the digest identifies the scientific inputs of a run; where the bytes
    // land and how many workers computed them do not change the data
    ExperimentConfig canonical = cfg;
    canonical.output_path.clear();
    canonical.threads = 0;
    return CsvBuilder(kToolVersion, schema, version, cfg.seed,
                      fnv1a64(serialize_config(canonical)));
}

SdeConfig sde_from(const ExperimentConfig& cfg) {
    SdeConfig sde;
    sde.step = cfg.em_step;
    sde.s_budget = cfg.s_budget;
    return sde;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] =
            a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

std::vector<double> logspace(double a, double b, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    const double ratio = std::log(b / a);
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] =
            a * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
}

}  // namespace

void run_fig2_left(const ExperimentConfig& cfg) {
    const ShortTimeSub sub =
        lift_short_time(cfg.alpha, short_time_constants(cfg.model));
    const SurvivalFunction sf = make_survival_function(cfg.model, cfg.alpha);
    const double tail = survival_tail_exponent(cfg.model, cfg.alpha);

    CsvBuilder csv = make_builder(cfg, "fig2_left", 1);
    csv.set_columns({"N", "E_TN_exact", "err_leading", "err_lambert", "err_loglog"});
    for (double n : cfg.N_grid) {
        const double exact = mean_fastest_quadrature(
            sf, static_cast<std::int64_t>(std::llround(n)), 1.0, cfg.acc, tail);
        const double lead = leading_moment(1, n, 1.0, sub);
        const double lam =
            moment_expansion(1, gumbel_rescaling(n, sub, RescalingScheme::lambert))
                .mean;
        const double ll =
            moment_expansion(1, gumbel_rescaling(n, sub, RescalingScheme::loglog))
                .mean;
        csv.add_row({n, exact, std::fabs(exact - lead) / exact,
                     std::fabs(exact - lam) / exact, std::fabs(exact - ll) / exact});
    }
    csv.write(cfg.output_path);
}

void run_fig2_right(const ExperimentConfig& cfg) {
    const ShortTimeSub sub =
        lift_short_time(cfg.alpha, short_time_constants(cfg.model));
    const SurvivalFunction sf = make_survival_function(cfg.model, cfg.alpha);
    const std::vector<double> x_grid = linspace(cfg.x_min, cfg.x_max, cfg.x_points);

    const double n_values[3] = {1e2, 1e3, 1e5};
    std::vector<std::vector<double>> densities;
    densities.reserve(3);
    for (double n : n_values) {
        const GumbelRescaling r =
            gumbel_rescaling(n, sub, RescalingScheme::lambert);
        densities.push_back(rescaled_density(sf, n, r, x_grid));
    }

    CsvBuilder csv = make_builder(cfg, "fig2_right", 1);
    csv.set_columns(
        {"x", "density_N100", "density_N1000", "density_N100000", "gumbel_density"});
    for (std::size_t i = 0; i < x_grid.size(); ++i)
        csv.add_row({x_grid[i], densities[0][i], densities[1][i], densities[2][i],
                     xk_density(1, x_grid[i])});
    csv.write(cfg.output_path);
}

void run_sample(const ExperimentConfig& cfg) {
    const OrderStatSample s = mc_order_statistics(
        cfg.model, cfg.alpha, cfg.N, cfg.k, cfg.reps, cfg.seed, sde_from(cfg));
    CsvBuilder csv = make_builder(cfg, "sample", 1);
    csv.add_comment("T_kN: k-th smallest of N subordinated first-passage times");
    csv.set_columns({"rep", "T_kN"});
    for (std::size_t i = 0; i < s.values.size(); ++i)
        csv.add_row({static_cast<double>(i), s.values[i]});
    csv.write(cfg.output_path);
}

void run_survival(const ExperimentConfig& cfg) {
    const std::vector<double> t_grid = logspace(cfg.t_min, cfg.t_max, cfg.t_points);
    CsvBuilder csv = make_builder(cfg, "survival", 1);
    csv.set_columns({"t", "survival"});
    for (double t : t_grid)
        csv.add_row({t, survival_subdiffusive(cfg.model, cfg.alpha, t, cfg.acc)});
    csv.write(cfg.output_path);
}

void run_asymptotics(const ExperimentConfig& cfg) {
    const ShortTimeConstants st = short_time_constants(cfg.model);
    const ShortTimeSub sub = lift_short_time(cfg.alpha, st);
    // C1 = L^2/(4K) makes t_alpha expressible through C1 alone
    const double t_alpha =
        characteristic_timescale(cfg.alpha, 2.0 * std::sqrt(st.C1), 1.0);
    const GumbelRescaling r = gumbel_rescaling(
        static_cast<double>(cfg.N), sub, RescalingScheme::lambert);

    double n_min;
    switch (cfg.model.kind) {
        case FptModelKind::half_line:
        case FptModelKind::partial_absorb:
            // diffusive survival decays like s^{-1/2} for these geometries
            n_min = finiteness_threshold(cfg.alpha, 0.5).N_min;
            break;
        case FptModelKind::drift_interval:
        case FptModelKind::narrow_escape_sphere:
            n_min = 1.0 / cfg.alpha;  // exponential diffusive tail, r -> inf
            break;
        default:
            n_min = cfg.model.tail_rate
                        ? 1.0 / cfg.alpha
                        : std::numeric_limits<double>::quiet_NaN();
            break;
    }

    CsvBuilder csv = make_builder(cfg, "asymptotics", 1);
    csv.add_comment("a_N and b_N use the lambert scheme at N = " +
                    std::to_string(cfg.N));
    if (std::isnan(n_min))
        csv.add_comment("N_min unknown: no long-time tail declared for this model");
    csv.set_columns({"A1", "p1", "C1", "A", "p", "C", "beta", "t_alpha", "a_N",
                     "b_N", "N_min"});
    csv.add_row({st.A1, st.p1, st.C1, sub.A, sub.p, sub.C, sub.beta, t_alpha,
                 r.a_N, r.b_N, n_min});
    csv.write(cfg.output_path);
}

void run_msd_check(const ExperimentConfig& cfg) {
    SdeConfig sde;
    sde.step = cfg.ds;
    sde.s_budget = cfg.s_budget;
    sde.K = cfg.model.K;
    sde.x_start = 0.0;

    const std::size_t points = cfg.t_grid.size();
    const int reps = cfg.reps;
    std::vector<double> sq(static_cast<std::size_t>(reps) * points);
#pragma omp parallel for schedule(dynamic, 16)
    for (int rep = 0; rep < reps; ++rep) {
        Xoshiro256pp rng = make_stream(cfg.seed, static_cast<std::uint64_t>(rep));
        const std::vector<double> x =
            simulate_subdiffusive_path(sde, cfg.alpha, cfg.t_grid, rng);
        for (std::size_t j = 0; j < points; ++j)
            sq[static_cast<std::size_t>(rep) * points + j] = x[j] * x[j];
    }

    CsvBuilder csv = make_builder(cfg, "msd_check", 1);
    csv.set_columns({"t", "msd_mc", "msd_theory", "ratio"});
    for (std::size_t j = 0; j < points; ++j) {
        // summed in replication order: output bytes do not depend on threads
        double total = 0.0;
        for (int rep = 0; rep < reps; ++rep)
            total += sq[static_cast<std::size_t>(rep) * points + j];
        const double mc = total / static_cast<double>(reps);
        const double theory = 2.0 * cfg.model.K *
                              std::pow(cfg.t_grid[j], cfg.alpha) /
                              gamma(1.0 + cfg.alpha);
        csv.add_row({cfg.t_grid[j], mc, theory, mc / theory});
    }
    csv.write(cfg.output_path);
}

}  // namespace subfpt
