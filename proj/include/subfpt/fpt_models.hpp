#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "subfpt/accuracy.hpp"
#include "subfpt/rng.hpp"

namespace subfpt {

enum class FptModelKind {
    half_line,
    partial_absorb,
    drift_interval,
    narrow_escape_sphere,
    generic_short_time,
};

// Target geometries. Only the fields of the active kind are meaningful;
// the factory functions enforce the per-kind positivity constraints.
struct FptModel {
    FptModelKind kind = FptModelKind::half_line;

    double x0 = 1.0;     // start distance (half_line, partial_absorb, drift_interval)
    double K = 1.0;      // generalized diffusivity K_alpha
    double kappa = 1.0;  // partial_absorb: reactivity
    double L0 = 1.0;     // drift_interval: interval length, x0 in (0, L0)
    double V = 0.0;      // drift_interval: drift
    double L = 1.0;      // narrow_escape_sphere: radius (start at center)
    double eps = 0.1;    // narrow_escape_sphere: polar angle of the window, (0, pi)

    // generic_short_time carries its short-time constants directly, plus an
    // optional long-time exponential rate (unknown for the geometric models).
    double A1 = 1.0;
    double p1 = 0.0;
    double C1 = 1.0;
    std::optional<double> tail_rate;

    static FptModel half_line(double x0, double K);
    static FptModel partial_absorb(double x0, double K, double kappa);
    static FptModel drift_interval(double x0, double L0, double K, double V);
    static FptModel narrow_escape_sphere(double L, double K, double eps);
    static FptModel generic_short_time(double A1, double p1, double C1,
                                       std::optional<double> tail_rate = {});
};

struct ShortTimeConstants {
    double A1;
    double p1;
    double C1;  // internal-time units: P(sigma <= s) ~ A1 s^{p1} exp(-C1/s)
};

// P(sigma > s) for the parent diffusion, s > 0. Supported: half_line,
// partial_absorb, drift_interval; throws std::invalid_argument otherwise
// (no full-time law for the remaining kinds).
double survival_diffusive(const FptModel& model, double s);

// CDF complement of the above with full relative precision at small s.
double cdf_diffusive(const FptModel& model, double s);

// Short-time constants (A1, p1, C1) with C1 = L^2/(4K), L the geodesic
// distance of the model. Valid for every kind.
ShortTimeConstants short_time_constants(const FptModel& model);

// P(tau > t) for the subordinated process: integral of q_alpha(s,t) P(sigma>s)
// over s, split at the Laplace point s0(t) where the exponential factors peak.
// alpha = 1 returns survival_diffusive exactly.
double survival_subdiffusive(const FptModel& model, double alpha, double t,
                             const Accuracy& acc = {});

// P(tau <= t), computed from the complementary integrand so small values keep
// relative accuracy (needed deep in the short-time regime).
double cdf_subdiffusive(const FptModel& model, double alpha, double t,
                        const Accuracy& acc = {});

// Euler-Maruyama controls for the samplers that need path simulation, plus the
// general free-motion SDE of simulate_subdiffusive_path:
//   dX = (drift(X)/eta) ds + sqrt(2 K) sigma(X) dW.
struct SdeConfig {
    double step = 1e-4;                // internal-time step
    double s_budget = 1e7;             // abort threshold for first-crossing searches
    double eta = 1.0;                  // generalized friction
    double K = 1.0;
    std::function<double(double)> drift;  // defaults to 0
    std::function<double(double)> sigma;  // defaults to 1
    double x_start = 0.0;
};

// First-passage internal time sigma. half_line: exact inverse-CDF
// x0^2/(4K erfc_inv(U)^2). partial_absorb: exact numeric inverse-CDF.
// drift_interval: Euler-Maruyama first crossing (sign change, no bridge
// correction); throws std::runtime_error when s_budget is exhausted.
double sample_diffusive_fpt(const FptModel& model, Xoshiro256pp& rng,
                            const SdeConfig& sde = {});

// Physical first-passage time tau = sigma^{1/alpha} * V with V an independent
// positive stable variate; alpha = 1 returns sigma itself.
double sample_subdiffusive_fpt(const FptModel& model, double alpha,
                               Xoshiro256pp& rng, const SdeConfig& sde = {});

// Subordinated free-motion path X(t_grid): Euler-Maruyama on the internal
// clock composed with the inverse subordinator on the same grid. Paths are
// exactly constant where the subordinator jumps past t.
std::vector<double> simulate_subdiffusive_path(const SdeConfig& cfg, double alpha,
                                               const std::vector<double>& t_grid,
                                               Xoshiro256pp& rng);

// Reference CDF for the half-line model with alpha = 1/2, x0 = K = 1: the
// 1F3 closed form for t >= 1e-4 and the subordination quadrature below (the
// alternating 1F3 sums lose all double-precision digits for smaller t).
double half_line_reference_cdf(double t);

// Interval exit-time CDF in the rescaled clock (unit diffusion on (0,1),
// drift v, start y): image series integrated term by term; exposed for tests.
double interval_exit_cdf(double T, double y, double v);

// Inverse of the above in T for fixed (y, v); u in (0,1).
double interval_exit_cdf_inverse(double u, double y, double v);

}  // namespace subfpt
