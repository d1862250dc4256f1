#include "subfpt/fpt_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "subfpt/quadrature.hpp"
#include "subfpt/special_functions.hpp"
#include "subfpt/stable_subordinator.hpp"

namespace subfpt {

namespace {

const double kSqrtPi = 1.7724538509055160273;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// exp(c m) Phi(-(c + m T)/sqrt(T)) times exp(ln_pre), assembled so that no
// intermediate overflows: for w >= 0 the exponent -c^2/(2T) - m^2 T/2 is
// nonpositive, and w < 0 forces c m <= 0 because c is never negative here.
double image_piece(double c, double m, double T, double ln_pre) {
    const double w = (c + m * T) / std::sqrt(2.0 * T);
    if (w >= 0.0)
        return 0.5 * std::exp(ln_pre - c * c / (2.0 * T) - m * m * T / 2.0) *
               erfcx(w);
    return std::exp(ln_pre + c * m) * (1.0 - 0.5 * erfc(-w));
}

// probability that a unit-variance diffusion on (0,1) with drift v, started at
// y, has left through 0 by time T, as a sum over mirror images c_k = y + 2k
double exit_left_series(double T, double y, double v) {
    const double ln_pre = -v * y;
    double total = 0.0;
    for (int dir = 0; dir < 2; ++dir) {
        for (int j = 0; j < 10000; ++j) {
            const int k = (dir == 0) ? j : -(j + 1);
            const double ck = y + 2.0 * k;
            const double c = std::fabs(ck);
            const double term =
                image_piece(c, v, T, ln_pre) + image_piece(c, -v, T, ln_pre);
            total += (ck >= 0.0) ? term : -term;
            if (term < 1e-16) break;
        }
    }
    return total;
}

struct IntervalScaling {
    double y;  // x0 / L0
    double v;  // L0 V / (2K)
    double clock;  // 2K / L0^2, converts internal time to the unit interval
};

IntervalScaling interval_scaling(const FptModel& m) {
    IntervalScaling sc;
    sc.y = m.x0 / m.L0;
    sc.v = m.L0 * m.V / (2.0 * m.K);
    sc.clock = 2.0 * m.K / (m.L0 * m.L0);
    return sc;
}

struct PartialAbsorbArgs {
    double u;  // x0 / sqrt(4Ks)
    double v;  // (2 kappa s + x0) / sqrt(4Ks)
};

PartialAbsorbArgs partial_absorb_args(const FptModel& m, double s) {
    const double denom = std::sqrt(4.0 * m.K * s);
    return {m.x0 / denom, (2.0 * m.kappa * s + m.x0) / denom};
}

double invert_partial_absorb_cdf(const FptModel& m, double u_target) {
    // bisection on log s; the natural time scale is x0^2/(4K) and the upper
    // tail decays only like s^{-1/2}, so the bracket may need to grow a lot
    double lo = std::log(m.x0 * m.x0 / (4.0 * m.K)) - 60.0;
    double hi = lo + 120.0;
    for (int i = 0; i < 60 && cdf_diffusive(m, std::exp(hi)) < u_target; ++i)
        hi += 10.0;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (cdf_diffusive(m, std::exp(mid)) < u_target)
            lo = mid;
        else
            hi = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

double em_interval_crossing(const FptModel& m, Xoshiro256pp& rng,
                            const SdeConfig& sde) {
    const double ds = sde.step;
    const double root = std::sqrt(2.0 * m.K * ds);
    NormalSampler normal;
    double x = m.x0;
    double s = 0.0;
    while (s < sde.s_budget) {
        x += m.V * ds + root * normal(rng);
        s += ds;
        if (x <= 0.0 || x >= m.L0) return s;
    }
    throw std::runtime_error(
        "sample_diffusive_fpt: no crossing within the internal-time budget");
}

double subordinated_integral(const FptModel& model, double alpha, double t,
                             const Accuracy& acc, bool complement) {
    const ShortTimeConstants st = short_time_constants(model);
    const StableTailConstants tc = stable_tail_constants(alpha);
    // bulk of the kernel sits near t^alpha; the product with the parent CDF
    // peaks near the saddle s0 where the two exponential factors balance
    const double s_scale = std::pow(t, alpha);
    const double s0 =
        std::pow(st.C1 * alpha / (tc.kappa * tc.theta),
                 alpha / (alpha + tc.theta)) *
        std::pow(t, alpha * tc.theta / (alpha + tc.theta));
    Accuracy inner;
    inner.abs_tol = 1e-16;
    inner.rel_tol = std::min(1e-12, acc.rel_tol * 0.1);
    auto integrand = [&](double s) {
        if (s <= 0.0) return 0.0;
        const double q = q_density(alpha, s, t, inner);
        if (q == 0.0) return 0.0;
        return q * (complement ? cdf_diffusive(model, s)
                               : survival_diffusive(model, s));
    };
    Accuracy outer = acc;
    outer.abs_tol = 0.0;  // the result can be exponentially small in t
    const double a = std::min(s_scale, s0);
    const double b = std::max(s_scale, s0);
    double total = integrate(integrand, 0.0, a, outer).value;
    if (b > a) total += integrate(integrand, a, b, outer).value;
    total += integrate_to_infinity(integrand, b, b, outer).value;
    return total;
}

}  // namespace

FptModel FptModel::half_line(double x0, double K) {
    require(x0 > 0.0, "half_line requires x0 > 0");
    require(K > 0.0, "half_line requires K > 0");
    FptModel m;
    m.kind = FptModelKind::half_line;
    m.x0 = x0;
    m.K = K;
    return m;
}

FptModel FptModel::partial_absorb(double x0, double K, double kappa) {
    require(x0 > 0.0, "partial_absorb requires x0 > 0");
    require(K > 0.0, "partial_absorb requires K > 0");
    require(kappa > 0.0, "partial_absorb requires kappa > 0");
    FptModel m;
    m.kind = FptModelKind::partial_absorb;
    m.x0 = x0;
    m.K = K;
    m.kappa = kappa;
    return m;
}

FptModel FptModel::drift_interval(double x0, double L0, double K, double V) {
    require(L0 > 0.0, "drift_interval requires L0 > 0");
    require(x0 > 0.0 && x0 < L0, "drift_interval requires 0 < x0 < L0");
    require(K > 0.0, "drift_interval requires K > 0");
    FptModel m;
    m.kind = FptModelKind::drift_interval;
    m.x0 = x0;
    m.L0 = L0;
    m.K = K;
    m.V = V;
    return m;
}

FptModel FptModel::narrow_escape_sphere(double L, double K, double eps) {
    require(L > 0.0, "narrow_escape_sphere requires L > 0");
    require(K > 0.0, "narrow_escape_sphere requires K > 0");
    require(eps > 0.0 && eps < M_PI,
            "narrow_escape_sphere requires eps in (0, pi)");
    FptModel m;
    m.kind = FptModelKind::narrow_escape_sphere;
    m.L = L;
    m.K = K;
    m.eps = eps;
    return m;
}

FptModel FptModel::generic_short_time(double A1, double p1, double C1,
                                      std::optional<double> tail_rate) {
    require(A1 > 0.0, "generic_short_time requires A1 > 0");
    require(C1 > 0.0, "generic_short_time requires C1 > 0");
    if (tail_rate) require(*tail_rate > 0.0, "tail_rate must be positive");
    FptModel m;
    m.kind = FptModelKind::generic_short_time;
    m.A1 = A1;
    m.p1 = p1;
    m.C1 = C1;
    m.tail_rate = tail_rate;
    return m;
}

double survival_diffusive(const FptModel& model, double s) {
    if (!(s > 0.0)) throw std::domain_error("survival_diffusive requires s > 0");
    switch (model.kind) {
        case FptModelKind::half_line:
            return erf(model.x0 / std::sqrt(4.0 * model.K * s));
        case FptModelKind::partial_absorb: {
            const PartialAbsorbArgs a = partial_absorb_args(model, s);
            return erf(a.u) + std::exp(-a.u * a.u) * erfcx(a.v);
        }
        case FptModelKind::drift_interval: {
            const IntervalScaling sc = interval_scaling(model);
            return 1.0 - interval_exit_cdf(sc.clock * s, sc.y, sc.v);
        }
        default:
            throw std::invalid_argument(
                "survival_diffusive: no full-time law for this model kind");
    }
}

double cdf_diffusive(const FptModel& model, double s) {
    if (!(s > 0.0)) throw std::domain_error("cdf_diffusive requires s > 0");
    switch (model.kind) {
        case FptModelKind::half_line:
            return erfc(model.x0 / std::sqrt(4.0 * model.K * s));
        case FptModelKind::partial_absorb: {
            // the two terms share the e^{-u^2} scale, so the difference keeps
            // relative accuracy deep in the short-time tail
            const PartialAbsorbArgs a = partial_absorb_args(model, s);
            return erfc(a.u) - std::exp(-a.u * a.u) * erfcx(a.v);
        }
        case FptModelKind::drift_interval: {
            const IntervalScaling sc = interval_scaling(model);
            return interval_exit_cdf(sc.clock * s, sc.y, sc.v);
        }
        default:
            throw std::invalid_argument(
                "cdf_diffusive: no full-time law for this model kind");
    }
}

ShortTimeConstants short_time_constants(const FptModel& model) {
    ShortTimeConstants c{};
    switch (model.kind) {
        case FptModelKind::half_line:
            c.A1 = std::sqrt(4.0 * model.K / (M_PI * model.x0 * model.x0));
            c.p1 = 0.5;
            c.C1 = model.x0 * model.x0 / (4.0 * model.K);
            break;
        case FptModelKind::partial_absorb:
            c.A1 = 4.0 * model.kappa * std::sqrt(model.K) /
                   (kSqrtPi * model.x0 * model.x0);
            c.p1 = 1.5;
            c.C1 = model.x0 * model.x0 / (4.0 * model.K);
            break;
        case FptModelKind::drift_interval: {
            const double d_left = model.x0;
            const double d_right = model.L0 - model.x0;
            // the closer wall dominates; exactly at the midpoint both walls
            // sit at the same distance and their amplitudes add
            double a = 0.0;
            if (d_left <= d_right)
                a += std::sqrt(4.0 * model.K / (M_PI * d_left * d_left)) *
                     std::exp(-model.V * d_left / (2.0 * model.K));
            if (d_right <= d_left)
                a += std::sqrt(4.0 * model.K / (M_PI * d_right * d_right)) *
                     std::exp(model.V * d_right / (2.0 * model.K));
            const double d0 = std::min(d_left, d_right);
            c.A1 = a;
            c.p1 = 0.5;
            c.C1 = d0 * d0 / (4.0 * model.K);
            break;
        }
        case FptModelKind::narrow_escape_sphere:
            c.A1 = model.L * (1.0 - std::cos(model.eps)) /
                   std::sqrt(M_PI * model.K);
            c.p1 = -0.5;
            c.C1 = model.L * model.L / (4.0 * model.K);
            break;
        case FptModelKind::generic_short_time:
            c.A1 = model.A1;
            c.p1 = model.p1;
            c.C1 = model.C1;
            break;
    }
    return c;
}

double survival_subdiffusive(const FptModel& model, double alpha, double t,
                             const Accuracy& acc) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("survival_subdiffusive requires alpha in (0,1]");
    if (t <= 0.0) return 1.0;
    if (alpha == 1.0) return survival_diffusive(model, t);
    return subordinated_integral(model, alpha, t, acc, false);
}

double cdf_subdiffusive(const FptModel& model, double alpha, double t,
                        const Accuracy& acc) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("cdf_subdiffusive requires alpha in (0,1]");
    if (t <= 0.0) return 0.0;
    if (alpha == 1.0) return cdf_diffusive(model, t);
    return subordinated_integral(model, alpha, t, acc, true);
}

double sample_diffusive_fpt(const FptModel& model, Xoshiro256pp& rng,
                            const SdeConfig& sde) {
    switch (model.kind) {
        case FptModelKind::half_line: {
            // F(s) = erfc(x0/sqrt(4Ks)) inverts in closed form
            const double z = erfc_inv(uniform_open(rng));
            return model.x0 * model.x0 / (4.0 * model.K * z * z);
        }
        case FptModelKind::partial_absorb:
            return invert_partial_absorb_cdf(model, uniform_open(rng));
        case FptModelKind::drift_interval:
            return em_interval_crossing(model, rng, sde);
        default:
            throw std::invalid_argument(
                "sample_diffusive_fpt: unsupported model kind");
    }
}

double sample_subdiffusive_fpt(const FptModel& model, double alpha,
                               Xoshiro256pp& rng, const SdeConfig& sde) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("sample_subdiffusive_fpt requires alpha in (0,1]");
    const double sigma = sample_diffusive_fpt(model, rng, sde);
    if (alpha == 1.0) return sigma;
    const double v = sample_stable_positive(alpha, rng);
    return std::pow(sigma, 1.0 / alpha) * v;
}

std::vector<double> simulate_subdiffusive_path(const SdeConfig& cfg, double alpha,
                                               const std::vector<double>& t_grid,
                                               Xoshiro256pp& rng) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("simulate_subdiffusive_path requires alpha in (0,1]");
    if (!(cfg.step > 0.0))
        throw std::domain_error("simulate_subdiffusive_path requires step > 0");

    // process the grid in sorted order so one sweep of the internal clock
    // serves every query; answers go back in the caller's order
    std::vector<std::size_t> order(t_grid.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return t_grid[a] < t_grid[b]; });

    const double ds = cfg.step;
    const double root = std::sqrt(2.0 * cfg.K * ds);
    const double jump_scale = (alpha == 1.0) ? ds : std::pow(ds, 1.0 / alpha);
    const std::size_t max_steps =
        static_cast<std::size_t>(std::ceil(cfg.s_budget / ds));
    NormalSampler normal;

    std::vector<double> out(t_grid.size());
    double x = cfg.x_start;
    double level = 0.0;  // subordinator value at the current internal step
    std::size_t steps = 0;
    for (std::size_t idx : order) {
        const double t = t_grid[idx];
        // report the position at the first internal grid point whose physical
        // time exceeds t (the same convention as invert_subordinator)
        while (level <= t) {
            if (++steps > max_steps)
                throw std::runtime_error(
                    "simulate_subdiffusive_path: horizon beyond the "
                    "internal-time budget");
            const double drift = cfg.drift ? cfg.drift(x) : 0.0;
            const double vol = cfg.sigma ? cfg.sigma(x) : 1.0;
            x += drift / cfg.eta * ds + root * vol * normal(rng);
            level += (alpha == 1.0)
                         ? jump_scale
                         : jump_scale * sample_stable_positive(alpha, rng);
        }
        out[idx] = x;
    }
    return out;
}

double half_line_reference_cdf(double t) {
    if (!(t > 0.0))
        throw std::domain_error("half_line_reference_cdf requires t > 0");
    if (t >= 1e-4) {
        const double z = -1.0 / (256.0 * t);
        Accuracy acc;
        const double f1 = hyp1f3(0.75, 1.25, 1.5, 1.75, z, acc);
        const double f2 = hyp1f3(0.25, 0.5, 0.75, 1.25, z, acc);
        const double f3 = hyp1f3(0.5, 0.75, 1.25, 1.5, z, acc);
        const double sqrt_t = std::sqrt(t);
        return (gamma_reflect(-0.25) * f1 -
                24.0 * sqrt_t * gamma(0.25) * f2) /
                   (24.0 * std::sqrt(2.0) * M_PI * std::pow(t, 0.75)) +
               f3 / (2.0 * kSqrtPi * sqrt_t) + 1.0;
    }
    // below the crossover the alternating hypergeometric sums cancel away all
    // double precision digits; the subordination integral with the closed
    // kernel exp(-s^2/4t)/sqrt(pi t) has positive terms and no such loss
    const double rt = std::sqrt(t);
    auto integrand = [t](double s) {
        if (s <= 0.0) return 0.0;
        return std::exp(-s * s / (4.0 * t)) * erfc(0.5 / std::sqrt(s));
    };
    Accuracy acc;
    acc.abs_tol = 0.0;
    acc.rel_tol = 1e-11;
    double total = integrate(integrand, 0.0, rt / 10.0, acc).value;
    total += integrate(integrand, rt / 10.0, rt, acc).value;
    total += integrate(integrand, rt, 4.0 * rt, acc).value;
    total += integrate_to_infinity(integrand, 4.0 * rt, 4.0 * rt, acc).value;
    return total / (kSqrtPi * rt);
}

double interval_exit_cdf(double T, double y, double v) {
    if (!(y > 0.0 && y < 1.0))
        throw std::domain_error("interval_exit_cdf requires y in (0,1)");
    if (T <= 0.0) return 0.0;
    return exit_left_series(T, y, v) + exit_left_series(T, 1.0 - y, -v);
}

double interval_exit_cdf_inverse(double u, double y, double v) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("interval_exit_cdf_inverse requires u in (0,1)");
    double lo = std::log(1e-14);
    double hi = std::log(1e5);
    for (int i = 0; i < 50 && interval_exit_cdf(std::exp(lo), y, v) > u; ++i)
        lo -= 10.0;
    for (int i = 0; i < 50 && interval_exit_cdf(std::exp(hi), y, v) < u; ++i)
        hi += 10.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (interval_exit_cdf(std::exp(mid), y, v) < u)
            lo = mid;
        else
            hi = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

}  // namespace subfpt
