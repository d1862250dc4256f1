#include "subfpt/stable_subordinator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "subfpt/quadrature.hpp"
#include "subfpt/special_functions.hpp"

namespace subfpt {

namespace {

void check_alpha_open(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("alpha must lie in (0,1) here");
}

// log of the Zolotarev angle function
//   A(phi) = sin(a phi)^{theta} sin((1-a) phi) / sin(phi)^{1/(1-a)},
// theta = a/(1-a); A decreases to kappa at phi -> 0 and diverges at phi -> pi.
double log_angle_fn(double alpha, double phi) {
    const double theta = alpha / (1.0 - alpha);
    return theta * std::log(std::sin(alpha * phi)) +
           std::log(std::sin((1.0 - alpha) * phi)) -
           std::log(std::sin(phi)) / (1.0 - alpha);
}

}  // namespace

double sample_stable_positive(double alpha, Xoshiro256pp& rng) {
    if (alpha == 1.0) return 1.0;
    check_alpha_open(alpha);
    // Kanter's representation: V = (A(pi U)/E)^{(1-alpha)/alpha},
    // U uniform(0,1), E exponential(1); Laplace transform e^{-r^alpha} exact.
    const double phi = M_PI * uniform_open(rng);
    const double e = exponential(rng);
    const double ln_a = log_angle_fn(alpha, phi);
    return std::exp((1.0 - alpha) / alpha * (ln_a - std::log(e)));
}

double stable_density(double alpha, double z, const Accuracy& acc) {
    check_alpha_open(alpha);
    if (!(z > 0.0)) throw std::domain_error("stable_density requires z > 0");
    if (alpha == 0.5) {
        // closed form of the one-sided 1/2-stable law
        return std::exp(-1.0 / (4.0 * z)) /
               (2.0 * std::sqrt(M_PI) * z * std::sqrt(z));
    }
    const double theta = alpha / (1.0 - alpha);
    const double ln_w = -theta * std::log(z);  // w = z^{-theta}
    auto integrand = [&](double phi) {
        if (phi <= 0.0 || phi >= M_PI) return 0.0;
        const double ln_a = log_angle_fn(alpha, phi);
        if (ln_a + ln_w > 7.0) return 0.0;  // e^{-A w} underflows regardless
        const double aw = std::exp(ln_a + ln_w);
        return std::exp(ln_a - aw);
    };
    Accuracy qacc = acc;
    qacc.rel_tol = std::max(acc.rel_tol, 1e-12);
    const QuadResult q = integrate(integrand, 0.0, M_PI, qacc);
    if (!q.converged)
        throw std::runtime_error("stable_density quadrature did not converge");
    return theta / M_PI * std::pow(z, -(1.0 + theta)) * q.value;
}

StableTailConstants stable_tail_constants(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("stable_tail_constants requires 0 < alpha < 1");
    StableTailConstants c;
    c.theta = alpha / (1.0 - alpha);
    c.kappa = (1.0 - alpha) * std::pow(alpha, alpha / (1.0 - alpha));
    c.B = std::sqrt(std::pow(alpha, 1.0 / (1.0 - alpha)) /
                    (2.0 * M_PI * (1.0 - alpha)));
    c.xi = (2.0 - alpha) / (2.0 * (1.0 - alpha));
    return c;
}

double q_density(double alpha, double s, double t, const Accuracy& acc) {
    check_alpha_open(alpha);
    if (!(s > 0.0 && t > 0.0))
        throw std::domain_error("q_density requires s > 0 and t > 0");
    const double z = t * std::pow(s, -1.0 / alpha);
    return t / (alpha * std::pow(s, 1.0 + 1.0 / alpha)) * stable_density(alpha, z, acc);
}

SubordinatorPath sample_subordinator_path(double alpha, double ds, double s_max,
                                          Xoshiro256pp& rng) {
    if (!(ds > 0.0 && ds < s_max))
        throw std::domain_error("sample_subordinator_path requires 0 < ds < s_max");
    const std::size_t n = static_cast<std::size_t>(std::ceil(s_max / ds));
    SubordinatorPath path;
    path.internal_grid.resize(n + 1);
    path.values.resize(n + 1);
    path.internal_grid[0] = 0.0;
    path.values[0] = 0.0;
    if (alpha == 1.0) {
        for (std::size_t i = 1; i <= n; ++i) {
            path.internal_grid[i] = static_cast<double>(i) * ds;
            path.values[i] = path.internal_grid[i];
        }
        return path;
    }
    const double scale = std::pow(ds, 1.0 / alpha);
    for (std::size_t i = 1; i <= n; ++i) {
        path.internal_grid[i] = static_cast<double>(i) * ds;
        path.values[i] = path.values[i - 1] + scale * sample_stable_positive(alpha, rng);
    }
    return path;
}

std::vector<double> invert_subordinator(const SubordinatorPath& path,
                                        const std::vector<double>& t_grid) {
    std::vector<double> out(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double t = t_grid[i];
        // first grid point with U(s) > t
        auto it = std::upper_bound(path.values.begin(), path.values.end(), t);
        if (it == path.values.end())
            throw std::range_error("invert_subordinator: t beyond the path's reach");
        out[i] = path.internal_grid[it - path.values.begin()];
    }
    return out;
}

}  // namespace subfpt
