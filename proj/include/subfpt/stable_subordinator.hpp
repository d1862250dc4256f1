#pragma once

#include <vector>

#include "subfpt/accuracy.hpp"
#include "subfpt/rng.hpp"

namespace subfpt {

// Constants of the small-argument law l(z) ~ B z^{-xi} exp(-kappa/z^theta).
struct StableTailConstants {
    double theta;
    double kappa;
    double B;
    double xi;
};

// One-sided stable variate with Laplace transform E[exp(-r V)] = exp(-r^alpha),
// 0 < alpha <= 1; alpha = 1 returns exactly 1. Kanter's trigonometric
// transform: rejection-free, one uniform and one exponential per sample.
double sample_stable_positive(double alpha, Xoshiro256pp& rng);

// Density l_alpha(z) of the unit one-sided stable law, z > 0, 0 < alpha < 1.
// alpha = 1/2 short-circuits to the closed form exp(-1/(4z))/(2 sqrt(pi) z^{3/2});
// other alpha use adaptive Gauss-Kronrod on a single-integral angle
// representation. Throws std::runtime_error if the quadrature fails.
double stable_density(double alpha, double z, const Accuracy& acc = {});

// Throws std::domain_error at alpha = 1 (theta diverges) or outside (0,1).
StableTailConstants stable_tail_constants(double alpha);

// Density of the inverse subordinator S_alpha(t) at s:
// q(s,t) = (t / (alpha s^{1+1/alpha})) l_alpha(t s^{-1/alpha}).
double q_density(double alpha, double s, double t, const Accuracy& acc = {});

struct SubordinatorPath {
    std::vector<double> internal_grid;  // s = 0, ds, 2ds, ...
    std::vector<double> values;         // U(s), strictly increasing, U(0) = 0
};

// Grid path of U_alpha built from iid increments ds^{1/alpha} * V.
SubordinatorPath sample_subordinator_path(double alpha, double ds, double s_max,
                                          Xoshiro256pp& rng);

// S_alpha(t) = first grid s with U(s) > t, for each t in t_grid (ordered).
// Throws std::range_error if some t is not exceeded within the path.
std::vector<double> invert_subordinator(const SubordinatorPath& path,
                                        const std::vector<double>& t_grid);

}  // namespace subfpt
