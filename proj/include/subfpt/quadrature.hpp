#pragma once

#include <functional>

#include "subfpt/accuracy.hpp"

namespace subfpt {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;  // estimated
    int evaluations = 0;
    bool converged = false;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b]. Splits the segment with the largest
// error estimate until sum of errors <= max(abs_tol, rel_tol * |integral|)
// or the segment budget (acc.max_iter splits) is exhausted.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const Accuracy& acc = {});

// Integral over [a, inf) via t = a + scale * u / (1 - u),  u in [0, 1).
// `scale` should match the decay length of f past a.
QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 double scale, const Accuracy& acc = {});

}  // namespace subfpt
