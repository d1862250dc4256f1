#pragma once

namespace subfpt {

// Shared tolerance bundle for series and quadrature routines.
struct Accuracy {
    double abs_tol = 1e-14;
    double rel_tol = 1e-12;
    int max_iter = 10000;
};

}  // namespace subfpt
