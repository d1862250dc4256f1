#include "subfpt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace subfpt {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (abscissae >= 0; the rule
// is symmetric). Values from the standard tabulation, 16 digits.
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0000000000000000};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct Segment {
    double a, b;
    double value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment evaluate(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double x = h * kXgk[i];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        kronrod += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) gauss += kWg[i / 2] * (f1 + f2);
    }
    kronrod *= h;
    gauss *= h;
    Segment s;
    s.a = a;
    s.b = b;
    s.value = kronrod;
    // standard scaled error estimate; the plain |K-G| is enough at our targets
    s.error = std::abs(kronrod - gauss);
    return s;
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const Accuracy& acc) {
    QuadResult res;
    if (!(a < b)) {
        res.converged = true;
        return res;
    }
    std::priority_queue<Segment> heap;
    Segment first = evaluate(f, a, b);
    res.evaluations = 15;
    double total = first.value;
    double err = first.error;
    heap.push(first);
    const int max_segments = std::max(acc.max_iter, 64);
    while (static_cast<int>(heap.size()) < max_segments) {
        const double tol = std::max(acc.abs_tol, acc.rel_tol * std::abs(total));
        if (err <= tol) break;
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval at rounding limit
            heap.push(worst);
            break;
        }
        Segment left = evaluate(f, worst.a, mid);
        Segment right = evaluate(f, mid, worst.b);
        res.evaluations += 30;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    res.value = total;
    res.abs_error = err;
    res.converged = err <= std::max(acc.abs_tol, acc.rel_tol * std::abs(total));
    return res;
}

QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 double scale, const Accuracy& acc) {
    if (!(scale > 0.0)) scale = 1.0;
    // t = a + scale*u/(1-u), dt = scale/(1-u)^2 du
    auto g = [&](double u) {
        const double om = 1.0 - u;
        const double t = a + scale * u / om;
        return f(t) * scale / (om * om);
    };
    // stop just short of u=1; the integrand must vanish there for convergence
    return integrate(g, 0.0, 1.0 - 1e-14, acc);
}

}  // namespace subfpt
