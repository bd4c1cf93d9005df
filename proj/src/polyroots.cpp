#include "chordex/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chordex {

std::vector<double> solve_quadratic(double a, double b, double c) {
    if (a == 0.0) {
        if (b == 0.0) return {};
        return {-c / b};
    }
    double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return {};
    double sq = std::sqrt(disc);
    double q = -0.5 * (b + (b >= 0 ? sq : -sq));
    std::vector<double> roots;
    roots.push_back(q / a);
    if (q != 0.0) roots.push_back(c / q);
    std::sort(roots.begin(), roots.end());
    return roots;
}

namespace {

double eval_cubic(double a, double b, double c, double d, double x) {
    return ((a * x + b) * x + c) * x + d;
}

double eval_cubic_d1(double a, double b, double c, double x) {
    return (3.0 * a * x + 2.0 * b) * x + c;
}

double polish_cubic(double a, double b, double c, double d, double x) {
    for (int it = 0; it < 4; ++it) {
        double f = eval_cubic(a, b, c, d, x);
        double df = eval_cubic_d1(a, b, c, x);
        if (df == 0.0) break;
        double step = f / df;
        x -= step;
        if (std::fabs(step) < 1e-16 * (1.0 + std::fabs(x))) break;
    }
    return x;
}

}  // namespace

std::vector<double> solve_cubic(double a, double b, double c, double d) {
    if (a == 0.0) return solve_quadratic(b, c, d);
    // Depressed form t^3 + pp t + qq with x = t - b/(3a).
    const double shift = b / (3.0 * a);
    const double bn = b / a, cn = c / a, dn = d / a;
    const double pp = cn - bn * bn / 3.0;
    const double qq = 2.0 * bn * bn * bn / 27.0 - bn * cn / 3.0 + dn;
    const double disc = qq * qq / 4.0 + pp * pp * pp / 27.0;

    std::vector<double> roots;
    if (disc > 0.0) {
        double sq = std::sqrt(disc);
        double u = std::cbrt(-qq / 2.0 + sq);
        double v = std::cbrt(-qq / 2.0 - sq);
        roots.push_back(u + v - shift);
    } else if (disc == 0.0) {
        double u = std::cbrt(-qq / 2.0);
        roots.push_back(2.0 * u - shift);
        roots.push_back(-u - shift);
    } else {
        double r = std::sqrt(-pp * pp * pp / 27.0);
        double phi = std::acos(std::clamp(-qq / (2.0 * r), -1.0, 1.0));
        double m = 2.0 * std::sqrt(-pp / 3.0);
        for (int k = 0; k < 3; ++k)
            roots.push_back(m * std::cos((phi + 2.0 * std::numbers::pi * k) / 3.0) - shift);
    }
    for (double& r : roots) r = polish_cubic(a, b, c, d, r);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double x, double y) { return std::fabs(x - y) == 0.0; }),
                roots.end());
    return roots;
}

}  // namespace chordex
