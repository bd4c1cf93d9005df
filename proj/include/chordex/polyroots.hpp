#pragma once

#include <vector>

namespace chordex {

/// Real roots of a x^2 + b x + c = 0 (stable quadratic formula).
std::vector<double> solve_quadratic(double a, double b, double c);

/// Real roots of a x^3 + b x^2 + c x + d = 0, a != 0, with Newton polish.
std::vector<double> solve_cubic(double a, double b, double c, double d);

}  // namespace chordex
