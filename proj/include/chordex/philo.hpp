#pragma once

#include <array>

#include "chordex/geometry.hpp"

namespace chordex {

/// Classical minimal-chord construction for an angle with vertex E and an
/// interior point O: intersect the hyperbola through O with the arm lines as
/// asymptotes and the circle on [EO] as diameter; the second intersection E'
/// determines the line.
struct PhiloConstruction {
    std::array<double, 6> conic{};  ///< hyperbola a x^2 + b xy + c y^2 + d x + e y + f = 0
    Point circle_center;
    double circle_radius = 0.0;
    Point e_prime;
    Line line;
    bool degenerate_tangency = false;  ///< circle and hyperbola tangent at O; E' = O
    std::vector<Point> candidates;     ///< all in-angle intersections distinct from O

    Point vertex;
    Vec u1, u2;
    Point pivot;
};

PhiloConstruction construct_philo_line(const Point& E, const Vec& u1, const Vec& u2,
                                       const Point& O, const Tolerance& tol = {});

struct PhiloResiduals {
    double len_residual = 0.0;    ///< | |BE'| - |AO| | / |AB|
    double angle_residual = 0.0;  ///< | angle(E,E',O) - pi/2 |, 0 in the degenerate case
};

/// Defining invariants of the construction: equal asymptote overhangs and the
/// right angle at E'.
PhiloResiduals philo_property_residuals(const PhiloConstruction& c, const Tolerance& tol = {});

/// Right angle at the origin with arms on the axes and O = (a, b): the cut
/// points of the minimal chord are (x, 0) and (0, y) in closed form.
struct RightAnglePhilo {
    double x, y;
};
RightAnglePhilo right_angle_closed_form(double a, double b);

}  // namespace chordex
