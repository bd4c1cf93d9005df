#pragma once

#include <optional>

#include "chordex/tolerance.hpp"
#include "chordex/vec.hpp"

namespace chordex {

/// Line through `base` with unit direction `dir`.
struct Line {
    Point base;
    Vec dir;

    Line() = default;  // empty placeholder; real lines come from the checked constructors

    Line(Point b, Vec d) : base(std::move(b)), dir(normalized(d)) {
        check_same_dim(base, dir);
        if (!all_finite(base) || !all_finite(dir))
            throw std::invalid_argument("Line: non-finite input");
    }

    static Line through(const Point& a, const Point& b) { return Line(a, b - a); }

    Point at(double t) const { return base + dir * t; }
};

/// Hyperplane { x : <normal, x> = offset } with unit normal.
struct Hyperplane {
    Vec normal;
    double offset = 0.0;

    Hyperplane(Vec n, double off) : normal(normalized(n)), offset(off) {}

    static Hyperplane through(const Point& p, const Vec& n) {
        Vec u = normalized(n);
        return Hyperplane(u, dot(u, p));
    }

    double signed_distance(const Point& p) const { return dot(normal, p) - offset; }
};

/// Orthogonal projection of P onto the line l.
Point foot_of_perpendicular(const Point& P, const Line& l);

struct LineClosest {
    Point p1;           ///< closest point on the first line
    Point p2;           ///< closest point on the second line
    double gap = 0.0;   ///< |p1 p2|
    bool parallel = false;  ///< lines are (near-)parallel; p1 is the projection of l2.base
};

/// Closest approach between two lines. For intersecting lines gap = 0 and p1 = p2.
LineClosest line_line_closest(const Line& l1, const Line& l2);

/// Intersection of a line with a hyperplane; nullopt when |<dir,normal>| < 1e-12.
std::optional<Point> line_hyperplane_intersect(const Line& l, const Hyperplane& h);

}  // namespace chordex
