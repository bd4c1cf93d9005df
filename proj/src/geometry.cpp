#include "chordex/geometry.hpp"

namespace chordex {

Point foot_of_perpendicular(const Point& P, const Line& l) {
    check_same_dim(P, l.base);
    double t = dot(P - l.base, l.dir);
    return l.at(t);
}

LineClosest line_line_closest(const Line& l1, const Line& l2) {
    check_same_dim(l1.base, l2.base);
    const Vec w = l2.base - l1.base;
    const double c = dot(l1.dir, l2.dir);
    const double det = 1.0 - c * c;

    LineClosest out{l1.base, l2.base, 0.0, false};
    if (det < 1e-14) {
        // Parallel (or identical) lines: pair l2.base with its projection onto l1.
        out.parallel = true;
        out.p2 = l2.base;
        out.p1 = foot_of_perpendicular(l2.base, l1);
        out.gap = distance(out.p1, out.p2);
        return out;
    }
    const double wd1 = dot(w, l1.dir);
    const double wd2 = dot(w, l2.dir);
    const double t = (wd1 - c * wd2) / det;
    const double s = (c * wd1 - wd2) / det;
    out.p1 = l1.at(t);
    out.p2 = l2.at(s);
    out.gap = distance(out.p1, out.p2);
    return out;
}

std::optional<Point> line_hyperplane_intersect(const Line& l, const Hyperplane& h) {
    check_same_dim(l.base, h.normal);
    const double denom = dot(l.dir, h.normal);
    if (std::fabs(denom) < 1e-12) return std::nullopt;
    const double t = (h.offset - dot(h.normal, l.base)) / denom;
    return l.at(t);
}

}  // namespace chordex
