#include "chordex/philo.hpp"

#include <cmath>
#include <numbers>

#include "chordex/polyroots.hpp"

namespace chordex {

namespace {

/// Newton polish of a root of k(1+u^2)^2 = W (p1+q1 u)(p2+q2 u) on the full quartic.
double polish_on_quartic(double k, double W, double p1, double q1, double p2, double q2,
                         double u) {
    for (int it = 0; it < 3; ++it) {
        const double one = 1.0 + u * u;
        const double f = k * one * one - W * (p1 + q1 * u) * (p2 + q2 * u);
        const double df = 4.0 * k * one * u - W * (q1 * (p2 + q2 * u) + q2 * (p1 + q1 * u));
        if (df == 0.0) break;
        u -= f / df;
    }
    return u;
}

}  // namespace

PhiloConstruction construct_philo_line(const Point& E, const Vec& u1in, const Vec& u2in,
                                       const Point& O, const Tolerance& tol) {
    if (E.dim() != 2 || O.dim() != 2) throw std::invalid_argument("construct_philo_line: 2D only");
    const Vec u1 = normalized(u1in), u2 = normalized(u2in);
    const double theta = angle_between(u1, u2);
    if (!(theta > 0.0 && theta < std::numbers::pi))
        throw std::invalid_argument("construct_philo_line: degenerate angle");

    // Inward unit normals of the two arm lines; signed distances are positive
    // strictly inside the angle.
    const Vec n1 = normalized(u2 - u1 * dot(u2, u1));
    const Vec n2 = normalized(u1 - u2 * dot(u1, u2));
    const Vec w = O - E;
    const double scale = std::max({tol.scale, 1.0, norm(w)});
    const Tolerance t = tol.rescaled(scale);
    const double d1 = dot(n1, w);
    const double d2 = dot(n2, w);
    if (d1 <= t.value() || d2 <= t.value())
        throw std::invalid_argument("construct_philo_line: O must be strictly interior");

    PhiloConstruction out;
    out.vertex = E;
    out.u1 = u1;
    out.u2 = u2;
    out.pivot = O;
    out.circle_center = (E + O) * 0.5;
    out.circle_radius = 0.5 * norm(w);

    // Hyperbola (product of signed arm-line distances = value at O), expanded
    // to world-frame conic coefficients.
    const double k = d1 * d2;
    const double n1E = dot(n1, E), n2E = dot(n2, E);
    out.conic = {n1[0] * n2[0],
                 n1[0] * n2[1] + n1[1] * n2[0],
                 n1[1] * n2[1],
                 -(n1[0] * n2E + n2[0] * n1E),
                 -(n1[1] * n2E + n2[1] * n1E),
                 n1E * n2E - k};

    // Rational parametrization of the circle anchored at E: points
    // X(u) = E + (d0 + u d0p) |w| / (1+u^2); u = 0 is O, the missed point is
    // E itself (never on the hyperbola). Substituting into the hyperbola
    // equation gives k(1+u^2)^2 = |w|^2 (p1+q1 u)(p2+q2 u) whose constant
    // term cancels exactly, leaving the cubic
    //   k u^3 + (2k - W q1 q2) u + (-W (p1 q2 + p2 q1)) = 0,  W = |w|^2.
    const Vec d0 = normalized(w);
    const Vec d0p = perp2(d0);
    const double p1 = dot(n1, d0), q1 = dot(n1, d0p);
    const double p2 = dot(n2, d0), q2 = dot(n2, d0p);
    const double W = norm2(w);

    std::vector<double> roots =
        solve_cubic(k, 0.0, 2.0 * k - W * q1 * q2, -W * (p1 * q2 + p2 * q1));
    for (double& u : roots) u = polish_on_quartic(k, W, p1, q1, p2, q2, u);

    auto point_of = [&](double u) {
        return E + (d0 + d0p * u) * (norm(w) / (1.0 + u * u));
    };

    // Candidates: real intersections distinct from O (u away from 0) that lie
    // inside the angle; the other hyperbola branch lives in the opposite
    // angle and is excluded here.
    const double u_tol = 1e-7;
    double best_margin = -1.0;
    for (double u : roots) {
        if (std::fabs(u) <= u_tol) continue;
        Point P = point_of(u);
        const double m1 = dot(n1, P - E), m2 = dot(n2, P - E);
        if (m1 < -t.value() || m2 < -t.value()) continue;
        out.candidates.push_back(P);
        const double margin = std::min(m1, m2);
        if (margin > best_margin) {
            best_margin = margin;
            out.e_prime = P;
        }
    }

    if (out.candidates.empty()) {
        // Tangency at O: the remaining real roots coincide with u = 0.
        bool tangent_at_o = false;
        for (double u : roots)
            if (std::fabs(u) <= u_tol) tangent_at_o = true;
        if (!tangent_at_o)
            throw std::invalid_argument(
                "construct_philo_line: no second circle-hyperbola intersection inside the angle");
        out.degenerate_tangency = true;
        out.e_prime = O;
        out.line = Line(O, perp2(d0));
        return out;
    }

    out.line = Line::through(O, out.e_prime);
    return out;
}

PhiloResiduals philo_property_residuals(const PhiloConstruction& c, const Tolerance& tol) {
    PhiloResiduals r;
    const Tolerance t = tol.rescaled(std::max({tol.scale, 1.0, norm(c.pivot - c.vertex)}));
    Line arm1(c.vertex, c.u1), arm2(c.vertex, c.u2);
    if (std::fabs(cross2(c.line.dir, c.u1)) < 1e-12 ||
        std::fabs(cross2(c.line.dir, c.u2)) < 1e-12)
        throw std::invalid_argument("philo_property_residuals: line parallel to an arm");
    LineClosest ia = line_line_closest(c.line, arm1);
    LineClosest ib = line_line_closest(c.line, arm2);
    const Point A = ia.p1, B = ib.p1;
    const double ab = distance(A, B);
    if (ab <= t.value()) throw std::invalid_argument("philo_property_residuals: degenerate chord");
    r.len_residual = std::fabs(distance(B, c.e_prime) - distance(A, c.pivot)) / ab;
    if (c.degenerate_tangency) {
        r.angle_residual = 0.0;
    } else {
        r.angle_residual = std::fabs(
            angle_between(c.vertex - c.e_prime, c.pivot - c.e_prime) - std::numbers::pi / 2.0);
    }
    return r;
}

RightAnglePhilo right_angle_closed_form(double a, double b) {
    if (!(a > 0.0 && b > 0.0))
        throw std::invalid_argument("right_angle_closed_form: positive inputs required");
    const double ca = std::cbrt(a), cb = std::cbrt(b);
    return {a + ca * cb * cb, b + ca * ca * cb};
}

}  // namespace chordex
