#pragma once

#include <functional>
#include <iosfwd>
#include <numbers>
#include <stdexcept>

#include "chordex/body.hpp"

namespace chordex {

struct BoundaryPivotError : std::runtime_error {
    BoundaryPivotError() : std::runtime_error("pivot lies on the body boundary") {}
};

enum class Exec { Serial, Parallel };

// ---------------------------------------------------------------------------
// Projection-anchored angle parametrization
// ---------------------------------------------------------------------------

/// Frame for the angle-body analytics with an interior pivot. The parameter
/// phi is the signed angle at O between the chord ray toward arm 1 and the
/// perpendicular from O to arm line 1; chords exist for
/// phi in (theta - pi/2, pi/2).
struct InteriorAngleFrame {
    Point O;
    Point foot1, foot2;   ///< perpendicular feet of O on the two arm lines
    double h1, h2;        ///< distances from O to the arm lines
    Vec u1, u2;           ///< arm directions away from the vertex
    Vec n1hat;            ///< unit vector from foot1 toward O
    double theta;
    double sigma;         ///< d(direction angle)/d(phi), +1 or -1

    static InteriorAngleFrame make(const Angle2D& a, const Point& O, const Tolerance& tol = {});

    double domain_lo() const { return theta - std::numbers::pi / 2.0; }
    double domain_hi() const { return std::numbers::pi / 2.0; }

    /// Unit direction of the chord line at phi, pointing from O toward arm 1.
    Vec dir_of_phi(double phi) const;
    /// Inverse map; accepts either orientation of the line direction.
    double phi_of_dir(const Vec& d) const;
    Point endpoint_arm1(double phi) const;
    Point endpoint_arm2(double phi) const;
};

/// Frame for the exterior-pivot configuration: the arm crossed second (the
/// far one) plays the role of arm 1; chords exist for phi in
/// (phi through the vertex, pi/2) and satisfy B in [OA].
struct ExteriorAngleFrame {
    Point O;
    Point foot1, foot2;
    double h1, h2;
    Vec u1, u2;           ///< u1 = far arm direction, u2 = near arm direction
    Vec n1hat;
    double theta;
    double sigma;
    double phi_vertex;    ///< phi of the line through the angle vertex
    bool arms_swapped;    ///< arm 2 of the body is the far arm

    static ExteriorAngleFrame make(const Angle2D& a, const Point& O, const Tolerance& tol = {});

    double domain_lo() const { return phi_vertex; }
    double domain_hi() const { return std::numbers::pi / 2.0; }

    Vec dir_of_phi(double phi) const;
    double phi_of_dir(const Vec& d) const;
    Point endpoint_far(double phi) const;
    Point endpoint_near(double phi) const;
};

struct AngleEvalF {
    double length;
    double derivative;
    double second_derivative;
};

struct AngleEvalG {
    double length;
    double derivative;
};

/// Chord length of an angle body for an interior pivot, with the first and
/// second derivatives in phi; strictly convex on its domain.
AngleEvalF angle_f(const Angle2D& a, const Point& O, double phi, const Tolerance& tol = {});

/// Directed chord length |OA| - |OB| for an exterior pivot, with derivative.
AngleEvalG angle_g(const Angle2D& a, const Point& O, double phi, const Tolerance& tol = {});

/// d|OX|/d(ray angle) for the intersection X of a ray from O with a fixed
/// line; the linearization of the boundary-distance function at a smooth point.
double radial_derivative(const Point& O, const Point& X, const Line& tangent);

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct SweepSample {
    double phi = 0.0;          ///< direction angle of the line through O
    double length = 0.0;
    double derivative = 0.0;
    bool has_derivative = false;
    bool in_domain = false;
};

struct SweepResult {
    std::vector<SweepSample> samples;
    bool pivot_interior = true;
    bool circular = false;      ///< interior pivot: phi and phi + pi identified
    double domain_lo = 0.0;     ///< sampled direction-angle window
    double domain_hi = 0.0;
};

/// Uniform sample of the chord-length function over lines through O:
/// direction angles [0, pi) for an interior pivot, the oriented visibility
/// window for an exterior one. Parallel execution is bit-identical to serial.
SweepResult sweep(const Body& body, const Point& O, int grid_size, const Tolerance& tol = {},
                  Exec exec = Exec::Parallel);

/// CSV with header phi,length,derivative,in_domain.
void write_sweep_csv(std::ostream& os, const SweepResult& res);

// ---------------------------------------------------------------------------
// Extrema
// ---------------------------------------------------------------------------

enum class ExtremumKind { Min, Max };

struct ExtremumRecord {
    double phi_star = 0.0;      ///< direction angle (2D scans; NaN for nD searches)
    Vec direction;              ///< unit direction of the chord line
    ExtremumKind kind = ExtremumKind::Min;
    Chord chord;
    BoundaryFeature feature_a, feature_b;
    double refinement_width = 0.0;
};

struct FindExtremaOptions {
    int grid_size = 0;              ///< 0: max(1024, 8 * #vertices)
    double refine_width = 1e-12;    ///< target bracket width in radians
    Exec exec = Exec::Parallel;
};

/// Locate and refine all extrema of the chord-length function visible at the
/// sweep resolution. Derivative sign changes are refined by bisection;
/// brackets with disagreeing one-sided slopes (kinks) by golden section.
std::vector<ExtremumRecord> find_extrema(const Body& body, const Point& O,
                                         const Tolerance& tol = {},
                                         const FindExtremaOptions& opt = {});

/// Chord of the line through O at direction angle phi, with pivot-class
/// validity applied (exterior pivots require the oriented configuration).
struct DirectionalChord {
    bool valid = false;
    Chord chord;
};
DirectionalChord chord_at_angle(const Body& body, const Point& O, double phi,
                                bool pivot_interior, const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// Twofold linearization at a smooth chord
// ---------------------------------------------------------------------------

/// Length of the segment cut by l(phi) from the two tangent lines at the
/// phi0-chord endpoints. Agrees with the chord-length function in value and
/// first derivative at phi0 and is strictly convex on its domain.
struct LinearizedChord {
    Point O;
    Line tangent_a, tangent_b;
    bool pivot_interior = true;

    /// nullopt when l(phi) is parallel to one of the tangents.
    std::optional<double> operator()(double phi) const;
};

LinearizedChord linearized_chord(const Body& body, const Point& O, double phi0,
                                 const Tolerance& tol = {});

}  // namespace chordex
