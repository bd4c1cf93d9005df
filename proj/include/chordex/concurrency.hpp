#pragma once

#include <string>

#include "chordex/chord_scan.hpp"

namespace chordex {

/// Quantitative check that the normals to the supporting hyperplanes at the
/// chord endpoints and the hyperplane through the pivot orthogonal to the
/// chord are concurrent. Residuals are normalized by the chord length so
/// thresholds are scale-free.
struct ConcurrencyReport {
    Chord chord;
    Point pivot;
    std::vector<Hyperplane> supports_a, supports_b;  ///< one entry when smooth, extreme set otherwise
    Line normal_a, normal_b;
    std::optional<Point> concurrency_point;
    double residual_normals = 0.0;     ///< gap between the two normal lines / |AB|
    double residual_hyperplane = 0.0;  ///< offset of the meeting point along the chord / |AB|
    bool smooth_at_a = false, smooth_at_b = false;
    bool parallel_normals = false;     ///< normals parallel; chord-is-common-normal check applies
    bool passed = true;                ///< the law named below holds at tolerance
    std::string law;                   ///< which optimality law was asserted, if any
    double tolerance_used = 0.0;
};

/// Planar check: perpendicular to l1 at the chord's first endpoint, to l2 at
/// the second, and to the chord at O. residual_normals is the distance from
/// the meeting point of the first two to the third, over |AB|.
ConcurrencyReport concurrency_residual_2d(const Line& l1, const Line& l2, const Chord& ch,
                                          const Point& O, const Tolerance& tol = {});

/// n-dimensional check via the closest approach of the two support normals.
ConcurrencyReport concurrency_residual_nd(const Hyperplane& support_a, const Hyperplane& support_b,
                                          const Chord& ch, const Point& O,
                                          const Tolerance& tol = {});

/// Apply the optimality law governing an extremum record: interior-pivot
/// minima (and exterior minima meeting the interior) must have smooth
/// endpoints with concurrent normals; maxima of smooth bodies likewise;
/// maxima of polytopal bodies are held to the face-dimension laws instead.
ConcurrencyReport verify_extremum(const Body& body, const Point& O, const ExtremumRecord& rec,
                                  const Tolerance& tol = {});

/// Flat key=value block (one report), machine-parsable.
std::string serialize_report(const ConcurrencyReport& rep);

}  // namespace chordex
