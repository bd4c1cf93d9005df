#pragma once

#include <algorithm>
#include <cmath>

namespace chordex {

/// Single tolerance policy threaded through every module.
///
/// Comparisons are absolute while the configuration scale is <= 1 and
/// relative to the configuration scale (bounding-box diameter) beyond that.
struct Tolerance {
    double base = 1e-9;   ///< dimensionless base tolerance
    double scale = 1.0;   ///< configuration scale, e.g. bounding-box diameter

    /// Tolerance in length units.
    double value() const { return base * std::max(1.0, scale); }

    /// Activity threshold for a constraint <a,x> <= b: |<a,x> - b| <= value()*(1+|b|).
    double active(double offset) const { return value() * (1.0 + std::fabs(offset)); }

    Tolerance rescaled(double s) const { return Tolerance{base, std::max(s, 0.0)}; }
    Tolerance rebased(double b) const { return Tolerance{b, scale}; }
};

}  // namespace chordex
