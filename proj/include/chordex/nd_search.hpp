#pragma once

#include <cstdint>

#include "chordex/concurrency.hpp"

namespace chordex {

/// Deterministic generator with platform-stable uniform and normal deviates
/// (xoshiro256** seeded through splitmix64; no standard-library distributions,
/// so streams are reproducible across implementations).
class Rng {
public:
    explicit Rng(uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    double uniform();              ///< [0, 1)
    double normal();               ///< standard normal
    Vec unit_vector(int dim);      ///< uniform on the unit sphere

private:
    uint64_t next_u64();
    uint64_t s_;
    uint64_t state_[4] = {};
    bool seeded_ = false;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// |AB| for the chord cut by the line through O with the given direction;
/// nullopt when the line misses the body or, for an exterior pivot, when the
/// oriented configuration (both endpoints ahead of O) fails.
std::optional<double> chord_objective(const Body& body, const Point& O, const Vec& dir,
                                      const Tolerance& tol = {});

struct NdSearchOptions {
    int multistart = 64;
    uint64_t seed = 1;
    double step_tol = 1e-10;       ///< final compass step on the sphere
    double merge_scale = 1e-5;     ///< duplicate merge threshold, times diameter;
                                   ///< matched to the value-comparison search
                                   ///< resolution at smooth extrema
    Exec exec = Exec::Parallel;
};

/// Derivative-free multistart search for local extrema of the chord length
/// over line directions: compass descent/ascent on tangent charts of the
/// unit sphere with shrinking steps. Deterministic for a fixed seed;
/// completeness is only relative to the multistart density.
std::vector<ExtremumRecord> find_local_extrema_nd(const Body& body, const Point& O,
                                                  const NdSearchOptions& opt = {},
                                                  const Tolerance& tol = {});

struct TheoremCheck {
    int record_index = 0;
    std::string law;
    bool passed = true;
    bool applicable = true;
    std::string detail;
    std::optional<ConcurrencyReport> report;
};

struct TheoremCheckSummary {
    std::vector<TheoremCheck> checks;
    bool all_passed = true;
};

/// Apply the optimality laws to a record set: concurrency of support normals
/// at minima (interior pivot, or exterior minima meeting the interior) and
/// the face-dimension sum bounds at maxima, including the extreme-point
/// corollary for facet-interior endpoints.
TheoremCheckSummary verify_nd_theorems(const Body& body, const Point& O,
                                       const std::vector<ExtremumRecord>& recs,
                                       const Tolerance& tol = {});

}  // namespace chordex
