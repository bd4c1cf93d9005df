#pragma once

#include "chordex/nd_search.hpp"

namespace chordex {

/// Far-field constants of a polytope: c bounds the cosine between any two
/// exposed-face direction subspaces with trivial intersection; pivots farther
/// than M * diam from the body satisfy the maximizer dimension bound.
struct FarFieldConstants {
    double c = 0.0;                    ///< max subspace-pair cosine, in [0, 1)
    double M = 1.0;                    ///< (1 + 1/sqrt(1-c^2)) / 2
    double U_radius = 0.0;             ///< M * diam
    double diameter = 0.0;
    std::optional<double> m;           ///< min |sin| over facet-pair angles, if no parallel facets
    std::optional<double> M_min;       ///< (1 + 1/m) / 2, if no parallel facets
};

FarFieldConstants far_field_constants(const Body& body, const Tolerance& tol = {});

/// slack = 1 + 1/sin(theta) - 2 OA / AB; nonnegative for every concurrent-
/// normals-critical exterior angle configuration.
double l9_bound_check(double OA, double AB, double theta);

struct FacetAngleInfo {
    std::vector<double> angles;        ///< one angle per facet pair, in (0, pi)
    double m = 0.0;                    ///< min |sin| over nonparallel pairs
    bool has_parallel_facets = false;
};

FacetAngleInfo facet_angles(const Body& body, const Tolerance& tol = {});

struct AuditEntry {
    int pivot_index = 0;
    Point pivot;
    int record_index = 0;
    ExtremumKind kind = ExtremumKind::Min;
    double length = 0.0;
    std::string law;
    bool passed = true;
    std::string detail;
};

struct AuditReport {
    FarFieldConstants constants;
    std::vector<AuditEntry> entries;
    bool all_passed = true;
    int pivots_audited = 0;
};

struct AuditOptions {
    int pivot_samples = 20;
    uint64_t seed = 1;
    int multistart = 32;
    Exec exec = Exec::Parallel;
};

/// Sample far-exterior pivots (outside the exclusion set U by construction)
/// and check every located maximizer against the dimension-sum bound; for
/// polytopes without parallel facets, also check that no located minimizer
/// meets the interior.
AuditReport far_field_audit(const Body& body, const AuditOptions& opt = {},
                            const Tolerance& tol = {});

/// Line-oriented report: one line per (pivot, record, verdict).
std::string serialize_audit(const AuditReport& report);

}  // namespace chordex
