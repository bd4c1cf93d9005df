#include "chordex/polytope_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chordex/linalg.hpp"
#include "chordex/report.hpp"

namespace chordex {

namespace {

constexpr int kMaxFacets = 12;

void require_polytopal(const Body& body, const char* who) {
    if (!body.polytopal() || !body.bounded())
        throw std::invalid_argument(std::string(who) + ": bounded polytope required");
}

/// Facet indices that actually carry an (n-1)-dimensional face (filters
/// redundant halfspaces out of the constraint list).
std::vector<int> real_facets(const Body& body, const Tolerance& t) {
    const auto& hs = body.facets();
    const auto& verts = body.vertices();
    const int n = body.dimension();
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(hs.size()); ++i) {
        std::vector<Point> on;
        for (const Point& v : verts)
            if (std::fabs(dot(hs[i].normal, v) - hs[i].offset) <= t.active(hs[i].offset))
                on.push_back(v);
        if (static_cast<int>(on.size()) < n) continue;
        std::vector<Vec> span;
        for (size_t j = 1; j < on.size(); ++j) span.push_back(on[j] - on[0]);
        if (rank_of(span, 1e-9 * std::max(1.0, body.scale())) == n - 1) out.push_back(i);
    }
    return out;
}

struct ExposedFace {
    std::vector<int> vertex_ids;
    std::vector<Vec> basis;  ///< orthonormal basis of the direction subspace
    int dim = 0;
};

/// All exposed faces of dimension 1..n-1 via active-constraint subsets.
std::vector<ExposedFace> enumerate_faces(const Body& body, const Tolerance& t) {
    const auto& hs = body.facets();
    const auto& verts = body.vertices();
    const int n = body.dimension();
    const int m = static_cast<int>(hs.size());
    if (m > kMaxFacets)
        throw std::invalid_argument("far_field_constants: more than 12 facets is out of scope");

    // Active sets per vertex.
    std::vector<uint32_t> active(verts.size(), 0);
    for (size_t v = 0; v < verts.size(); ++v)
        for (int i = 0; i < m; ++i)
            if (std::fabs(dot(hs[i].normal, verts[v]) - hs[i].offset) <= t.active(hs[i].offset))
                active[v] |= (1u << i);

    std::vector<ExposedFace> faces;
    std::vector<std::vector<int>> seen;
    for (uint32_t mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> members;
        for (size_t v = 0; v < verts.size(); ++v)
            if ((active[v] & mask) == mask) members.push_back(static_cast<int>(v));
        if (members.size() < 2) continue;  // dimension-0 faces carry no directions
        if (std::find(seen.begin(), seen.end(), members) != seen.end()) continue;
        seen.push_back(members);
        std::vector<Vec> span;
        for (size_t j = 1; j < members.size(); ++j)
            span.push_back(verts[members[j]] - verts[members[0]]);
        std::vector<Vec> basis = orthonormal_basis(span, 1e-9 * std::max(1.0, body.scale()));
        const int d = static_cast<int>(basis.size());
        if (d < 1 || d > n - 1) continue;
        faces.push_back({members, std::move(basis), d});
    }
    return faces;
}

}  // namespace

FarFieldConstants far_field_constants(const Body& body, const Tolerance& tol) {
    require_polytopal(body, "far_field_constants");
    Tolerance t = tol.rescaled(std::max(tol.scale, body.scale()));

    FarFieldConstants out;
    out.diameter = body.diameter();

    std::vector<ExposedFace> faces = enumerate_faces(body, t);
    double c = 0.0;
    for (size_t i = 0; i < faces.size(); ++i) {
        for (size_t j = i + 1; j < faces.size(); ++j) {
            const auto& f1 = faces[i];
            const auto& f2 = faces[j];
            std::vector<Vec> joint = f1.basis;
            joint.insert(joint.end(), f2.basis.begin(), f2.basis.end());
            if (rank_of(joint, 1e-9 * std::max(1.0, body.scale())) != f1.dim + f2.dim)
                continue;  // subspaces share a direction
            c = std::max(c, max_subspace_cosine(f1.basis, f2.basis));
        }
    }
    c = std::min(c, 1.0 - 1e-15);
    out.c = c;
    out.M = 0.5 * (1.0 + 1.0 / std::sqrt(1.0 - c * c));
    out.U_radius = out.M * out.diameter;

    FacetAngleInfo fa = facet_angles(body, tol);
    if (!fa.has_parallel_facets && fa.m > 0.0) {
        out.m = fa.m;
        out.M_min = 0.5 * (1.0 + 1.0 / fa.m);
    }
    return out;
}

double l9_bound_check(double OA, double AB, double theta) {
    if (!(theta > 0.0 && theta < std::numbers::pi / 2.0))
        throw std::invalid_argument("l9_bound_check: theta must be in (0, pi/2)");
    if (!(OA > AB && AB > 0.0))
        throw std::invalid_argument("l9_bound_check: require OA > AB > 0");
    return 1.0 + 1.0 / std::sin(theta) - 2.0 * OA / AB;
}

FacetAngleInfo facet_angles(const Body& body, const Tolerance& tol) {
    require_polytopal(body, "facet_angles");
    Tolerance t = tol.rescaled(std::max(tol.scale, body.scale()));
    std::vector<int> facets = real_facets(body, t);
    const auto& hs = body.facets();

    FacetAngleInfo out;
    out.m = 1.0;
    bool any_nonparallel = false;
    for (size_t i = 0; i < facets.size(); ++i) {
        for (size_t j = i + 1; j < facets.size(); ++j) {
            const double d = dot(hs[facets[i]].normal, hs[facets[j]].normal);
            const double ang = angle_between(hs[facets[i]].normal, hs[facets[j]].normal);
            out.angles.push_back(ang);
            if (std::fabs(d) >= 1.0 - t.base) {
                out.has_parallel_facets = true;
            } else {
                any_nonparallel = true;
                out.m = std::min(out.m, std::fabs(std::sin(ang)));
            }
        }
    }
    if (!any_nonparallel) out.m = 0.0;
    return out;
}

AuditReport far_field_audit(const Body& body, const AuditOptions& opt, const Tolerance& tol) {
    require_polytopal(body, "far_field_audit");
    Tolerance t = tol.rescaled(std::max(tol.scale, body.scale()));

    AuditReport report;
    report.constants = far_field_constants(body, tol);
    FacetAngleInfo fa = facet_angles(body, tol);
    const double R = 1.0 + report.constants.U_radius + report.constants.diameter;
    const int n = body.dimension();

    // Pivots drawn sequentially up front so parallel and serial runs see the
    // same sample set.
    Rng rng(opt.seed);
    std::vector<Point> pivots;
    for (int s = 0; s < opt.pivot_samples; ++s)
        pivots.push_back(body.interior_point() + rng.unit_vector(n) * R);
    report.pivots_audited = opt.pivot_samples;

    std::vector<std::vector<AuditEntry>> per_pivot(pivots.size());
    auto audit_one = [&](int s) {
        NdSearchOptions nd;
        nd.multistart = opt.multistart;
        nd.seed = opt.seed * 0x100000001b3ULL + static_cast<uint64_t>(s);
        nd.exec = Exec::Serial;  // parallelism lives at the pivot level
        std::vector<ExtremumRecord> recs = find_local_extrema_nd(body, pivots[s], nd, tol);
        std::vector<AuditEntry>& entries = per_pivot[s];
        for (int r = 0; r < static_cast<int>(recs.size()); ++r) {
            const ExtremumRecord& rec = recs[r];
            AuditEntry e;
            e.pivot_index = s;
            e.pivot = pivots[s];
            e.record_index = r;
            e.kind = rec.kind;
            e.length = rec.chord.length;
            if (rec.kind == ExtremumKind::Max) {
                const int sum = rec.feature_a.face_dim + rec.feature_b.face_dim;
                e.law = "far_max_face_dimension_sum";
                e.passed = sum <= n - 1;
                if (!e.passed) e.detail = "dimension sum " + std::to_string(sum);
                entries.push_back(e);
            } else if (!fa.has_parallel_facets) {
                Point mid = (rec.chord.a + rec.chord.b) * 0.5;
                Location mloc = classify_point(body, mid, t).location;
                e.law = "far_min_stays_on_boundary";
                e.passed = mloc == Location::Boundary;
                if (!e.passed) e.detail = "minimum chord meets the interior";
                entries.push_back(e);
            }
        }
    };
    if (opt.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int s = 0; s < static_cast<int>(pivots.size()); ++s) audit_one(s);
    } else {
        for (int s = 0; s < static_cast<int>(pivots.size()); ++s) audit_one(s);
    }
    for (auto& vec : per_pivot)
        for (AuditEntry& e : vec) {
            report.all_passed = report.all_passed && e.passed;
            report.entries.push_back(std::move(e));
        }
    return report;
}

std::string serialize_audit(const AuditReport& report) {
    std::string s;
    s += "c=" + format_g17(report.constants.c) + " M=" + format_g17(report.constants.M) +
         " U_radius=" + format_g17(report.constants.U_radius) +
         " diam=" + format_g17(report.constants.diameter) + "\n";
    for (const AuditEntry& e : report.entries) {
        s += "pivot=" + std::to_string(e.pivot_index) + " O=(" + format_vec(e.pivot) +
             ") record=" + std::to_string(e.record_index) +
             " kind=" + (e.kind == ExtremumKind::Max ? "max" : "min") +
             " length=" + format_g17(e.length) + " law=" + e.law +
             " verdict=" + (e.passed ? "pass" : "FAIL");
        if (!e.detail.empty()) s += " detail=" + e.detail;
        s += "\n";
    }
    s += std::string("audit=") + (report.all_passed ? "pass" : "FAIL") + "\n";
    return s;
}

}  // namespace chordex
