#include "chordex/concurrency.hpp"

#include <cmath>

#include "chordex/report.hpp"

namespace chordex {

namespace {

double point_line_distance(const Point& P, const Line& l) {
    return distance(P, foot_of_perpendicular(P, l));
}

/// Concurrency residuals from two normal lines and the chord/pivot data.
void fill_from_normals(ConcurrencyReport& rep, const Tolerance& tol) {
    const double len = rep.chord.length;
    const Vec chord_dir = rep.chord.line.dir;
    LineClosest cp = line_line_closest(rep.normal_a, rep.normal_b);
    rep.parallel_normals = cp.parallel;
    std::optional<Point> meet;
    if (!cp.parallel) {
        meet = (cp.p1 + cp.p2) * 0.5;
        if (rep.pivot.dim() == 2) {
            Line perp_at_o(rep.pivot, perp2(chord_dir));
            rep.residual_normals = point_line_distance(*meet, perp_at_o) / len;
        } else {
            rep.residual_normals = cp.gap / len;
        }
    } else {
        // Parallel normals: the gap between the two lines is the whole
        // failure measure (the concurrency condition degenerates to the
        // chord being the common normal). The meeting reference is where the
        // midline between the two normals crosses the hyperplane through the
        // pivot orthogonal to the chord; a point along that midline carries
        // no extra information, so the hyperplane residual vanishes there.
        rep.residual_normals = cp.gap / len;
        const double denom = dot(rep.normal_a.dir, chord_dir);
        if (std::fabs(denom) > 1e-12) {
            Line midline((cp.p1 + cp.p2) * 0.5, rep.normal_a.dir);
            const double t = dot(rep.pivot - midline.base, chord_dir) / denom;
            Point ref = midline.at(t);
            if (cp.gap <= std::max(tol.value(), 1e-6 * len)) meet = ref;
            rep.concurrency_point = meet;
            rep.residual_hyperplane = std::fabs(dot(ref - rep.pivot, chord_dir)) / len;
            rep.tolerance_used = tol.value();
            return;
        }
    }
    rep.concurrency_point = meet;
    const Point ref = meet ? *meet : (cp.p1 + cp.p2) * 0.5;
    rep.residual_hyperplane = std::fabs(dot(ref - rep.pivot, chord_dir)) / len;
    rep.tolerance_used = tol.value();
}

}  // namespace

ConcurrencyReport concurrency_residual_2d(const Line& l1, const Line& l2, const Chord& ch,
                                          const Point& O, const Tolerance& tol) {
    if (ch.length <= tol.value() || ch.degenerate)
        throw std::invalid_argument("concurrency_residual_2d: zero-length chord");
    if (O.dim() != 2) throw std::invalid_argument("concurrency_residual_2d: 2D only");
    ConcurrencyReport rep;
    rep.chord = ch;
    rep.pivot = O;
    rep.supports_a = {Hyperplane::through(ch.a, perp2(l1.dir))};
    rep.supports_b = {Hyperplane::through(ch.b, perp2(l2.dir))};
    rep.normal_a = Line(ch.a, perp2(l1.dir));
    rep.normal_b = Line(ch.b, perp2(l2.dir));
    rep.smooth_at_a = rep.smooth_at_b = true;
    fill_from_normals(rep, tol);
    return rep;
}

ConcurrencyReport concurrency_residual_nd(const Hyperplane& support_a, const Hyperplane& support_b,
                                          const Chord& ch, const Point& O,
                                          const Tolerance& tol) {
    if (ch.length <= tol.value() || ch.degenerate)
        throw std::invalid_argument("concurrency_residual_nd: zero-length chord");
    ConcurrencyReport rep;
    rep.chord = ch;
    rep.pivot = O;
    rep.supports_a = {support_a};
    rep.supports_b = {support_b};
    rep.normal_a = Line(ch.a, support_a.normal);
    rep.normal_b = Line(ch.b, support_b.normal);
    rep.smooth_at_a = rep.smooth_at_b = true;
    fill_from_normals(rep, tol);
    return rep;
}

ConcurrencyReport verify_extremum(const Body& body, const Point& O, const ExtremumRecord& rec,
                                  const Tolerance& tol) {
    Tolerance t = tol.rescaled(std::max({tol.scale, body.scale(), norm(O)}));
    if (rec.chord.degenerate || rec.chord.length <= t.value()) {
        ConcurrencyReport rep;
        rep.chord = rec.chord;
        rep.pivot = O;
        rep.law = "degenerate_chord";
        rep.passed = false;
        return rep;
    }
    Classification cl = classify_point(body, O, t);
    const bool interior = cl.location == Location::Interior;

    SupportSet sa = supporting_hyperplanes_at(body, rec.feature_a, t);
    SupportSet sb = supporting_hyperplanes_at(body, rec.feature_b, t);

    ConcurrencyReport rep;
    rep.chord = rec.chord;
    rep.pivot = O;
    rep.supports_a = sa.planes;
    rep.supports_b = sb.planes;
    rep.smooth_at_a = sa.unique;
    rep.smooth_at_b = sb.unique;

    // Worst residual over the extreme support pairs; a cone endpoint is
    // evidence against the smoothness laws, never averaged away.
    double worst_normals = -1.0, worst_hyper = 0.0;
    for (const Hyperplane& ha : sa.planes) {
        for (const Hyperplane& hb : sb.planes) {
            ConcurrencyReport r = concurrency_residual_nd(ha, hb, rec.chord, O, t);
            worst_hyper = std::max(worst_hyper, r.residual_hyperplane);
            if (r.residual_normals > worst_normals) {
                worst_normals = r.residual_normals;
                rep.normal_a = r.normal_a;
                rep.normal_b = r.normal_b;
                rep.concurrency_point = r.concurrency_point;
                rep.parallel_normals = r.parallel_normals;
            }
        }
    }
    rep.residual_normals = worst_normals;
    rep.residual_hyperplane = worst_hyper;
    rep.tolerance_used = std::max(1e-6, t.base);

    const double resid_tol = rep.tolerance_used;
    bool chord_meets_interior = false;
    if (!interior) {
        Point mid = (rec.chord.a + rec.chord.b) * 0.5;
        chord_meets_interior = classify_point(body, mid, t).location == Location::Interior;
    }

    if (rec.kind == ExtremumKind::Min && (interior || chord_meets_interior)) {
        rep.law = interior ? "min_smooth_concurrent_normals"
                           : "exterior_min_smooth_concurrent_normals";
        rep.passed = rep.smooth_at_a && rep.smooth_at_b &&
                     rep.residual_normals <= resid_tol && rep.residual_hyperplane <= resid_tol;
    } else if (rec.kind == ExtremumKind::Min) {
        rep.law = "exterior_min_boundary_chord";
        rep.passed = true;  // no concurrency assertion for boundary-contained minima
    } else if (body.smooth()) {
        rep.law = "smooth_max_concurrent_normals";
        rep.passed = rep.residual_normals <= resid_tol && rep.residual_hyperplane <= resid_tol;
    } else if (body.polytopal()) {
        const int n = body.dimension();
        const int sum = rec.feature_a.face_dim + rec.feature_b.face_dim;
        if (interior) {
            rep.law = "max_face_dimension_sum_interior";
            rep.passed = sum <= n - 1;
        } else {
            rep.law = "max_face_dimension_sum_exterior";
            rep.passed = sum <= n;
        }
    } else {
        // Maxima of angle/strip bodies: the chord-length function is strictly
        // convex, so a maximum record contradicts the model.
        rep.law = "unexpected_max_for_convex_length_function";
        rep.passed = false;
    }
    return rep;
}

std::string serialize_report(const ConcurrencyReport& rep) {
    std::string s;
    s += kv("chord_a", rep.chord.a);
    s += kv("chord_b", rep.chord.b);
    s += kv("chord_length", rep.chord.length);
    s += kv("pivot", rep.pivot);
    for (size_t i = 0; i < rep.supports_a.size(); ++i)
        s += kv("support_a" + std::to_string(i) + "_normal", rep.supports_a[i].normal);
    for (size_t i = 0; i < rep.supports_b.size(); ++i)
        s += kv("support_b" + std::to_string(i) + "_normal", rep.supports_b[i].normal);
    s += kv("smooth_at_a", rep.smooth_at_a);
    s += kv("smooth_at_b", rep.smooth_at_b);
    s += kv("parallel_normals", rep.parallel_normals);
    s += kv("concurrency_point",
            rep.concurrency_point ? format_vec(*rep.concurrency_point) : std::string("absent"));
    s += kv("residual_normals", rep.residual_normals);
    s += kv("residual_hyperplane", rep.residual_hyperplane);
    s += kv("law", rep.law.empty() ? std::string("none") : rep.law);
    s += kv("passed", rep.passed);
    s += kv("tolerance", rep.tolerance_used);
    return s;
}

}  // namespace chordex
