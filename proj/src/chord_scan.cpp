#include "chordex/chord_scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <tuple>

namespace chordex {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::pair<Vec, Vec> inward_normals(const Angle2D& a) {
    Vec n1 = normalized(a.u2 - a.u1 * dot(a.u2, a.u1));
    Vec n2 = normalized(a.u1 - a.u2 * dot(a.u1, a.u2));
    return {n1, n2};
}

Tolerance scan_tol(const Body& body, const Point& O, const Tolerance& tol) {
    return tol.rescaled(std::max({tol.scale, body.scale(), norm(O) + body.scale()}));
}

}  // namespace

// ---------------------------------------------------------------------------
// Angle frames
// ---------------------------------------------------------------------------

InteriorAngleFrame InteriorAngleFrame::make(const Angle2D& a, const Point& O,
                                            const Tolerance& tol) {
    auto [n1, n2] = inward_normals(a);
    const double tolv = tol.rescaled(std::max(tol.scale, norm(O - a.vertex))).value();
    if (dot(n1, O - a.vertex) <= tolv || dot(n2, O - a.vertex) <= tolv)
        throw std::invalid_argument("angle frame: pivot must be strictly interior");

    InteriorAngleFrame f;
    f.O = O;
    f.u1 = a.u1;
    f.u2 = a.u2;
    f.theta = a.theta;
    Line arm1(a.vertex, a.u1), arm2(a.vertex, a.u2);
    f.foot1 = foot_of_perpendicular(O, arm1);
    f.foot2 = foot_of_perpendicular(O, arm2);
    f.h1 = distance(O, f.foot1);
    f.h2 = distance(O, f.foot2);
    f.n1hat = normalized(O - f.foot1);
    f.sigma = cross2(f.u1, f.n1hat) > 0 ? 1.0 : -1.0;
    return f;
}

Vec InteriorAngleFrame::dir_of_phi(double phi) const {
    return normalized(u1 * std::sin(phi) - n1hat * std::cos(phi));
}

double InteriorAngleFrame::phi_of_dir(const Vec& d) const {
    double phi = std::atan2(dot(d, u1), -dot(d, n1hat));
    if (phi > domain_lo() && phi < domain_hi()) return phi;
    double alt = std::atan2(-dot(d, u1), dot(d, n1hat));
    return alt;
}

Point InteriorAngleFrame::endpoint_arm1(double phi) const {
    return foot1 + u1 * (h1 * std::tan(phi));
}

Point InteriorAngleFrame::endpoint_arm2(double phi) const {
    return foot2 + u2 * (h2 * std::tan(theta - phi));
}

ExteriorAngleFrame ExteriorAngleFrame::make(const Angle2D& a, const Point& O,
                                            const Tolerance& tol) {
    auto [n1, n2] = inward_normals(a);
    const double tolv = tol.rescaled(std::max(tol.scale, norm(O - a.vertex))).value();
    const double d1 = dot(n1, O - a.vertex);
    const double d2 = dot(n2, O - a.vertex);
    if (!((d1 > tolv && d2 < -tolv) || (d1 < -tolv && d2 > tolv)))
        throw std::invalid_argument(
            "angle frame: pivot must lie outside the angle and its opposite angle");

    ExteriorAngleFrame f;
    f.O = O;
    f.theta = a.theta;
    // The near arm is the one whose halfplane excludes O; the far arm plays
    // the role of arm 1 in the parametrization.
    f.arms_swapped = d1 < 0.0;
    const Vec ufar = f.arms_swapped ? a.u2 : a.u1;
    const Vec unear = f.arms_swapped ? a.u1 : a.u2;
    f.u1 = ufar;
    f.u2 = unear;
    Line far_line(a.vertex, ufar), near_line(a.vertex, unear);
    f.foot1 = foot_of_perpendicular(O, far_line);
    f.foot2 = foot_of_perpendicular(O, near_line);
    f.h1 = distance(O, f.foot1);
    f.h2 = distance(O, f.foot2);
    if (f.h1 <= tolv || f.h2 <= tolv)
        throw std::invalid_argument("angle frame: pivot lies on an arm line");
    f.n1hat = normalized(O - f.foot1);
    f.sigma = cross2(f.u1, f.n1hat) > 0 ? 1.0 : -1.0;
    const double sE = dot(a.vertex - f.foot1, f.u1);
    f.phi_vertex = std::atan2(sE, f.h1);
    return f;
}

Vec ExteriorAngleFrame::dir_of_phi(double phi) const {
    return normalized(u1 * std::sin(phi) - n1hat * std::cos(phi));
}

double ExteriorAngleFrame::phi_of_dir(const Vec& d) const {
    double phi = std::atan2(dot(d, u1), -dot(d, n1hat));
    if (phi > domain_lo() && phi < domain_hi()) return phi;
    return std::atan2(-dot(d, u1), dot(d, n1hat));
}

Point ExteriorAngleFrame::endpoint_far(double phi) const {
    return foot1 + u1 * (h1 * std::tan(phi));
}

Point ExteriorAngleFrame::endpoint_near(double phi) const {
    // Intersection of the chord line with the near arm line (exact geometry;
    // equals foot2 + h2 tan(phi - theta) u2 under the frame conventions).
    Line l(O, dir_of_phi(phi));
    Line near_line(foot2, u2);
    LineClosest cp = line_line_closest(l, near_line);
    return cp.p2;
}

// ---------------------------------------------------------------------------
// Closed-form angle evaluations
// ---------------------------------------------------------------------------

AngleEvalF angle_f(const Angle2D& a, const Point& O, double phi, const Tolerance& tol) {
    InteriorAngleFrame f = InteriorAngleFrame::make(a, O, tol);
    if (!(phi > f.domain_lo() && phi < f.domain_hi()))
        throw std::invalid_argument("angle_f: phi outside (theta - pi/2, pi/2)");
    const double psi = f.theta - phi;
    const double oa = f.h1 / std::cos(phi);
    const double ob = f.h2 / std::cos(psi);
    const double tp = std::tan(phi), tq = std::tan(psi);
    AngleEvalF out;
    out.length = oa + ob;
    out.derivative = oa * tp - ob * tq;
    out.second_derivative = oa * (tp * tp + 1.0 / (std::cos(phi) * std::cos(phi))) +
                            ob * (tq * tq + 1.0 / (std::cos(psi) * std::cos(psi)));
    return out;
}

AngleEvalG angle_g(const Angle2D& a, const Point& O, double phi, const Tolerance& tol) {
    ExteriorAngleFrame f = ExteriorAngleFrame::make(a, O, tol);
    if (!(phi > f.domain_lo() && phi < f.domain_hi()))
        throw std::invalid_argument("angle_g: phi outside the domain");
    const double psi = phi - f.theta;
    const double oa = f.h1 / std::cos(phi);
    const double ob = f.h2 / std::cos(psi);
    AngleEvalG out;
    out.length = oa - ob;
    out.derivative = oa * std::tan(phi) - ob * std::tan(psi);
    return out;
}

double radial_derivative(const Point& O, const Point& X, const Line& tangent) {
    const Point F = foot_of_perpendicular(O, tangent);
    const double h = distance(O, F);
    const Vec tau = perp2(normalized(F - O));
    const double s = dot(X - F, tau);
    return distance(O, X) * s / h;
}

// ---------------------------------------------------------------------------
// Directional chords
// ---------------------------------------------------------------------------

DirectionalChord chord_at_angle(const Body& body, const Point& O, double phi,
                                bool pivot_interior, const Tolerance& tol) {
    Vec d{std::cos(phi), std::sin(phi)};
    ChordResult res = chord(body, Line(O, d), tol);
    DirectionalChord out;
    if (!res.hit()) return out;
    const Chord& ch = *res.chord;
    if (pivot_interior) {
        if (!(ch.ta <= 0.0 && ch.tb >= 0.0)) return out;
    } else {
        if (!(ch.ta > 0.0)) return out;
    }
    out.valid = true;
    out.chord = ch;
    return out;
}

// ---------------------------------------------------------------------------
// Sweep
// ---------------------------------------------------------------------------

namespace {

/// Analytic derivative d(length)/d(direction angle) for angle bodies.
struct AngleAnalytics {
    bool interior;
    InteriorAngleFrame fi;
    ExteriorAngleFrame fe;

    double derivative_at(double alpha) const {
        Vec d{std::cos(alpha), std::sin(alpha)};
        if (interior) {
            double phi = fi.phi_of_dir(d);
            if (!(phi > fi.domain_lo() && phi < fi.domain_hi())) return kNaN;
            const double psi = fi.theta - phi;
            const double oa = fi.h1 / std::cos(phi);
            const double ob = fi.h2 / std::cos(psi);
            return fi.sigma * (oa * std::tan(phi) - ob * std::tan(psi));
        }
        double phi = fe.phi_of_dir(d);
        if (!(phi > fe.domain_lo() && phi < fe.domain_hi())) return kNaN;
        const double psi = phi - fe.theta;
        const double oa = fe.h1 / std::cos(phi);
        const double ob = fe.h2 / std::cos(psi);
        return fe.sigma * (oa * std::tan(phi) - ob * std::tan(psi));
    }
};

std::optional<AngleAnalytics> make_angle_analytics(const Body& body, const Point& O,
                                                   bool interior, const Tolerance& tol) {
    const Angle2D* a = body.as<Angle2D>();
    if (!a) return std::nullopt;
    AngleAnalytics an{interior, {}, {}};
    if (interior) an.fi = InteriorAngleFrame::make(*a, O, tol);
    else an.fe = ExteriorAngleFrame::make(*a, O, tol);
    return an;
}

/// Oriented direction-angle window of valid chords for an exterior pivot.
std::pair<double, double> exterior_window(const Body& body, const Point& O,
                                          const Tolerance& tol) {
    if (const Angle2D* a = body.as<Angle2D>()) {
        ExteriorAngleFrame f = ExteriorAngleFrame::make(*a, O, tol);
        Vec dlo = f.dir_of_phi(f.domain_lo() + 1e-12);
        double alo = std::atan2(dlo[1], dlo[0]);
        double width = f.domain_hi() - f.domain_lo();
        return f.sigma > 0 ? std::make_pair(alo, alo + width)
                           : std::make_pair(alo - width, alo);
    }
    if (const Strip2D* s = body.as<Strip2D>()) {
        // Window: the open halfcircle of directions pointing from O toward the strip.
        Vec n = normalized(body.interior_point() - foot_of_perpendicular(body.interior_point(),
                                                                         Line(O, s->line1.dir)));
        double an = std::atan2(n[1], n[0]);
        return {an - kPi / 2.0, an + kPi / 2.0};
    }
    // Bounded bodies: bisect on chord existence around the axis toward the body.
    Vec axis = normalized(body.interior_point() - O);
    double a0 = std::atan2(axis[1], axis[0]);
    auto exists = [&](double alpha) {
        return chord_at_angle(body, O, alpha, false, tol).valid;
    };
    if (!exists(a0)) throw std::invalid_argument("sweep: no chord toward the body interior");
    double lo_true = a0, lo_false = a0 - kPi;
    for (int it = 0; it < 80; ++it) {
        double m = 0.5 * (lo_true + lo_false);
        (exists(m) ? lo_true : lo_false) = m;
    }
    double hi_true = a0, hi_false = a0 + kPi;
    for (int it = 0; it < 80; ++it) {
        double m = 0.5 * (hi_true + hi_false);
        (exists(m) ? hi_true : hi_false) = m;
    }
    return {lo_true, hi_true};
}

}  // namespace

SweepResult sweep(const Body& body, const Point& O, int grid_size, const Tolerance& tol,
                  Exec exec) {
    if (body.dimension() != 2) throw std::invalid_argument("sweep: 2D bodies only");
    if (grid_size < 16) throw std::invalid_argument("sweep: grid_size >= 16");
    Tolerance t = scan_tol(body, O, tol);
    Classification cl = classify_point(body, O, t);
    if (cl.location == Location::Boundary) throw BoundaryPivotError();
    const bool interior = cl.location == Location::Interior;

    SweepResult res;
    res.pivot_interior = interior;
    res.circular = interior;
    if (interior) {
        res.domain_lo = 0.0;
        res.domain_hi = kPi;
    } else {
        auto [lo, hi] = exterior_window(body, O, t);
        res.domain_lo = lo;
        res.domain_hi = hi;
    }

    const int n = grid_size;
    res.samples.assign(n, SweepSample{});
    const double span = res.domain_hi - res.domain_lo;
    auto phi_at = [&](int i) {
        return interior ? res.domain_lo + span * i / n
                        : res.domain_lo + span * (i + 0.5) / n;
    };

    auto eval_one = [&](int i) {
        SweepSample s;
        s.phi = phi_at(i);
        DirectionalChord dc = chord_at_angle(body, O, s.phi, interior, t);
        if (dc.valid) {
            s.in_domain = true;
            s.length = dc.chord.length;
        } else {
            s.length = kNaN;
        }
        return s;
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) res.samples[i] = eval_one(i);
    } else {
        for (int i = 0; i < n; ++i) res.samples[i] = eval_one(i);
    }

    // Derivative pass: analytic for angle bodies, central differences elsewhere.
    std::optional<AngleAnalytics> an = make_angle_analytics(body, O, interior, t);
    const double h = span / n;
    auto fill_derivative = [&](int i) {
        SweepSample& s = res.samples[i];
        if (!s.in_domain) return;
        if (an) {
            double d = an->derivative_at(s.phi);
            if (std::isfinite(d)) {
                s.derivative = d;
                s.has_derivative = true;
            }
            return;
        }
        const int prev = (i == 0) ? (res.circular ? n - 1 : -1) : i - 1;
        const int next = (i == n - 1) ? (res.circular ? 0 : -1) : i + 1;
        if (prev < 0 || next < 0) return;
        const SweepSample& sp = res.samples[prev];
        const SweepSample& sn = res.samples[next];
        if (!sp.in_domain || !sn.in_domain) return;
        s.derivative = (sn.length - sp.length) / (2.0 * h);
        s.has_derivative = true;
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) fill_derivative(i);
    } else {
        for (int i = 0; i < n; ++i) fill_derivative(i);
    }
    return res;
}

void write_sweep_csv(std::ostream& os, const SweepResult& res) {
    os << "phi,length,derivative,in_domain\n";
    char buf[128];
    for (const SweepSample& s : res.samples) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%d\n", s.phi,
                      s.in_domain ? s.length : kNaN,
                      s.has_derivative ? s.derivative : kNaN, s.in_domain ? 1 : 0);
        os << buf;
    }
}

// ---------------------------------------------------------------------------
// Extrema
// ---------------------------------------------------------------------------

namespace {

struct ScanContext {
    const Body& body;
    Point O;
    bool interior;
    Tolerance tol;
    std::optional<AngleAnalytics> analytics;

    double length_at(double phi) const {
        DirectionalChord dc = chord_at_angle(body, O, phi, interior, tol);
        return dc.valid ? dc.chord.length : kNaN;
    }

    struct DerivEval {
        double value;
        bool smooth;  ///< computed from analytic/tangent data at smooth endpoints
    };

    /// Best available derivative of the chord-length function at phi:
    /// angle analytics, then endpoint-tangent linearization, then central
    /// differences (marked non-smooth).
    std::optional<DerivEval> derivative_at(double phi) const {
        if (analytics) {
            double d = analytics->derivative_at(phi);
            if (std::isfinite(d)) return DerivEval{d, true};
        }
        DirectionalChord dc = chord_at_angle(body, O, phi, interior, tol);
        if (dc.valid && !dc.chord.degenerate) {
            Classification ca = classify_point(body, dc.chord.a, tol);
            Classification cb = classify_point(body, dc.chord.b, tol);
            if (ca.location == Location::Boundary && cb.location == Location::Boundary) {
                if (ca.feature->smooth && cb.feature->smooth) {
                    std::optional<Line> tb_line = cb.feature->tangent;
                    std::optional<Line> ta_line = ca.feature->tangent;
                    if (!ta_line) {
                        SupportSet sa = supporting_hyperplanes_at(body, *ca.feature, tol);
                        ta_line = Line(dc.chord.a, perp2(sa.planes[0].normal));
                    }
                    if (!tb_line) {
                        SupportSet sb = supporting_hyperplanes_at(body, *cb.feature, tol);
                        tb_line = Line(dc.chord.b, perp2(sb.planes[0].normal));
                    }
                    // Both ray angles advance at unit rate with phi, so the
                    // radial derivatives add (interior pivot) or subtract
                    // (exterior: far endpoint b minus near endpoint a).
                    double d_at_b = radial_derivative(O, dc.chord.b, *tb_line);
                    double d_at_a = radial_derivative(O, dc.chord.a, *ta_line);
                    return DerivEval{interior ? d_at_b + d_at_a : d_at_b - d_at_a, true};
                }
                // A cone endpoint: the function has a corner here.
                return std::nullopt;
            }
        }
        const double h = 1e-7;
        const double lp = length_at(phi + h), lm = length_at(phi - h);
        if (std::isfinite(lp) && std::isfinite(lm)) return DerivEval{(lp - lm) / (2.0 * h), false};
        return std::nullopt;
    }
};

ExtremumRecord make_record(const ScanContext& ctx, double phi, ExtremumKind kind, double width,
                           const Tolerance& tol) {
    DirectionalChord dc = chord_at_angle(ctx.body, ctx.O, phi, ctx.interior, ctx.tol);
    if (!dc.valid) throw std::runtime_error("find_extrema: refined chord left the domain");
    ExtremumRecord rec;
    rec.phi_star = ctx.interior ? std::fmod(std::fmod(phi, kPi) + kPi, kPi) : phi;
    rec.direction = Vec{std::cos(phi), std::sin(phi)};
    rec.kind = kind;
    rec.chord = dc.chord;
    rec.refinement_width = width;
    Classification ca = classify_point(ctx.body, dc.chord.a, tol);
    Classification cb = classify_point(ctx.body, dc.chord.b, tol);
    if (ca.location != Location::Boundary || cb.location != Location::Boundary)
        throw std::runtime_error("find_extrema: chord endpoint failed to classify as boundary");
    rec.feature_a = *ca.feature;
    rec.feature_b = *cb.feature;
    return rec;
}

}  // namespace

std::vector<ExtremumRecord> find_extrema(const Body& body, const Point& O, const Tolerance& tol,
                                         const FindExtremaOptions& opt) {
    int grid = opt.grid_size;
    if (grid == 0) {
        int verts = static_cast<int>(body.vertices().size());
        grid = std::max(1024, 8 * verts);
    }
    Tolerance t = scan_tol(body, O, tol);
    SweepResult sw = sweep(body, O, grid, tol, opt.exec);
    ScanContext ctx{body, O, sw.pivot_interior, t,
                    make_angle_analytics(body, O, sw.pivot_interior, t)};

    const int n = static_cast<int>(sw.samples.size());
    const double noise = 1e-13 * std::max(1.0, t.scale);

    // Slopes between consecutive in-domain samples; circular sweeps wrap.
    struct Slope {
        double lo, hi;  // bracketing angles of the slope interval
        int left;       // sample index of the left end
        int sign;
    };
    std::vector<Slope> slopes;
    const int last = sw.circular ? n : n - 1;
    for (int i = 0; i < last; ++i) {
        const SweepSample& s0 = sw.samples[i];
        const SweepSample& s1 = sw.samples[(i + 1) % n];
        if (!s0.in_domain || !s1.in_domain) continue;
        double hi_phi = (i + 1 < n) ? s1.phi : s1.phi + kPi;
        double d = s1.length - s0.length;
        int sign = (d > noise) ? 1 : (d < -noise ? -1 : 0);
        slopes.push_back({s0.phi, hi_phi, i, sign});
    }

    struct Bracket {
        double lo, hi;
        ExtremumKind kind;
    };
    std::vector<Bracket> brackets;
    // Scan consecutive nonzero slopes (cyclically for circular sweeps). A
    // pair only brackets an extremum when the samples between the two slopes
    // form one contiguous in-domain run; a sign flip across a domain gap is
    // the chord length blowing up or vanishing at the domain edge, not an
    // extremum.
    std::vector<int> nz;
    for (int i = 0; i < static_cast<int>(slopes.size()); ++i)
        if (slopes[i].sign != 0) nz.push_back(i);
    if (!nz.empty()) {
        const int m = static_cast<int>(nz.size());
        const int count = sw.circular ? m : m - 1;
        const int total = static_cast<int>(slopes.size());
        for (int k = 0; k < count; ++k) {
            const int ia = nz[k];
            const int ib = nz[(k + 1) % m];
            const Slope& a = slopes[ia];
            const Slope& b = slopes[ib];
            if (a.sign == b.sign) continue;
            const int d_entries = (ib - ia + total) % total;
            const int d_samples = (b.left - a.left + n) % n;
            if (d_entries != d_samples) continue;  // slopes straddle a domain gap
            ExtremumKind kind = a.sign > 0 ? ExtremumKind::Max : ExtremumKind::Min;
            // Unbounded variants with an interior pivot: the length function
            // is strictly convex on its domain and blows up toward the
            // domain edge, so an apparent maximum is the pole between
            // samples, not an extremum.
            if (kind == ExtremumKind::Max && !body.bounded() && sw.pivot_interior) continue;
            double lo = a.lo;
            double hi = b.hi;
            if (hi <= lo) hi += kPi;  // wrapped across the circular seam
            brackets.push_back({lo, hi, kind});
        }
    }

    // Golden-section on the length itself; exact at corners, used whenever a
    // non-smooth evaluation shows the bracket holds a kink.
    auto golden_refine = [&](double a, double b, ExtremumKind kind) {
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - gr * (b - a);
        double d = a + gr * (b - a);
        double fc = ctx.length_at(c), fd = ctx.length_at(d);
        const double flip = kind == ExtremumKind::Max ? -1.0 : 1.0;
        for (int it = 0; it < 400 && (b - a) > opt.refine_width; ++it) {
            if (flip * fc < flip * fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = ctx.length_at(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = ctx.length_at(d);
            }
        }
        return std::pair<double, double>(0.5 * (a + b), b - a);
    };

    std::vector<ExtremumRecord> records;
    for (const Bracket& br : brackets) {
        double lo = br.lo, hi = br.hi;
        // Kink test: one-sided slope disagreement at the bracket midpoint.
        // The probe step is fixed and small so that a smooth extremum's
        // curvature term (second derivative times step) stays under the
        // threshold while a slope jump is step-independent.
        const double mid = 0.5 * (lo + hi);
        const double qw = std::min(1e-5, 0.25 * (hi - lo));
        const double l0 = ctx.length_at(mid - qw), l1 = ctx.length_at(mid),
                     l2 = ctx.length_at(mid + qw);
        bool kink = false;
        if (std::isfinite(l0) && std::isfinite(l1) && std::isfinite(l2)) {
            double sl = (l1 - l0) / qw, sr = (l2 - l1) / qw;
            kink = std::fabs(sr - sl) > 1e-3 * std::max(1.0, t.scale);
        }

        double width;
        double phi_star;
        if (kink) {
            std::tie(phi_star, width) = golden_refine(lo, hi, br.kind);
        } else {
            // Bisection on the derivative sign; fall back to golden section
            // the moment an evaluation hits a corner (cone endpoint).
            const int slo = br.kind == ExtremumKind::Max ? 1 : -1;
            double a = lo, b = hi;
            bool hit_corner = false;
            for (int it = 0; it < 200 && (b - a) > opt.refine_width; ++it) {
                double m = 0.5 * (a + b);
                auto dm = ctx.derivative_at(m);
                if (!dm || !dm->smooth) {
                    hit_corner = true;
                    break;
                }
                int sm = dm->value > 0 ? 1 : (dm->value < 0 ? -1 : 0);
                if (sm == 0) {  // exact critical point
                    a = b = m;
                    break;
                }
                if (sm == slo) a = m;
                else b = m;
            }
            if (hit_corner) {
                std::tie(phi_star, width) = golden_refine(a, b, br.kind);
            } else {
                phi_star = 0.5 * (a + b);
                width = b - a;
            }
        }
        records.push_back(make_record(ctx, phi_star, br.kind, width, t));
    }
    std::sort(records.begin(), records.end(),
              [](const ExtremumRecord& a, const ExtremumRecord& b) {
                  return a.phi_star < b.phi_star;
              });
    return records;
}

// ---------------------------------------------------------------------------
// Twofold linearization
// ---------------------------------------------------------------------------

std::optional<double> LinearizedChord::operator()(double phi) const {
    Line l(O, Vec{std::cos(phi), std::sin(phi)});
    auto hit = [&](const Line& tangent) -> std::optional<double> {
        double denom = cross2(l.dir, tangent.dir);
        if (std::fabs(denom) < 1e-12) return std::nullopt;
        // Signed parameter of the intersection along l.
        Vec w = tangent.base - l.base;
        return cross2(w, tangent.dir) / denom;
    };
    std::optional<double> ta = hit(tangent_a), tb = hit(tangent_b);
    if (!ta || !tb) return std::nullopt;
    if (pivot_interior) return std::fabs(*ta) + std::fabs(*tb);
    return std::fabs(std::fabs(*ta) - std::fabs(*tb));
}

LinearizedChord linearized_chord(const Body& body, const Point& O, double phi0,
                                 const Tolerance& tol) {
    if (!body.smooth())
        throw std::invalid_argument("linearized_chord: smooth bodies only");
    Tolerance t = scan_tol(body, O, tol);
    Classification cl = classify_point(body, O, t);
    if (cl.location == Location::Boundary) throw BoundaryPivotError();
    bool interior = cl.location == Location::Interior;
    DirectionalChord dc = chord_at_angle(body, O, phi0, interior, t);
    if (!dc.valid || dc.chord.degenerate)
        throw std::invalid_argument("linearized_chord: no transversal chord at phi0");
    Classification ca = classify_point(body, dc.chord.a, t);
    Classification cb = classify_point(body, dc.chord.b, t);
    if (ca.location != Location::Boundary || cb.location != Location::Boundary ||
        !ca.feature->tangent || !cb.feature->tangent)
        throw std::invalid_argument("linearized_chord: endpoint tangents unavailable");
    return LinearizedChord{O, *ca.feature->tangent, *cb.feature->tangent, interior};
}

}  // namespace chordex
