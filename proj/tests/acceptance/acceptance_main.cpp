// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failing criteria. Expected values are frozen here together with the
// independent oracles that justify them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "chordex/body_io.hpp"
#include "chordex/concurrency.hpp"
#include "chordex/nd_search.hpp"
#include "chordex/philo.hpp"
#include "chordex/polytope_analysis.hpp"

using namespace chordex;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

struct Criterion {
    int id;
    std::string name;
    double time_limit;  // seconds; 0 = unlimited
    std::function<Outcome()> run;
};

Angle2D make_angle(double theta, double base, const Point& vertex) {
    return Angle2D{vertex, Vec{std::cos(base), std::sin(base)},
                   Vec{std::cos(base + theta), std::sin(base + theta)}, theta};
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// ---------------------------------------------------------------------------

Outcome criterion_tetrahedron() {
    Outcome out;
    Body tetra(SimplexV{{Point{1, -1, 0}, Point{1, 1, 0}, Point{-1, 0, 1}, Point{-1, 0, -1}}});
    Point O{0, 0, 0};

    const double reference_vertex_chord = 4.0 * std::sqrt(5.0) / 5.0;
    for (const Point& v : tetra.vertices()) {
        auto len = chord_objective(tetra, O, normalized(v - O));
        if (!len) {
            out.require(false, "vertex-direction chord missing");
            continue;
        }
        out.require(std::fabs(*len - reference_vertex_chord) <= 1e-9,
                    "vertex-direction chord length: computed " + fmt(*len) + ", reference " +
                        fmt(reference_vertex_chord));
        if (!out.pass) break;
    }

    auto axis = chord_objective(tetra, O, Vec{1, 0, 0});
    out.require(axis && std::fabs(*axis - 2.0) <= 1e-12,
                "x-axis chord: computed " + fmt(axis ? *axis : -1.0) + ", reference 2");
    auto mid = chord_objective(tetra, O, normalized(Vec{0, 1, 1}));
    out.require(mid && std::fabs(*mid - std::sqrt(2.0)) <= 1e-12,
                "mid-edge chord: computed " + fmt(mid ? *mid : -1.0) + ", reference " +
                    fmt(std::sqrt(2.0)));

    NdSearchOptions opt;
    opt.multistart = 64;
    opt.seed = 1;
    auto recs = find_local_extrema_nd(tetra, O, opt);
    const ExtremumRecord* best = nullptr;
    for (const auto& r : recs)
        if (r.kind == ExtremumKind::Max && (!best || r.chord.length > best->chord.length))
            best = &r;
    double gap = 1e300;
    if (best) {
        double d1 =
            distance(best->chord.a, Point{1, 0, 0}) + distance(best->chord.b, Point{-1, 0, 0});
        double d2 =
            distance(best->chord.a, Point{-1, 0, 0}) + distance(best->chord.b, Point{1, 0, 0});
        gap = std::min(d1, d2);
    }
    out.require(gap <= 1e-6, "global maximizer endpoint gap " + fmt(gap));
    return out;
}

Outcome criterion_triangle() {
    Outcome out;
    Body tri(Polygon2D{{Point{0, 0}, Point{6, 0}, Point{0, 2}}});
    Point O{0, 3};

    ChordResult cr = chord(tri, Line::through(O, Point{3, 0}));
    out.require(cr.hit(), "chord through (3,0) missing");
    if (cr.hit()) {
        Point b = cr.chord->a[1] > cr.chord->b[1] ? cr.chord->a : cr.chord->b;
        out.require(distance(b, Point{1.5, 1.5}) <= 1e-12,
                    "entry point: computed (" + fmt(b[0]) + "," + fmt(b[1]) + ")");
        out.require(std::fabs(cr.chord->length - std::sqrt(4.5)) <= 1e-12,
                    "length: computed " + fmt(cr.chord->length));
    }

    auto recs = find_extrema(tri, O);
    const ExtremumRecord* best = nullptr;
    for (const auto& r : recs)
        if (r.kind == ExtremumKind::Max && (!best || r.chord.length > best->chord.length))
            best = &r;
    out.require(best != nullptr, "no maximizer found");
    if (best) {
        double vdist = 1e300;
        for (const Point& v : tri.vertices()) {
            vdist = std::min(vdist, distance(best->chord.a, v));
            vdist = std::min(vdist, distance(best->chord.b, v));
        }
        out.require(vdist >= 1e-3, "maximizer endpoint near vertex, distance " + fmt(vdist));
    }
    return out;
}

Outcome criterion_angle_analytics() {
    Outcome out;
    Rng rng(0xAC3);
    int checked = 0;
    double worst_rel = 0.0, min_second = 1e300;
    while (checked < 1000) {
        const double theta = 0.1 + (kPi - 0.2) * rng.uniform();
        Angle2D a = make_angle(theta, rng.uniform() * 2 * kPi,
                               Point{2 * rng.uniform() - 1, 2 * rng.uniform() - 1});
        Point O = a.vertex + a.u1 * (0.3 + 2.2 * rng.uniform()) + a.u2 * (0.3 + 2.2 * rng.uniform());
        const double lo = theta - kPi / 2, hi = kPi / 2;
        const double margin = 0.05 * (hi - lo);
        const double phi = lo + margin + (hi - lo - 2 * margin) * rng.uniform();
        AngleEvalF ev = angle_f(a, O, phi);
        const double h = 1e-6;
        const double fd = (angle_f(a, O, phi + h).length - angle_f(a, O, phi - h).length) / (2 * h);
        const double rel = std::fabs(ev.derivative - fd) / std::max(1.0, std::fabs(fd));
        worst_rel = std::max(worst_rel, rel);
        min_second = std::min(min_second, ev.second_derivative);
        ++checked;
    }
    out.require(worst_rel < 1e-6, "worst relative derivative error " + fmt(worst_rel));
    out.require(min_second > 0.0, "second derivative not positive: " + fmt(min_second));
    return out;
}

Outcome criterion_angle_concurrency() {
    Outcome out;
    Rng rng(0xCC4);
    int done = 0;
    double worst_at = 0.0, best_off = 1e300;
    while (done < 100) {
        const double theta = 0.3 + 2.4 * rng.uniform();
        Angle2D a = make_angle(theta, rng.uniform() * 2 * kPi,
                               Point{2 * rng.uniform() - 1, 2 * rng.uniform() - 1});
        Point O = a.vertex + a.u1 * (0.5 + 1.8 * rng.uniform()) + a.u2 * (0.5 + 1.8 * rng.uniform());
        Body body(a);
        auto recs = find_extrema(body, O);
        if (recs.size() != 1) {
            out.require(false, "expected exactly one critical direction, found " +
                                   std::to_string(recs.size()));
            return out;
        }
        InteriorAngleFrame f = InteriorAngleFrame::make(a, O);
        const double phi0 = f.phi_of_dir(recs[0].chord.line.dir);
        if (phi0 - 0.1 <= f.domain_lo() || phi0 + 0.1 >= f.domain_hi()) continue;
        ++done;

        Line arm1(a.vertex, a.u1), arm2(a.vertex, a.u2);
        auto report_at = [&](double phi) {
            Point A = f.endpoint_arm1(phi);
            Point B = f.endpoint_arm2(phi);
            Chord ch{A, B, Line::through(A, B), 0.0, distance(A, B), distance(A, B), false};
            return concurrency_residual_2d(arm1, arm2, ch, O);
        };
        worst_at = std::max(worst_at, report_at(phi0).residual_normals);
        best_off = std::min({best_off, report_at(phi0 + 0.1).residual_normals,
                             report_at(phi0 - 0.1).residual_normals});
    }
    out.require(worst_at <= 1e-8, "residual at the critical direction " + fmt(worst_at));
    out.require(best_off >= 1e-3, "residual 0.1 rad away " + fmt(best_off));
    return out;
}

Outcome criterion_construction() {
    Outcome out;
    Rng rng(0xF15);
    int done = 0;
    double worst_angle = 0.0, worst_resid = 0.0;
    while (done < 100) {
        const double theta = 0.3 + 2.5 * rng.uniform();
        Angle2D a = make_angle(theta, rng.uniform() * 2 * kPi,
                               Point{2 * rng.uniform() - 1, 2 * rng.uniform() - 1});
        Point O = a.vertex + a.u1 * (0.3 + 2.0 * rng.uniform()) + a.u2 * (0.3 + 2.0 * rng.uniform());
        PhiloConstruction c = construct_philo_line(a.vertex, a.u1, a.u2, O);
        PhiloResiduals r = philo_property_residuals(c);
        worst_resid = std::max({worst_resid, r.len_residual, r.angle_residual});

        Body body(a);
        auto recs = find_extrema(body, O);
        if (recs.size() != 1) {
            out.require(false, "scan minimum count " + std::to_string(recs.size()));
            return out;
        }
        const double ang =
            std::asin(std::min(1.0, std::fabs(cross2(c.line.dir, recs[0].chord.line.dir))));
        worst_angle = std::max(worst_angle, ang);
        ++done;
    }
    out.require(worst_angle <= 1e-8, "line direction disagreement " + fmt(worst_angle));
    out.require(worst_resid <= 1e-8, "construction residual " + fmt(worst_resid));

    PhiloConstruction pc = construct_philo_line(Point{0, 0}, Vec{1, 0}, Vec{0, 1}, Point{1, 8});
    out.require(distance(pc.e_prime, Point{4, 2}) <= 1e-9,
                "foot point (" + fmt(pc.e_prime[0]) + "," + fmt(pc.e_prime[1]) + ")");
    LineClosest ia = line_line_closest(pc.line, Line(Point{0, 0}, Vec{1, 0}));
    LineClosest ib = line_line_closest(pc.line, Line(Point{0, 0}, Vec{0, 1}));
    RightAnglePhilo rc = right_angle_closed_form(1.0, 8.0);
    out.require(distance(ia.p1, Point{rc.x, 0}) <= 1e-9, "arm-1 cut point");
    out.require(distance(ib.p1, Point{0, rc.y}) <= 1e-9, "arm-2 cut point");
    return out;
}

Outcome criterion_ellipse_census() {
    Outcome out;
    Body ell(Ellipse2D{Point{0, 0}, 12.0, 1.6, 0.0});
    Point O{-1.0, 1.4};

    FindExtremaOptions opt;
    opt.grid_size = 100000;
    auto recs = find_extrema(ell, O, {}, opt);

    // Independent dense-scan oracle at the same resolution: sign changes of
    // the slope of the chord length, computed here from the raw quadratic.
    const int N = 100000;
    auto length_at = [&](double phi) {
        const double c = std::cos(phi), s = std::sin(phi);
        const double A = (c / 12.0) * (c / 12.0) + (s / 1.6) * (s / 1.6);
        const double B = 2.0 * ((-1.0 / 144.0) * c + (1.4 / 2.56) * s);
        const double C = (1.0 / 144.0) + (1.4 * 1.4 / 2.56) - 1.0;
        const double disc = B * B - 4 * A * C;
        return std::sqrt(std::max(0.0, disc)) / A;
    };
    std::vector<double> len(N);
    for (int i = 0; i < N; ++i) len[i] = length_at(kPi * i / N);
    int mins = 0, maxs = 0, prev_sign = 0, first_sign = 0;
    for (int i = 0; i < N; ++i) {
        double d = len[(i + 1) % N] - len[i];
        int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
        if (s == 0) continue;
        if (first_sign == 0) first_sign = s;
        if (prev_sign != 0 && s != prev_sign) (prev_sign > 0 ? maxs : mins)++;
        prev_sign = s;
    }
    if (first_sign != 0 && prev_sign != 0 && first_sign != prev_sign)
        (prev_sign > 0 ? maxs : mins)++;

    int rec_mins = 0, rec_maxs = 0;
    for (const auto& r : recs) (r.kind == ExtremumKind::Min ? rec_mins : rec_maxs)++;
    out.require(rec_mins == mins, "minimum count " + std::to_string(rec_mins) + " vs oracle " +
                                      std::to_string(mins));
    out.require(rec_maxs == maxs, "maximum count " + std::to_string(rec_maxs) + " vs oracle " +
                                      std::to_string(maxs));
    out.require(rec_mins >= 2 && rec_maxs >= 2, "too few extrema");

    double worst = 0.0;
    for (const auto& r : recs) {
        ConcurrencyReport rep = verify_extremum(ell, O, r);
        worst = std::max(worst, std::max(rep.residual_normals, rep.residual_hyperplane));
        out.require(rep.passed, "an extremum failed the concurrency law");
    }
    out.require(worst <= 1e-6, "worst concurrency residual " + fmt(worst));
    return out;
}

Outcome criterion_polygon_laws() {
    Outcome out;
    Rng rng(0x7A11);
    int polygons = 0;
    double worst_min_resid = 0.0, worst_vertex_gap = 0.0;
    while (polygons < 200) {
        // Random strictly convex polygon with 5..30 vertices.
        const int n = 5 + static_cast<int>(rng.uniform() * 26);
        std::vector<double> angles;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            acc += 0.15 + rng.uniform();
            angles.push_back(acc);
        }
        const double full = acc + 0.15 + rng.uniform();
        const double r0 = 0.5 + 2.5 * rng.uniform();
        const double ecc = 0.25 * rng.uniform();
        const double ph = rng.uniform() * 2 * kPi;
        Polygon2D poly;
        for (int i = 0; i < n; ++i) {
            const double aa = angles[i] / full * 2.0 * kPi;
            const double rr = r0 * (1.0 + ecc * 0.5 * std::cos(aa + ph));
            poly.vertices.push_back(Point{rr * std::cos(aa), rr * std::sin(aa)});
        }
        bool convex = true;
        for (int i = 0; i < n && convex; ++i) {
            Vec e0 = poly.vertices[(i + 1) % n] - poly.vertices[i];
            Vec e1 = poly.vertices[(i + 2) % n] - poly.vertices[(i + 1) % n];
            if (cross2(e0, e1) <= 1e-12) convex = false;
        }
        if (!convex) continue;
        Body body(poly);
        // Interior pivot biased away from the boundary.
        Point O = body.interior_point();
        Vec dir = rng.unit_vector(2);
        ChordResult cr = chord(body, Line(O, dir));
        if (cr.hit())
            O = cr.chord->line.at(cr.chord->ta +
                                  (0.2 + 0.6 * rng.uniform()) * (cr.chord->tb - cr.chord->ta));
        if (classify_point(body, O).location != Location::Interior) continue;
        ++polygons;

        auto recs = find_extrema(body, O);
        for (const auto& r : recs) {
            if (r.kind == ExtremumKind::Min) {
                out.require(r.feature_a.smooth && r.feature_b.smooth,
                            "minimum endpoint not in an edge interior");
                ConcurrencyReport rep = verify_extremum(body, O, r);
                worst_min_resid = std::max(worst_min_resid, rep.residual_normals);
            } else {
                double best = 1e300;
                for (const Point& v : poly.vertices) {
                    best = std::min(best, distance(r.chord.a, v));
                    best = std::min(best, distance(r.chord.b, v));
                }
                const double lim = 1e-9 * std::max(1.0, body.scale());
                if (best > lim)
                    out.require(false, "maximum endpoint off-vertex by " + fmt(best));
                worst_vertex_gap = std::max(worst_vertex_gap, best);
            }
            if (!out.pass) return out;
        }
    }
    out.require(worst_min_resid <= 1e-6, "worst minimum residual " + fmt(worst_min_resid));
    out.detail += (out.detail.empty() ? "" : "; ");
    out.detail += "worst residual " + fmt(worst_min_resid) + ", worst vertex gap " +
                  fmt(worst_vertex_gap);
    return out;
}

Outcome criterion_obtuse_monotone() {
    Outcome out;
    Rng rng(0x0B7);
    int done = 0;
    double worst = 1e300;
    while (done < 50) {
        const double theta = kPi / 2 + (kPi / 2 - 0.1) * rng.uniform();
        Angle2D a = make_angle(theta, rng.uniform() * 2 * kPi,
                               Point{2 * rng.uniform() - 1, 2 * rng.uniform() - 1});
        Vec n1 = normalized(a.u2 - a.u1 * dot(a.u2, a.u1));
        Point O =
            a.vertex + a.u1 * (0.4 + 3.0 * rng.uniform()) - n1 * (0.2 + 2.0 * rng.uniform());
        ExteriorAngleFrame f;
        try {
            f = ExteriorAngleFrame::make(a, O);
        } catch (const std::invalid_argument&) {
            continue;
        }
        ++done;
        const double w = f.domain_hi() - f.domain_lo();
        for (int k = 1; k < 2000; ++k) {
            const double phi = f.domain_lo() + w * k / 2000.0;
            if (phi >= f.domain_hi()) break;
            worst = std::min(worst, angle_g(a, O, phi).derivative);
        }
    }
    out.require(worst > 0.0, "sampled derivative minimum " + fmt(worst));
    out.detail = "derivative minimum over all samples " + fmt(worst);
    return out;
}

Outcome criterion_l9() {
    Outcome out;
    // Analytic equality case: theta = psi = pi/6 on the unit circumscribed
    // circle gives AB = 1/2, OA = 3/4.
    const double eq = l9_bound_check(0.75, 0.5, kPi / 6.0);
    out.require(std::fabs(eq) <= 1e-12, "equality case slack " + fmt(eq));

    Rng rng(0x19);
    int harvested = 0, attempts = 0;
    double worst = 1e300;
    while (harvested < 50 && attempts < 5000) {
        ++attempts;
        const double theta = 0.15 + (kPi / 2 - 0.25) * rng.uniform();
        Angle2D a = make_angle(theta, rng.uniform() * 2 * kPi,
                               Point{2 * rng.uniform() - 1, 2 * rng.uniform() - 1});
        Vec n1 = normalized(a.u2 - a.u1 * dot(a.u2, a.u1));
        Point O =
            a.vertex + a.u1 * (0.5 + 6.0 * rng.uniform()) - n1 * (0.1 + 2.0 * rng.uniform());
        ExteriorAngleFrame f;
        try {
            f = ExteriorAngleFrame::make(a, O);
        } catch (const std::invalid_argument&) {
            continue;
        }
        const double lo = f.domain_lo() + 1e-7, hi = f.domain_hi() - 1e-7;
        const int N = 2000;
        double prev = angle_g(a, O, lo).derivative;
        double prev_phi = lo;
        for (int i = 1; i <= N; ++i) {
            const double phi = lo + (hi - lo) * i / N;
            const double d = angle_g(a, O, phi).derivative;
            if (prev * d < 0.0) {
                double x0 = prev_phi, x1 = phi;
                for (int k = 0; k < 100; ++k) {
                    double m = 0.5 * (x0 + x1);
                    (angle_g(a, O, m).derivative * prev > 0 ? x0 : x1) = m;
                }
                const double phi_c = 0.5 * (x0 + x1);
                AngleEvalG ev = angle_g(a, O, phi_c);
                const double OA = f.h1 / std::cos(phi_c);
                if (ev.length > 1e-9 && OA > ev.length) {
                    worst = std::min(worst, l9_bound_check(OA, ev.length, theta));
                    ++harvested;
                }
            }
            prev = d;
            prev_phi = phi;
        }
    }
    out.require(harvested >= 50, "harvested only " + std::to_string(harvested) + " critical configurations");
    out.require(worst >= -1e-9, "worst slack " + fmt(worst));
    out.detail = std::to_string(harvested) + " critical configurations, worst slack " + fmt(worst);
    return out;
}

Outcome criterion_far_field() {
    Outcome out;
    Body square(Polygon2D{{Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}}});
    FarFieldConstants fc = far_field_constants(square);
    out.require(fc.c == 0.0, "square c = " + fmt(fc.c));
    out.require(fc.M == 1.0, "square M = " + fmt(fc.M));

    AuditOptions sq_opt;
    sq_opt.pivot_samples = 50;
    sq_opt.seed = 0x5AFE;
    sq_opt.multistart = 24;
    AuditReport sq_rep = far_field_audit(square, sq_opt);
    out.require(sq_rep.all_passed, "square audit failed");
    int square_max_entries = 0;
    for (const AuditEntry& e : sq_rep.entries)
        if (e.kind == ExtremumKind::Max) ++square_max_entries;
    out.require(square_max_entries > 0, "square audit found no maxima");

    Body tetra(SimplexV{{Point{1, -1, 0}, Point{1, 1, 0}, Point{-1, 0, 1}, Point{-1, 0, -1}}});
    AuditOptions tet_opt;
    tet_opt.pivot_samples = 20;
    tet_opt.seed = 0x7E7;
    tet_opt.multistart = 24;
    AuditReport tet_rep = far_field_audit(tetra, tet_opt);
    out.require(tet_rep.all_passed, "tetrahedron audit failed");
    out.detail = std::to_string(sq_rep.entries.size()) + " square entries, " +
                 std::to_string(tet_rep.entries.size()) + " tetrahedron entries";
    return out;
}

Outcome criterion_determinism() {
    Outcome out;
    namespace fs = std::filesystem;
    const fs::path body = fs::temp_directory_path() / "acceptance_tetra.json";
    {
        std::ofstream f(body);
        f << R"({"schema":1,"kind":"simplex","vertices":[[1,-1,0],[1,1,0],[-1,0,1],[-1,0,-1]]})";
    }
    const fs::path out1 = fs::temp_directory_path() / "acceptance_det1.txt";
    const fs::path out2 = fs::temp_directory_path() / "acceptance_det2.txt";
    auto run = [&](const fs::path& dest) {
        const std::string cmd = std::string(CHORDEX_CLI_PATH) + " analyze --body " +
                                body.string() + " --pivot=0.05,0.1,-0.07 --seed 99 --out " +
                                dest.string() + " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    int s1 = run(out1);
    int s2 = run(out2);
    out.require(WIFEXITED(s1) && WEXITSTATUS(s1) == 0, "first analyze run failed");
    out.require(WIFEXITED(s2) && WEXITSTATUS(s2) == 0, "second analyze run failed");
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = slurp(out1), b = slurp(out2);
    out.require(!a.empty() && a == b, "reports differ between runs");
    return out;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "worked tetrahedron instance", 5.0, criterion_tetrahedron},
        {2, "worked triangle instance", 1.0, criterion_triangle},
        {3, "angle derivative analytics", 0.0, criterion_angle_analytics},
        {4, "critical-chord concurrency on angles", 0.0, criterion_angle_concurrency},
        {5, "minimal-chord construction", 0.0, criterion_construction},
        {6, "ellipse extremum census", 10.0, criterion_ellipse_census},
        {7, "polygon extremum laws", 0.0, criterion_polygon_laws},
        {8, "obtuse exterior monotonicity", 0.0, criterion_obtuse_monotone},
        {9, "exterior critical-chord bound", 0.0, criterion_l9},
        {10, "far-field polytope audit", 30.0, criterion_far_field},
        {11, "analysis determinism", 0.0, criterion_determinism},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o = c.run();
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.time_limit > 0 && dt > c.time_limit)
            o.require(false, "runtime " + fmt(dt) + "s exceeds " + fmt(c.time_limit) + "s");
        std::printf("criterion %2d (%s): %s%s%s  [%.2fs]\n", c.id, c.name.c_str(),
                    o.pass ? "PASS" : "FAIL", o.detail.empty() ? "" : " — ",
                    o.detail.c_str(), dt);
        if (!o.pass) ++failures;
    }
    std::printf("acceptance: %d of %zu criteria failed\n", failures, criteria.size());
    return failures;
}
