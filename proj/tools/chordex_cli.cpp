// Command-line front end: body loading, sweeps, extremum analysis, the
// classical minimal-chord construction, worked-example verification, and the
// far-field polytope audit.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "chordex/body_io.hpp"
#include "chordex/concurrency.hpp"
#include "chordex/nd_search.hpp"
#include "chordex/philo.hpp"
#include "chordex/polytope_analysis.hpp"
#include "chordex/report.hpp"

using namespace chordex;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitParse = 2;
constexpr int kExitBoundaryPivot = 3;
constexpr int kExitSweepDimension = 4;

Point parse_pivot(const std::string& text) {
    std::vector<double> xs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            xs.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParseError("invalid pivot coordinate: " + item);
        }
    }
    if (xs.size() < 2 || xs.size() > static_cast<size_t>(kMaxDim))
        throw ParseError("pivot needs 2.." + std::to_string(kMaxDim) + " coordinates");
    Vec v(static_cast<int>(xs.size()));
    for (size_t i = 0; i < xs.size(); ++i) v[static_cast<int>(i)] = xs[i];
    return v;
}

/// Write the full content to a temporary file and rename it into place, so a
/// failed run never leaves a partial output behind.
void atomic_write(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file: " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename output into place: " + path);
}

std::string record_block(const ExtremumRecord& r, int index, bool planar) {
    std::string s;
    s += "[record " + std::to_string(index) + "]\n";
    s += kv("kind", std::string(r.kind == ExtremumKind::Max ? "max" : "min"));
    if (planar) s += kv("phi", r.phi_star);
    s += kv("direction", r.direction);
    s += kv("chord_a", r.chord.a);
    s += kv("chord_b", r.chord.b);
    s += kv("length", r.chord.length);
    s += kv("refinement_width", r.refinement_width);
    s += kv("face_dim_a", r.feature_a.face_dim);
    s += kv("face_dim_b", r.feature_b.face_dim);
    s += kv("smooth_a", r.feature_a.smooth);
    s += kv("smooth_b", r.feature_b.smooth);
    return s;
}

int cmd_analyze(const std::string& body_path, const std::string& pivot_text, int grid,
                int multistart, uint64_t seed, const std::string& out_path, double tol_value) {
    Body body = load_body(body_path);
    Point O = parse_pivot(pivot_text);
    if (O.dim() != body.dimension()) throw ParseError("pivot dimension does not match the body");
    Tolerance tol;
    tol.base = tol_value;

    std::string out;
    out += kv("report", std::string("analyze"));
    out += kv("body", body.kind_name());
    out += kv("dimension", body.dimension());
    out += kv("pivot", O);
    out += kv("seed", static_cast<int>(seed));

    bool all_passed = true;
    if (body.dimension() == 2) {
        FindExtremaOptions opt;
        if (grid > 0) opt.grid_size = grid;
        std::vector<ExtremumRecord> recs = find_extrema(body, O, tol, opt);
        out += kv("records", static_cast<int>(recs.size()));
        for (size_t i = 0; i < recs.size(); ++i) {
            out += record_block(recs[i], static_cast<int>(i), true);
            ConcurrencyReport rep = verify_extremum(body, O, recs[i], tol);
            out += "[concurrency " + std::to_string(i) + "]\n";
            out += serialize_report(rep);
            all_passed = all_passed && rep.passed;
        }
    } else {
        NdSearchOptions opt;
        if (multistart > 0) opt.multistart = multistart;
        opt.seed = seed;
        std::vector<ExtremumRecord> recs = find_local_extrema_nd(body, O, opt, tol);
        out += kv("records", static_cast<int>(recs.size()));
        for (size_t i = 0; i < recs.size(); ++i)
            out += record_block(recs[i], static_cast<int>(i), false);
        TheoremCheckSummary sum = verify_nd_theorems(body, O, recs, tol);
        for (size_t i = 0; i < sum.checks.size(); ++i) {
            const TheoremCheck& chk = sum.checks[i];
            out += "[check " + std::to_string(i) + "]\n";
            out += kv("record", chk.record_index);
            out += kv("law", chk.law);
            out += kv("applicable", chk.applicable);
            out += kv("passed", chk.passed);
            if (!chk.detail.empty()) out += kv("detail", chk.detail);
            if (chk.report) out += serialize_report(*chk.report);
        }
        all_passed = sum.all_passed;
    }
    out += kv("summary", std::string(all_passed ? "pass" : "fail"));
    atomic_write(out_path, out);
    return all_passed ? kExitOk : kExitAssertion;
}

int cmd_sweep(const std::string& body_path, const std::string& pivot_text, int grid,
              const std::string& out_path, double tol_value) {
    Body body = load_body(body_path);
    if (body.dimension() != 2) {
        std::cerr << "sweep: 2D bodies only\n";
        return kExitSweepDimension;
    }
    Point O = parse_pivot(pivot_text);
    if (O.dim() != 2) throw ParseError("pivot dimension does not match the body");
    Tolerance tol;
    tol.base = tol_value;
    SweepResult res = sweep(body, O, grid > 0 ? grid : 1024, tol);
    std::ostringstream os;
    write_sweep_csv(os, res);
    atomic_write(out_path, os.str());
    return kExitOk;
}

int cmd_philo(const std::string& body_path, const std::string& pivot_text,
              const std::string& out_path, double tol_value) {
    Body body = load_body(body_path);
    const Angle2D* a = body.as<Angle2D>();
    if (!a) throw ParseError("philo: the body must be an angle");
    Point O = parse_pivot(pivot_text);
    Tolerance tol;
    tol.base = tol_value;

    PhiloConstruction c;
    try {
        c = construct_philo_line(a->vertex, a->u1, a->u2, O, tol);
    } catch (const std::invalid_argument& e) {
        std::cerr << "philo: " << e.what() << "\n";
        return kExitBoundaryPivot;
    }
    PhiloResiduals r = philo_property_residuals(c, tol);

    std::string out;
    out += kv("report", std::string("philo"));
    out += kv("vertex", c.vertex);
    out += kv("pivot", c.pivot);
    out += kv("e_prime", c.e_prime);
    out += kv("degenerate_tangency", c.degenerate_tangency);
    out += kv("line_base", c.line.base);
    out += kv("line_dir", c.line.dir);
    out += kv("circle_center", c.circle_center);
    out += kv("circle_radius", c.circle_radius);
    std::string conic;
    for (int i = 0; i < 6; ++i) {
        if (i) conic += ",";
        conic += format_g17(c.conic[i]);
    }
    out += kv("hyperbola_coefficients", conic);
    out += kv("candidates", static_cast<int>(c.candidates.size()));
    for (size_t i = 0; i < c.candidates.size(); ++i)
        out += kv("candidate_" + std::to_string(i), c.candidates[i]);
    out += kv("length_residual", r.len_residual);
    out += kv("right_angle_residual", r.angle_residual);
    const bool ok = r.len_residual <= 1e-8 && r.angle_residual <= 1e-8;
    out += kv("summary", std::string(ok ? "pass" : "fail"));
    atomic_write(out_path, out);
    return ok ? kExitOk : kExitAssertion;
}

int cmd_polytope_audit(const std::string& body_path, int samples, int multistart, uint64_t seed,
                       const std::string& out_path, double tol_value) {
    Body body = load_body(body_path);
    Tolerance tol;
    tol.base = tol_value;
    AuditOptions opt;
    opt.pivot_samples = samples;
    opt.multistart = multistart;
    opt.seed = seed;
    AuditReport rep = far_field_audit(body, opt, tol);
    atomic_write(out_path, serialize_audit(rep));
    return rep.all_passed ? kExitOk : kExitAssertion;
}

struct Transcript {
    std::string text;
    bool all_pass = true;

    void check(const std::string& name, bool ok, double got, double want) {
        text += std::string(ok ? "PASS" : "FAIL") + "  " + name + ": computed " + format_g17(got) +
                ", reference " + format_g17(want) + "\n";
        all_pass = all_pass && ok;
    }
    void note(const std::string& line) { text += "      " + line + "\n"; }
};

int cmd_examples(const std::string& body_override, const std::string& out_path, double tol_value) {
    const double tol = tol_value;
    Transcript tr;

    // Worked tetrahedron with the pivot at the origin.
    Body tetra = body_override.empty()
                     ? Body(SimplexV{{Point{1, -1, 0}, Point{1, 1, 0}, Point{-1, 0, 1},
                                      Point{-1, 0, -1}}})
                     : load_body(body_override);
    Point O3 = Vec::zero(tetra.dimension());

    const double vertex_chord = 4.0 * std::sqrt(2.0) / 3.0;
    double lo = 1e300, hi = -1e300;
    for (const Point& v : tetra.vertices()) {
        auto len = chord_objective(tetra, O3, normalized(v - O3));
        if (!len) {
            lo = 0;
            hi = 1e300;
            break;
        }
        lo = std::min(lo, *len);
        hi = std::max(hi, *len);
    }
    tr.check("vertex-direction chords have equal length", hi - lo <= tol, hi - lo, 0.0);
    tr.check("vertex-direction chord length", std::fabs(hi - vertex_chord) <= tol, hi,
             vertex_chord);
    auto axis_len = chord_objective(tetra, O3, Vec{1, 0, 0});
    tr.check("x-axis chord length", axis_len && std::fabs(*axis_len - 2.0) <= 1e-12,
             axis_len ? *axis_len : -1.0, 2.0);
    auto mid_len = chord_objective(tetra, O3, normalized(Vec{0, 1, 1}));
    tr.check("mid-edge chord length", mid_len && std::fabs(*mid_len - std::sqrt(2.0)) <= 1e-12,
             mid_len ? *mid_len : -1.0, std::sqrt(2.0));

    NdSearchOptions nd;
    nd.multistart = 64;
    nd.seed = 1;
    auto recs = find_local_extrema_nd(tetra, O3, nd);
    const ExtremumRecord* best = nullptr;
    for (const auto& r : recs)
        if (r.kind == ExtremumKind::Max && (!best || r.chord.length > best->chord.length))
            best = &r;
    double gap = 1e300;
    if (best) {
        double d1 = distance(best->chord.a, Point{1, 0, 0}) +
                    distance(best->chord.b, Point{-1, 0, 0});
        double d2 = distance(best->chord.a, Point{-1, 0, 0}) +
                    distance(best->chord.b, Point{1, 0, 0});
        gap = std::min(d1, d2);
    }
    tr.check("global maximizer endpoints", gap <= 1e-6, gap, 0.0);

    // Right triangle with an exterior pivot.
    Body tri(Polygon2D{{Point{0, 0}, Point{6, 0}, Point{0, 2}}});
    Point O2{0, 3};
    ChordResult cr = chord(tri, Line::through(O2, Point{3, 0}));
    double tri_len = cr.hit() ? cr.chord->length : -1.0;
    tr.check("triangle chord through (3,0)", std::fabs(tri_len - std::sqrt(4.5)) <= 1e-12,
             tri_len, std::sqrt(4.5));
    if (cr.hit()) {
        Point b = cr.chord->a[1] > cr.chord->b[1] ? cr.chord->a : cr.chord->b;
        tr.check("triangle entry point y", std::fabs(b[1] - 1.5) <= 1e-12, b[1], 1.5);
    }
    auto recs2 = find_extrema(tri, O2);
    const ExtremumRecord* best2 = nullptr;
    for (const auto& r : recs2)
        if (r.kind == ExtremumKind::Max && (!best2 || r.chord.length > best2->chord.length))
            best2 = &r;
    double vdist = 0.0;
    if (best2) {
        vdist = 1e300;
        for (const Point& v : tri.vertices()) {
            vdist = std::min(vdist, distance(best2->chord.a, v));
            vdist = std::min(vdist, distance(best2->chord.b, v));
        }
    }
    tr.check("triangle maximizer avoids vertices", best2 && vdist >= 1e-3, vdist, 1e-3);

    // Minimal chord construction in the right angle, pivot (1,8).
    PhiloConstruction pc =
        construct_philo_line(Point{0, 0}, Vec{1, 0}, Vec{0, 1}, Point{1, 8});
    tr.check("construction foot point x", std::fabs(pc.e_prime[0] - 4.0) <= tol, pc.e_prime[0],
             4.0);
    tr.check("construction foot point y", std::fabs(pc.e_prime[1] - 2.0) <= tol, pc.e_prime[1],
             2.0);
    LineClosest ia = line_line_closest(pc.line, Line(Point{0, 0}, Vec{1, 0}));
    LineClosest ib = line_line_closest(pc.line, Line(Point{0, 0}, Vec{0, 1}));
    tr.check("construction cut on arm 1", distance(ia.p1, Point{5, 0}) <= tol,
             distance(ia.p1, Point{5, 0}), 0.0);
    tr.check("construction cut on arm 2", distance(ib.p1, Point{0, 10}) <= tol,
             distance(ib.p1, Point{0, 10}), 0.0);
    RightAnglePhilo rc = right_angle_closed_form(1.0, 8.0);
    tr.check("closed form x", std::fabs(rc.x - 5.0) <= tol, rc.x, 5.0);
    tr.check("closed form y", std::fabs(rc.y - 10.0) <= tol, rc.y, 10.0);

    tr.text += std::string("transcript=") + (tr.all_pass ? "PASS" : "FAIL") + "\n";
    atomic_write(out_path, tr.text);
    return tr.all_pass ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"extremal chords of convex bodies through a fixed pivot"};
    app.require_subcommand(1);

    std::string body_path, pivot_text, out_path = "-", body_override;
    int grid = 0, multistart = 0, samples = 20, audit_multistart = 32;
    uint64_t seed = 1;
    double tol_value = 1e-9;

    auto* analyze = app.add_subcommand("analyze", "locate chord extrema and verify the optimality laws");
    analyze->add_option("--body", body_path, "body description file")->required();
    analyze->add_option("--pivot", pivot_text, "pivot coordinates x,y[,z,...]")->required();
    analyze->add_option("--grid", grid, "scan grid size (2D)");
    analyze->add_option("--multistart", multistart, "multistart count (3D and up)");
    analyze->add_option("--seed", seed, "random seed");
    analyze->add_option("--out", out_path, "output path ('-' for stdout)");
    analyze->add_option("--tol", tol_value, "base tolerance");

    auto* sweep_cmd = app.add_subcommand("sweep", "write the chord-length sweep as CSV");
    sweep_cmd->add_option("--body", body_path, "body description file")->required();
    sweep_cmd->add_option("--pivot", pivot_text, "pivot coordinates x,y")->required();
    sweep_cmd->add_option("--grid", grid, "number of samples");
    sweep_cmd->add_option("--out", out_path, "output path ('-' for stdout)");
    sweep_cmd->add_option("--tol", tol_value, "base tolerance");

    auto* philo_cmd = app.add_subcommand("philo", "construct the minimal chord of an angle");
    philo_cmd->add_option("--body", body_path, "angle body description file")->required();
    philo_cmd->add_option("--pivot", pivot_text, "interior pivot x,y")->required();
    philo_cmd->add_option("--out", out_path, "output path ('-' for stdout)");
    philo_cmd->add_option("--tol", tol_value, "base tolerance");

    auto* examples = app.add_subcommand("examples", "verify the bundled worked examples");
    examples->add_option("--body", body_override, "replace the bundled tetrahedron");
    examples->add_option("--out", out_path, "output path ('-' for stdout)");
    examples->add_option("--tol", tol_value, "verification tolerance");

    auto* audit = app.add_subcommand("polytope-audit", "far-field maximizer audit of a polytope");
    audit->add_option("--body", body_path, "polytope body description file")->required();
    audit->add_option("--samples", samples, "number of far pivots");
    audit->add_option("--multistart", audit_multistart, "multistart count per pivot");
    audit->add_option("--seed", seed, "random seed");
    audit->add_option("--out", out_path, "output path ('-' for stdout)");
    audit->add_option("--tol", tol_value, "base tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze))
            return cmd_analyze(body_path, pivot_text, grid, multistart, seed, out_path, tol_value);
        if (app.got_subcommand(sweep_cmd))
            return cmd_sweep(body_path, pivot_text, grid, out_path, tol_value);
        if (app.got_subcommand(philo_cmd))
            return cmd_philo(body_path, pivot_text, out_path, tol_value);
        if (app.got_subcommand(examples)) return cmd_examples(body_override, out_path, tol_value);
        if (app.got_subcommand(audit))
            return cmd_polytope_audit(body_path, samples, audit_multistart, seed, out_path,
                                      tol_value);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const BoundaryPivotError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBoundaryPivot;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitParse;
}
