#include "doctest.h"

#include <sstream>

#include "chordex/chord_scan.hpp"
#include "chordex/nd_search.hpp"
#include "chordex/polytope_analysis.hpp"
#include "helpers.hpp"

using namespace chordex;

// The OpenMP kernels must reproduce the serial reference bit for bit: every
// grid point / branch is a pure function writing to its own slot.

TEST_CASE("sweep: parallel equals serial bitwise") {
    Body ell(Ellipse2D{Point{0, 0}, 12.0, 1.6, 0.0});
    SweepResult ser = sweep(ell, Point{-1, 1.4}, 4096, {}, Exec::Serial);
    SweepResult par = sweep(ell, Point{-1, 1.4}, 4096, {}, Exec::Parallel);
    REQUIRE(ser.samples.size() == par.samples.size());
    for (size_t i = 0; i < ser.samples.size(); ++i) {
        CHECK(ser.samples[i].phi == par.samples[i].phi);
        CHECK(ser.samples[i].length == par.samples[i].length);
        CHECK(ser.samples[i].derivative == par.samples[i].derivative);
        CHECK(ser.samples[i].in_domain == par.samples[i].in_domain);
    }

    // Exterior pivot on a polygon.
    Body tri(Polygon2D{{Point{0, 0}, Point{6, 0}, Point{0, 2}}});
    SweepResult s2 = sweep(tri, Point{0, 3}, 2048, {}, Exec::Serial);
    SweepResult p2 = sweep(tri, Point{0, 3}, 2048, {}, Exec::Parallel);
    for (size_t i = 0; i < s2.samples.size(); ++i) {
        CHECK(s2.samples[i].length == p2.samples[i].length);
        CHECK(s2.samples[i].in_domain == p2.samples[i].in_domain);
    }
}

TEST_CASE("find_extrema: parallel equals serial") {
    Rng rng(601);
    for (int it = 0; it < 8; ++it) {
        Polygon2D poly = testutil::random_convex_polygon(rng, 6, 16);
        Body body(poly);
        Point O = testutil::random_interior_point(body, rng);
        if (classify_point(body, O).location != Location::Interior) continue;
        FindExtremaOptions ser;
        ser.exec = Exec::Serial;
        FindExtremaOptions par;
        par.exec = Exec::Parallel;
        auto rs = find_extrema(body, O, {}, ser);
        auto rp = find_extrema(body, O, {}, par);
        REQUIRE(rs.size() == rp.size());
        for (size_t i = 0; i < rs.size(); ++i) {
            CHECK(rs[i].phi_star == rp[i].phi_star);
            CHECK(rs[i].chord.length == rp[i].chord.length);
            CHECK((rs[i].kind == rp[i].kind));
        }
    }
}

TEST_CASE("audit: parallel equals serial") {
    Body tetra(SimplexV{{Point{1, -1, 0}, Point{1, 1, 0}, Point{-1, 0, 1}, Point{-1, 0, -1}}});
    AuditOptions a1;
    a1.pivot_samples = 4;
    a1.seed = 77;
    a1.multistart = 16;
    a1.exec = Exec::Serial;
    AuditOptions a2 = a1;
    a2.exec = Exec::Parallel;
    AuditReport r1 = far_field_audit(tetra, a1);
    AuditReport r2 = far_field_audit(tetra, a2);
    CHECK(serialize_audit(r1) == serialize_audit(r2));
}
