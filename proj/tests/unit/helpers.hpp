#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "chordex/body.hpp"
#include "chordex/nd_search.hpp"

namespace testutil {

using chordex::Point;
using chordex::Vec;

/// Rigid motion assembled from Givens rotations and a translation.
struct RigidMotion {
    struct Givens {
        int i, j;
        double angle;
    };
    std::vector<Givens> rotations;
    Vec shift;

    Vec rotate(Vec v) const {
        for (const Givens& g : rotations) {
            const double c = std::cos(g.angle), s = std::sin(g.angle);
            const double vi = v[g.i], vj = v[g.j];
            v[g.i] = c * vi - s * vj;
            v[g.j] = s * vi + c * vj;
        }
        return v;
    }
    Point apply(const Point& p) const { return rotate(p) + shift; }

    static RigidMotion random(int dim, chordex::Rng& rng, double shift_scale = 3.0) {
        RigidMotion m;
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j)
                m.rotations.push_back({i, j, (rng.uniform() * 2.0 - 1.0) * 3.0});
        m.shift = Vec(dim);
        for (int i = 0; i < dim; ++i) m.shift[i] = (rng.uniform() * 2.0 - 1.0) * shift_scale;
        return m;
    }
};

inline chordex::Line transform_line(const RigidMotion& m, const chordex::Line& l) {
    return chordex::Line(m.apply(l.base), m.rotate(l.dir));
}

/// Random strictly convex polygon: points on a randomized convex radial profile.
inline chordex::Polygon2D random_convex_polygon(chordex::Rng& rng, int min_verts = 5,
                                                int max_verts = 30) {
    const int n = min_verts + static_cast<int>(rng.uniform() * (max_verts - min_verts + 1));
    // Angles strictly increasing around the circle, radii from a smooth profile.
    std::vector<double> angles(n);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        acc += 0.2 + rng.uniform();
        angles[i] = acc;
    }
    const double full = acc + 0.2 + rng.uniform();
    const double r0 = 0.5 + 2.0 * rng.uniform();
    const double e1 = 0.3 * rng.uniform(), ph1 = rng.uniform() * 6.283185307;
    chordex::Polygon2D poly;
    for (int i = 0; i < n; ++i) {
        const double a = angles[i] / full * 2.0 * 3.14159265358979323846;
        const double r = r0 * (1.0 + e1 * std::cos(a + ph1) * 0.5);
        poly.vertices.push_back(Point{r * std::cos(a), r * std::sin(a)});
    }
    // The radial profile above is convex for small eccentricity, but verify
    // and retry rather than assume.
    for (int i = 0; i < n; ++i) {
        Vec e0 = poly.vertices[(i + 1) % n] - poly.vertices[i];
        Vec e1v = poly.vertices[(i + 2) % n] - poly.vertices[(i + 1) % n];
        if (chordex::cross2(e0, e1v) <= 1e-12) return random_convex_polygon(rng, min_verts, max_verts);
    }
    return poly;
}

/// Random interior point of a bounded body, biased away from the boundary.
inline Point random_interior_point(const chordex::Body& body, chordex::Rng& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Vec d = rng.unit_vector(body.dimension());
        chordex::ChordResult cr = chordex::chord(body, chordex::Line(body.interior_point(), d));
        if (!cr.hit()) continue;
        double t = cr.chord->ta + (0.15 + 0.7 * rng.uniform()) * (cr.chord->tb - cr.chord->ta);
        Point p = cr.chord->line.at(t);
        if (chordex::classify_point(body, p).location == chordex::Location::Interior) return p;
    }
    return body.interior_point();
}

/// Central finite difference.
template <class F>
double fd_derivative(F&& f, double x, double h = 1e-6) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Dense-grid minimizer of a scalar function on [lo, hi] with golden polish.
template <class F>
double grid_golden_min(F&& f, double lo, double hi, int grid = 200000) {
    double best = lo, bestv = f(lo);
    for (int i = 1; i <= grid; ++i) {
        double x = lo + (hi - lo) * i / grid;
        double v = f(x);
        if (v < bestv) {
            bestv = v;
            best = x;
        }
    }
    double a = std::max(lo, best - (hi - lo) / grid);
    double b = std::min(hi, best + (hi - lo) / grid);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && (b - a) > 1e-14; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace testutil
