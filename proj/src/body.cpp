#include "chordex/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "chordex/linalg.hpp"

namespace chordex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Small deterministic generator for the boundedness probe.
struct SplitMix64 {
    uint64_t s;
    uint64_t next() {
        uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

double bbox_diameter(const std::vector<Point>& pts) {
    if (pts.empty()) return 1.0;
    const int n = pts[0].dim();
    Vec lo = pts[0], hi = pts[0];
    for (const Point& p : pts)
        for (int i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    return norm(hi - lo);
}

/// Inward unit normals of the two arm lines of an angle (positive inside).
std::pair<Vec, Vec> angle_inward_normals(const Angle2D& a) {
    Vec n1 = a.u2 - a.u1 * dot(a.u2, a.u1);
    Vec n2 = a.u1 - a.u2 * dot(a.u1, a.u2);
    return {normalized(n1), normalized(n2)};
}

std::vector<Halfspace> halfspaces_of_angle(const Angle2D& a) {
    auto [n1, n2] = angle_inward_normals(a);
    // Inside: <n, x - E> >= 0, i.e. <-n, x> <= <-n, E>.
    return {Halfspace{-n1, dot(-n1, a.vertex)}, Halfspace{-n2, dot(-n2, a.vertex)}};
}

std::vector<Halfspace> halfspaces_of_strip(const Strip2D& s) {
    Vec n1 = perp2(s.line1.dir);
    // Orient each normal away from the other line.
    Point q2 = s.line2.base;
    if (dot(n1, q2 - s.line1.base) > 0) n1 = -n1;
    Vec n2 = perp2(s.line2.dir);
    if (dot(n2, s.line1.base - s.line2.base) > 0) n2 = -n2;
    return {Halfspace{n1, dot(n1, s.line1.base)}, Halfspace{n2, dot(n2, s.line2.base)}};
}

std::vector<Halfspace> halfspaces_of_polygon(const Polygon2D& p) {
    std::vector<Halfspace> hs;
    const int m = static_cast<int>(p.vertices.size());
    hs.reserve(m);
    for (int i = 0; i < m; ++i) {
        const Point& v0 = p.vertices[i];
        const Point& v1 = p.vertices[(i + 1) % m];
        Vec e = v1 - v0;
        Vec n = normalized(Vec{e[1], -e[0]});  // outward for CCW ordering
        hs.push_back(Halfspace{n, dot(n, v0)});
    }
    return hs;
}

std::vector<Point> enumerate_vertices(const std::vector<Halfspace>& hs, int n, double tol) {
    const int m = static_cast<int>(hs.size());
    std::vector<Point> verts;
    std::vector<int> idx(n);
    // Iterate over all n-subsets of the m facet planes.
    for (int i = 0; i < n; ++i) idx[i] = i;
    auto advance = [&]() -> bool {
        int k = n - 1;
        while (k >= 0 && idx[k] == m - n + k) --k;
        if (k < 0) return false;
        ++idx[k];
        for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
        return true;
    };
    if (m < n) return verts;
    do {
        std::vector<Vec> rows;
        Vec rhs(n);
        rows.reserve(n);
        for (int i = 0; i < n; ++i) {
            rows.push_back(hs[idx[i]].normal);
            rhs[i] = hs[idx[i]].offset;
        }
        Vec x;
        if (!solve_linear(rows, rhs, x, 1e-10)) continue;
        bool feasible = true;
        for (const Halfspace& h : hs) {
            if (dot(h.normal, x) - h.offset > tol * (1.0 + std::fabs(h.offset))) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;
        bool dup = false;
        for (const Point& v : verts)
            if (distance(v, x) <= 1e-7 * (1.0 + norm(x))) {
                dup = true;
                break;
            }
        if (!dup) verts.push_back(x);
    } while (advance());
    return verts;
}

/// Clip the line parameter against a halfspace list. Returns [lo, hi]
/// (possibly infinite or empty with lo > hi).
std::pair<double, double> clip_line(const std::vector<Halfspace>& hs, const Line& l,
                                    const Tolerance& tol) {
    double lo = -kInf, hi = kInf;
    for (const Halfspace& h : hs) {
        const double d = dot(h.normal, l.dir);
        const double r = h.offset - dot(h.normal, l.base);
        if (std::fabs(d) < 1e-14) {
            if (r < -tol.active(h.offset)) return {1.0, -1.0};  // line misses the body
            continue;
        }
        const double t = r / d;
        if (d > 0) hi = std::min(hi, t);
        else lo = std::max(lo, t);
    }
    return {lo, hi};
}

}  // namespace

// ---------------------------------------------------------------------------
// Body construction / validation
// ---------------------------------------------------------------------------

Body::Body(Variant v, Tolerance tol) : v_(std::move(v)) { validate_and_finish(tol); }

void Body::validate_and_finish(const Tolerance& tol) {
    if (auto* a = std::get_if<Angle2D>(&v_)) {
        if (a->vertex.dim() != 2 || a->u1.dim() != 2 || a->u2.dim() != 2)
            throw std::invalid_argument("Angle2D: planar body");
        a->u1 = normalized(a->u1);
        a->u2 = normalized(a->u2);
        const double measured = angle_between(a->u1, a->u2);
        if (!(a->theta > 0.0 && a->theta < std::numbers::pi))
            throw std::invalid_argument("Angle2D: theta must be in (0, pi)");
        if (std::fabs(measured - a->theta) > std::max(1e-7, tol.base))
            throw std::invalid_argument("Angle2D: theta does not match the arm directions");
        dim_ = 2;
        bounded_ = false;
        polytopal_ = false;
        interior_ = a->vertex + a->u1 + a->u2;
        scale_ = std::max(1.0, norm(a->vertex) + 2.0);
        facets_ = halfspaces_of_angle(*a);
    } else if (auto* s = std::get_if<Strip2D>(&v_)) {
        if (std::fabs(cross2(s->line1.dir, s->line2.dir)) > 1e-9)
            throw std::invalid_argument("Strip2D: lines must be parallel");
        const Point q = foot_of_perpendicular(s->line1.base, s->line2);
        const double width = distance(s->line1.base, q);
        if (width <= tol.value()) throw std::invalid_argument("Strip2D: lines must be distinct");
        dim_ = 2;
        bounded_ = false;
        interior_ = (s->line1.base + q) * 0.5;
        scale_ = std::max(1.0, norm(interior_) + width);
        facets_ = halfspaces_of_strip(*s);
    } else if (auto* p = std::get_if<Polygon2D>(&v_)) {
        const int m = static_cast<int>(p->vertices.size());
        if (m < 3) throw std::invalid_argument("Polygon2D: need at least 3 vertices");
        for (const Point& v : p->vertices)
            if (v.dim() != 2 || !all_finite(v)) throw std::invalid_argument("Polygon2D: bad vertex");
        for (int i = 0; i < m; ++i) {
            Vec e0 = p->vertices[(i + 1) % m] - p->vertices[i];
            Vec e1 = p->vertices[(i + 2) % m] - p->vertices[(i + 1) % m];
            if (cross2(e0, e1) <= 0.0)
                throw std::invalid_argument("Polygon2D: vertices must be strictly convex CCW");
        }
        dim_ = 2;
        polytopal_ = true;
        vertices_ = p->vertices;
        facets_ = halfspaces_of_polygon(*p);
        Point c = Vec::zero(2);
        for (const Point& v : p->vertices) c += v;
        interior_ = c * (1.0 / m);
        scale_ = bbox_diameter(vertices_);
    } else if (auto* e = std::get_if<Ellipse2D>(&v_)) {
        if (e->center.dim() != 2) throw std::invalid_argument("Ellipse2D: planar body");
        if (!(e->a > 0.0 && e->b > 0.0)) throw std::invalid_argument("Ellipse2D: semi-axes > 0");
        dim_ = 2;
        smooth_ = true;
        interior_ = e->center;
        scale_ = 2.0 * std::max(e->a, e->b);
    } else if (auto* ph = std::get_if<PolytopeH>(&v_)) {
        if (ph->dim < 2 || ph->dim > kMaxDim) throw std::invalid_argument("PolytopeH: dimension");
        for (Halfspace& h : ph->halfspaces) {
            if (h.normal.dim() != ph->dim) throw std::invalid_argument("PolytopeH: normal dim");
            const double n = norm(h.normal);
            if (!(n > 1e-12)) throw std::invalid_argument("PolytopeH: zero normal");
            h.normal *= 1.0 / n;
            h.offset /= n;
        }
        dim_ = ph->dim;
        polytopal_ = true;
        facets_ = ph->halfspaces;
        vertices_ = enumerate_vertices(facets_, dim_, 1e-9);
        if (vertices_.size() < static_cast<size_t>(dim_) + 1)
            throw std::invalid_argument("PolytopeH: not a bounded full-dimensional polytope");
        Point c = Vec::zero(dim_);
        for (const Point& v : vertices_) c += v;
        interior_ = c * (1.0 / static_cast<double>(vertices_.size()));
        scale_ = bbox_diameter(vertices_);
        // Interior point must be strictly inside.
        for (const Halfspace& h : facets_)
            if (dot(h.normal, interior_) - h.offset >= 0.0)
                throw std::invalid_argument("PolytopeH: degenerate (no interior point)");
        // Boundedness probe: chords from the interior point in 2n seeded
        // directions plus the coordinate axes must all be finite.
        SplitMix64 rng{0x5eedULL};
        std::vector<Vec> dirs;
        for (int i = 0; i < dim_; ++i) {
            Vec e = Vec::zero(dim_);
            e[i] = 1.0;
            dirs.push_back(e);
        }
        for (int k = 0; k < 2 * dim_; ++k) {
            Vec d(dim_);
            double n2 = 0.0;
            do {
                for (int i = 0; i < dim_; ++i) d[i] = 2.0 * rng.uniform() - 1.0;
                n2 = norm2(d);
            } while (n2 < 1e-4);
            dirs.push_back(d * (1.0 / std::sqrt(n2)));
        }
        for (const Vec& d : dirs) {
            auto [lo, hi] = clip_line(facets_, Line(interior_, d), tol);
            if (!std::isfinite(lo) || !std::isfinite(hi))
                throw std::invalid_argument("PolytopeH: unbounded");
        }
    } else if (auto* sx = std::get_if<SimplexV>(&v_)) {
        const int n = sx->vertices.empty() ? 0 : sx->vertices[0].dim();
        if (n < 2 || static_cast<int>(sx->vertices.size()) != n + 1)
            throw std::invalid_argument("SimplexV: need n+1 vertices in R^n");
        PolytopeH h = simplex_to_halfspaces(*sx, tol);
        dim_ = n;
        polytopal_ = true;
        vertices_ = sx->vertices;
        facets_ = h.halfspaces;
        Point c = Vec::zero(n);
        for (const Point& v : vertices_) c += v;
        interior_ = c * (1.0 / static_cast<double>(n + 1));
        scale_ = bbox_diameter(vertices_);
    } else if (auto* b = std::get_if<BallND>(&v_)) {
        if (!(b->radius > 0.0)) throw std::invalid_argument("BallND: radius > 0");
        if (b->center.dim() < 2) throw std::invalid_argument("BallND: dimension >= 2");
        dim_ = b->center.dim();
        smooth_ = true;
        interior_ = b->center;
        scale_ = 2.0 * b->radius;
    }
    if (!all_finite(interior_)) throw std::invalid_argument("Body: non-finite data");
}

double Body::diameter() const {
    if (!bounded_) throw std::invalid_argument("diameter: unbounded body");
    if (!vertices_.empty()) {
        double best = 0.0;
        for (size_t i = 0; i < vertices_.size(); ++i)
            for (size_t j = i + 1; j < vertices_.size(); ++j)
                best = std::max(best, distance(vertices_[i], vertices_[j]));
        return best;
    }
    if (auto* e = as<Ellipse2D>()) return 2.0 * std::max(e->a, e->b);
    if (auto* b = as<BallND>()) return 2.0 * b->radius;
    return scale_;
}

std::string Body::kind_name() const {
    switch (v_.index()) {
        case 0: return "angle";
        case 1: return "strip";
        case 2: return "polygon";
        case 3: return "ellipse";
        case 4: return "polytope";
        case 5: return "simplex";
        default: return "ball";
    }
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

namespace {

/// Deduplicate active constraints that describe the same hyperplane.
std::vector<int> dedupe_parallel(const std::vector<Halfspace>& hs, const std::vector<int>& active) {
    std::vector<int> out;
    for (int i : active) {
        bool dup = false;
        for (int j : out)
            if (std::fabs(dot(hs[i].normal, hs[j].normal)) >= 1.0 - 1e-10) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(i);
    }
    return out;
}

Classification classify_halfspaces(const std::vector<Halfspace>& hs, int n, const Point& P,
                                   const Tolerance& tol) {
    std::vector<int> active;
    bool exterior = false, interior = true;
    for (int i = 0; i < static_cast<int>(hs.size()); ++i) {
        const double r = hs[i].offset - dot(hs[i].normal, P);
        const double a = tol.active(hs[i].offset);
        if (r < -a) exterior = true;
        else if (r <= a) {
            active.push_back(i);
            interior = false;
        }
    }
    if (exterior) return {Location::Exterior, std::nullopt};
    if (interior) return {Location::Interior, std::nullopt};

    BoundaryFeature f;
    f.point = P;
    f.active = active;
    std::vector<int> dedup = dedupe_parallel(hs, active);
    std::vector<Vec> normals;
    for (int i : dedup) normals.push_back(hs[i].normal);
    f.face_dim = n - rank_of(normals, 1e-10);
    f.smooth = dedup.size() == 1;
    if (f.smooth && n == 2) {
        f.tangent = Line(P, perp2(hs[dedup[0]].normal));
    }
    return {Location::Boundary, f};
}

Vec ellipse_world_gradient(const Ellipse2D& e, const Point& P) {
    const double c = std::cos(e.rotation), s = std::sin(e.rotation);
    const double dx = P[0] - e.center[0], dy = P[1] - e.center[1];
    const double px = c * dx + s * dy;
    const double py = -s * dx + c * dy;
    const double gx = 2.0 * px / (e.a * e.a);
    const double gy = 2.0 * py / (e.b * e.b);
    return Vec{c * gx - s * gy, s * gx + c * gy};
}

}  // namespace

Classification classify_point(const Body& body, const Point& P, const Tolerance& tol) {
    if (P.dim() != body.dimension()) throw std::invalid_argument("classify_point: dimension");
    Tolerance t = tol.rescaled(std::max({tol.scale, body.scale(), norm(P)}));

    if (auto* e = body.as<Ellipse2D>()) {
        const double c = std::cos(e->rotation), s = std::sin(e->rotation);
        const double dx = P[0] - e->center[0], dy = P[1] - e->center[1];
        const double px = (c * dx + s * dy) / e->a;
        const double py = (-s * dx + c * dy) / e->b;
        const double rr = std::sqrt(px * px + py * py);
        const double proxy = (rr - 1.0) * std::min(e->a, e->b);
        if (proxy < -t.value()) return {Location::Interior, std::nullopt};
        if (proxy > t.value()) return {Location::Exterior, std::nullopt};
        BoundaryFeature f;
        f.point = P;
        f.face_dim = 0;
        f.smooth = true;
        f.tangent = Line(P, perp2(ellipse_world_gradient(*e, P)));
        return {Location::Boundary, f};
    }
    if (auto* b = body.as<BallND>()) {
        const double d = distance(P, b->center) - b->radius;
        if (d < -t.value()) return {Location::Interior, std::nullopt};
        if (d > t.value()) return {Location::Exterior, std::nullopt};
        BoundaryFeature f;
        f.point = P;
        f.face_dim = 0;
        f.smooth = true;
        if (body.dimension() == 2) f.tangent = Line(P, perp2(P - b->center));
        return {Location::Boundary, f};
    }
    // Halfspace-described variants (angle, strip, polygon, polytope, simplex).
    return classify_halfspaces(body.facets(), body.dimension(), P, t);
}

// ---------------------------------------------------------------------------
// Chords
// ---------------------------------------------------------------------------

namespace {

ChordResult make_chord(const Line& l, double lo, double hi, const Tolerance& tol) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
        return {ChordStatus::Unbounded, std::nullopt};
    if (hi < lo - tol.value()) return {ChordStatus::Miss, std::nullopt};
    bool degenerate = (hi - lo) <= tol.value();
    if (hi < lo) {
        double mid = 0.5 * (lo + hi);
        lo = hi = mid;
    }
    Chord ch{l.at(lo), l.at(hi), l, lo, hi, hi - lo, degenerate};
    return {ChordStatus::Hit, ch};
}

}  // namespace

ChordResult chord(const Body& body, const Line& line, const Tolerance& tol) {
    if (line.base.dim() != body.dimension()) throw std::invalid_argument("chord: dimension");
    Tolerance t = tol.rescaled(std::max({tol.scale, body.scale(), norm(line.base)}));

    if (auto* e = body.as<Ellipse2D>()) {
        const double c = std::cos(e->rotation), s = std::sin(e->rotation);
        auto to_local = [&](const Vec& w) {
            return Vec{(c * w[0] + s * w[1]) / e->a, (-s * w[0] + c * w[1]) / e->b};
        };
        Vec p0 = to_local(line.base - e->center);
        Vec q = to_local(line.dir);
        const double A = norm2(q), B = 2.0 * dot(p0, q), C = norm2(p0) - 1.0;
        const double disc = B * B - 4.0 * A * C;
        const double tangent_width = 2.0 * t.value() * std::sqrt(A) / std::min(e->a, e->b);
        if (disc < 0.0) {
            if (std::sqrt(-disc) / (2.0 * A) > tangent_width)
                return {ChordStatus::Miss, std::nullopt};
            double mid = -B / (2.0 * A);
            return make_chord(line, mid, mid, t);
        }
        const double sq = std::sqrt(disc);
        return make_chord(line, (-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A), t);
    }
    if (auto* b = body.as<BallND>()) {
        Vec p0 = line.base - b->center;
        const double B = 2.0 * dot(p0, line.dir), C = norm2(p0) - b->radius * b->radius;
        const double disc = B * B - 4.0 * C;
        if (disc < 0.0) {
            if (std::sqrt(-disc) * 0.5 > t.value()) return {ChordStatus::Miss, std::nullopt};
            return make_chord(line, -B / 2.0, -B / 2.0, t);
        }
        const double sq = std::sqrt(disc);
        return make_chord(line, (-B - sq) / 2.0, (-B + sq) / 2.0, t);
    }
    auto [lo, hi] = clip_line(body.facets(), line, t);
    return make_chord(line, lo, hi, t);
}

// ---------------------------------------------------------------------------
// Supports and face dimension
// ---------------------------------------------------------------------------

SupportSet supporting_hyperplanes_at(const Body& body, const BoundaryFeature& f,
                                     const Tolerance&) {
    SupportSet out;
    if (f.smooth && f.active.empty()) {
        // Smooth variants: tangent hyperplane from the outward gradient.
        Vec n;
        if (auto* e = body.as<Ellipse2D>()) n = normalized(ellipse_world_gradient(*e, f.point));
        else if (auto* b = body.as<BallND>()) n = normalized(f.point - b->center);
        else throw std::invalid_argument("supporting_hyperplanes_at: bad feature");
        out.unique = true;
        out.planes.push_back(Hyperplane::through(f.point, n));
        return out;
    }
    if (f.active.empty())
        throw std::invalid_argument("supporting_hyperplanes_at: point is not on the boundary");
    const auto& hs = body.facets();
    std::vector<int> dedup = dedupe_parallel(hs, f.active);
    for (int i : dedup) out.planes.push_back(Hyperplane(hs[i].normal, hs[i].offset));
    out.unique = out.planes.size() == 1;
    return out;
}

int face_dimension(const Body& body, const Point& P, const Tolerance& tol) {
    if (!body.polytopal())
        throw std::invalid_argument("face_dimension: polytopal bodies only");
    Classification cl = classify_point(body, P, tol);
    if (cl.location == Location::Interior) return body.dimension();
    if (cl.location == Location::Exterior)
        throw std::invalid_argument("face_dimension: point outside the body");
    return cl.feature->face_dim;
}

PolytopeH simplex_to_halfspaces(const SimplexV& s, const Tolerance& tol) {
    const int n = s.vertices.empty() ? 0 : s.vertices[0].dim();
    if (n < 2 || static_cast<int>(s.vertices.size()) != n + 1)
        throw std::invalid_argument("simplex_to_halfspaces: need n+1 vertices in R^n");
    for (const Point& v : s.vertices)
        if (v.dim() != n || !all_finite(v))
            throw std::invalid_argument("simplex_to_halfspaces: bad vertex");

    double scale = bbox_diameter(s.vertices);
    PolytopeH out;
    out.dim = n;
    for (int omit = 0; omit <= n; ++omit) {
        std::vector<Point> face;
        for (int i = 0; i <= n; ++i)
            if (i != omit) face.push_back(s.vertices[i]);
        std::vector<Vec> edges;
        for (int i = 1; i < n; ++i) edges.push_back(face[i] - face[0]);
        std::vector<Vec> basis = orthonormal_basis(edges, 1e-12 * std::max(1.0, scale));
        if (static_cast<int>(basis.size()) != n - 1)
            throw std::invalid_argument("simplex_to_halfspaces: degenerate simplex");
        // Facet normal: any unit vector orthogonal to the facet's edge span.
        Vec nrm;
        double best = -1.0;
        for (int k = 0; k < n; ++k) {
            Vec cand = Vec::zero(n);
            cand[k] = 1.0;
            for (const Vec& e : basis) cand -= e * dot(cand, e);
            double r = norm(cand);
            if (r > best) {
                best = r;
                nrm = cand;
            }
        }
        if (!(best > 1e-10)) throw std::invalid_argument("simplex_to_halfspaces: degenerate simplex");
        nrm = normalized(nrm);
        double off = dot(nrm, face[0]);
        if (dot(nrm, s.vertices[omit]) > off) {
            nrm = -nrm;
            off = -off;
        }
        out.halfspaces.push_back(Halfspace{nrm, off});
    }
    // Volume check via the facet distances: the omitted vertex must be at a
    // positive distance from every facet plane.
    for (int omit = 0; omit <= n; ++omit) {
        const Halfspace& h = out.halfspaces[omit];
        double d = h.offset - dot(h.normal, s.vertices[omit]);
        if (d <= tol.value() * std::max(1.0, scale))
            throw std::invalid_argument("simplex_to_halfspaces: degenerate simplex");
    }
    return out;
}

}  // namespace chordex
