#include "chordex/nd_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "chordex/linalg.hpp"

namespace chordex {

// ---------------------------------------------------------------------------
// Deterministic RNG (xoshiro256** core, hand-rolled transforms)
// ---------------------------------------------------------------------------

namespace {

// xoshiro256** — tiny, fully specified, identical everywhere.
struct Xoshiro {
    uint64_t s[4];
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t next() {
        const uint64_t result = rotl(s[1] * 5, 7) * 9;
        const uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }
};

uint64_t splitmix(uint64_t& x) {
    uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

uint64_t Rng::next_u64() {
    if (!seeded_) {
        uint64_t x = s_;
        for (int i = 0; i < 4; ++i) state_[i] = splitmix(x);
        seeded_ = true;
    }
    Xoshiro g{{state_[0], state_[1], state_[2], state_[3]}};
    uint64_t r = g.next();
    state_[0] = g.s[0];
    state_[1] = g.s[1];
    state_[2] = g.s[2];
    state_[3] = g.s[3];
    return r;
}

double Rng::uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Marsaglia polar method on the deterministic uniform stream.
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
}

Vec Rng::unit_vector(int dim) {
    Vec v(dim);
    double n2;
    do {
        for (int i = 0; i < dim; ++i) v[i] = normal();
        n2 = norm2(v);
    } while (n2 < 1e-12);
    return v * (1.0 / std::sqrt(n2));
}

// ---------------------------------------------------------------------------
// Objective
// ---------------------------------------------------------------------------

namespace {

std::optional<double> oriented_length(const Body& body, const Point& O, const Vec& dir,
                                      bool pivot_interior, const Tolerance& t) {
    ChordResult res = chord(body, Line(O, dir), t);
    if (!res.hit()) return std::nullopt;
    const Chord& ch = *res.chord;
    if (pivot_interior) return ch.length;
    // Exterior pivot: both endpoints ahead of O along the oriented direction.
    if (!(ch.ta > 0.0)) return std::nullopt;
    return ch.length;
}

}  // namespace

std::optional<double> chord_objective(const Body& body, const Point& O, const Vec& dir,
                                      const Tolerance& tol) {
    Tolerance t = tol.rescaled(std::max({tol.scale, body.scale(), norm(O) + body.scale()}));
    const bool interior = classify_point(body, O, t).location == Location::Interior;
    return oriented_length(body, O, dir, interior, t);
}

// ---------------------------------------------------------------------------
// Compass search on the unit sphere
// ---------------------------------------------------------------------------

namespace {

/// Orthonormal tangent basis at d, rotated within its leading plane so that
/// repeated probing does not stay aligned with a nonsmooth ridge.
std::vector<Vec> tangent_basis(const Vec& d, double rot = 0.0) {
    const int n = d.dim();
    std::vector<Vec> all;
    all.push_back(d);
    for (int i = 0; i < n; ++i) {
        Vec e = Vec::zero(n);
        e[i] = 1.0;
        all.push_back(e);
    }
    std::vector<Vec> basis = orthonormal_basis(all, 1e-9);
    std::vector<Vec> tangent(basis.begin() + 1, basis.end());
    if (tangent.size() >= 2 && rot != 0.0) {
        const double c = std::cos(rot), s = std::sin(rot);
        Vec e0 = tangent[0], e1 = tangent[1];
        tangent[0] = e0 * c + e1 * s;
        tangent[1] = e1 * c - e0 * s;
    }
    return tangent;
}

struct CompassResult {
    Vec dir;
    double value = 0.0;
    bool valid = false;
    bool domain_edge = false;  ///< a probe left the valid direction set at convergence
    double final_step = 0.0;
};

/// Pattern search for one extremum of the chord objective over directions,
/// with seeded certification probes that restart the search when a stall
/// point is not actually a local extremum.
CompassResult compass_search(const Body& body, const Point& O, Vec d0, bool maximize,
                             bool pivot_interior, double step_tol, uint64_t salt,
                             const Tolerance& tol) {
    CompassResult out;
    auto eval = [&](const Vec& d) -> std::optional<double> {
        return oriented_length(body, O, d, pivot_interior, tol);
    };
    std::optional<double> f0 = eval(d0);
    if (!f0) return out;
    Vec d = d0;
    double f = *f0;
    const double flip = maximize ? -1.0 : 1.0;
    const double golden_angle = 2.399963229728653;

    auto pattern = [&](double step) {
        int guard = 0;
        int iter = 0;
        while (step > step_tol && guard++ < 200000) {
            std::vector<Vec> tb = tangent_basis(d, golden_angle * iter++);
            bool improved = false;
            for (const Vec& e : tb) {
                for (double sgn : {1.0, -1.0}) {
                    Vec cand = normalized(d + e * (sgn * step));
                    std::optional<double> fc = eval(cand);
                    if (fc && flip * *fc < flip * f) {
                        d = cand;
                        f = *fc;
                        improved = true;
                        break;
                    }
                }
                if (improved) break;
            }
            if (!improved) step *= 0.5;
        }
    };

    pattern(0.25);
    // Certification: random tangent probes at a coarse step; an escape means
    // the stall point was a ridge artifact, so resume from there.
    Rng crng(salt);
    const int n = d.dim();
    for (int restart = 0; restart < 12; ++restart) {
        const double probe = std::max(1e-6, 64.0 * step_tol);
        bool escaped = false;
        for (int k = 0; k < 16 * (n - 1); ++k) {
            Vec r = crng.unit_vector(n);
            Vec t = r - d * dot(r, d);
            const double tn = norm(t);
            if (tn < 1e-9) continue;
            Vec cand = normalized(d + t * (probe / tn));
            std::optional<double> fc = eval(cand);
            if (fc && flip * *fc < flip * f) {
                d = cand;
                f = *fc;
                escaped = true;
                break;
            }
        }
        if (!escaped) break;
        pattern(std::max(1e-4, 256.0 * step_tol));
    }

    // Domain-edge probe: an extremum whose neighborhood leaves the valid set
    // sits on the boundary of the direction domain, not at an interior
    // critical point.
    std::vector<Vec> tb = tangent_basis(d);
    const double probe = std::max(64.0 * step_tol, 1e-8);
    for (const Vec& e : tb) {
        for (double sgn : {1.0, -1.0}) {
            if (!eval(normalized(d + e * (sgn * probe)))) out.domain_edge = true;
        }
    }
    out.dir = d;
    out.value = f;
    out.valid = true;
    out.final_step = step_tol;
    return out;
}

Vec canonical_direction(Vec d, bool pivot_interior) {
    if (!pivot_interior) return d;
    for (int i = 0; i < d.dim(); ++i) {
        if (std::fabs(d[i]) > 1e-12) {
            if (d[i] < 0) return -d;
            return d;
        }
    }
    return d;
}

/// Ridge-aware polish for maxima over polytopal bodies. A pattern search on
/// raw chord lengths stalls on the nonsmooth ridges where an endpoint slides
/// inside a face while the other crosses facets; within the family of chords
/// joining the two touched faces the objective is smooth, so maximizing over
/// that family walks the ridge to its summit.
CompassResult face_pair_polish(const Body& body, const Point& O, const CompassResult& cur,
                               bool pivot_interior, const Tolerance& snap_tol,
                               const Tolerance& feature_tol, const Tolerance& tol) {
    if (!body.polytopal() || !cur.valid || cur.domain_edge) return cur;
    ChordResult res = chord(body, Line(O, cur.dir), tol);
    if (!res.hit() || res.chord->degenerate) return cur;
    Chord ch = *res.chord;
    Classification ca = classify_point(body, ch.a, snap_tol);
    Classification cb = classify_point(body, ch.b, snap_tol);
    if (ca.location != Location::Boundary || cb.location != Location::Boundary) return cur;
    const int n = body.dimension();

    // Parametrize over the lower-dimensional face; the other endpoint must
    // lie in a facet for the line-intersection to be well-posed.
    bool facet_is_b = cb.feature->face_dim == n - 1;
    bool facet_is_a = ca.feature->face_dim == n - 1;
    if (!facet_is_a && !facet_is_b) return cur;  // isolated chord family
    const BoundaryFeature& moving = facet_is_b ? *ca.feature : *cb.feature;
    const BoundaryFeature& fixed = facet_is_b ? *cb.feature : *ca.feature;
    if (fixed.active.empty() || moving.active.empty()) return cur;

    // Affine hull of the moving face from the vertices sharing its active set.
    const auto& hs = body.facets();
    std::vector<Point> face_verts;
    for (const Point& v : body.vertices()) {
        bool on = true;
        for (int idx : moving.active)
            if (std::fabs(dot(hs[idx].normal, v) - hs[idx].offset) >
                feature_tol.active(hs[idx].offset)) {
                on = false;
                break;
            }
        if (on) face_verts.push_back(v);
    }
    if (face_verts.empty()) return cur;
    std::vector<Vec> span;
    for (size_t i = 1; i < face_verts.size(); ++i) span.push_back(face_verts[i] - face_verts[0]);
    std::vector<Vec> basis = orthonormal_basis(span, 1e-9 * std::max(1.0, body.scale()));
    const int da = static_cast<int>(basis.size());

    // Project the current endpoint onto the hull.
    Point A0 = face_verts[0];
    const Point& cur_moving = facet_is_b ? ch.a : ch.b;
    for (const Vec& e : basis) A0 += e * dot(cur_moving - face_verts[0], e);

    const Hyperplane facet_plane(hs[fixed.active[0]].normal, hs[fixed.active[0]].offset);

    auto eval_at = [&](const Vec& u) -> std::optional<std::pair<double, Vec>> {
        Point A = A0;
        for (int i = 0; i < da; ++i) A += basis[i] * u[i];
        if (classify_point(body, A, feature_tol).location != Location::Boundary)
            return std::nullopt;
        if (distance(A, O) < 1e-12) return std::nullopt;
        Line l = Line::through(O, A);
        auto B = line_hyperplane_intersect(l, facet_plane);
        if (!B) return std::nullopt;
        if (classify_point(body, *B, feature_tol).location != Location::Boundary)
            return std::nullopt;
        if (pivot_interior) {
            if (dot(A - O, *B - O) > 0.0) return std::nullopt;  // O must lie between
        } else {
            const double tA = dot(A - O, l.dir), tB = dot(*B - O, l.dir);
            if (!(tA > 0.0 && tB > 0.0)) return std::nullopt;
        }
        return std::make_pair(distance(A, *B), normalized(A - O));
    };

    Vec u = Vec::zero(std::max(da, 1));
    auto best = eval_at(u);
    if (!best) return cur;
    if (da > 0) {
        double step = 0.05 * std::max(1.0, body.scale());
        const double floor = 1e-11 * std::max(1.0, body.scale());
        const double golden_angle = 2.399963229728653;
        int guard = 0;
        int iter = 0;
        while (step > floor && guard++ < 100000) {
            // Probe directions rotate per iteration so saddles of the smooth
            // family objective cannot hide between fixed axes.
            const double rot = golden_angle * iter++;
            bool improved = false;
            for (int i = 0; i < da && !improved; ++i) {
                for (double sgn : {1.0, -1.0}) {
                    Vec cand = u;
                    if (da >= 2) {
                        const double c = std::cos(rot), s = std::sin(rot);
                        const int j = (i + 1) % da;
                        cand[i] += sgn * step * c;
                        cand[j] += sgn * step * s;
                    } else {
                        cand[i] += sgn * step;
                    }
                    auto fc = eval_at(cand);
                    if (fc && fc->first > best->first) {
                        u = cand;
                        best = fc;
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
    }
    if (best->first <= cur.value) return cur;
    CompassResult out = cur;
    out.value = best->first;
    out.dir = best->second;
    return out;
}

}  // namespace

std::vector<ExtremumRecord> find_local_extrema_nd(const Body& body, const Point& O,
                                                  const NdSearchOptions& opt,
                                                  const Tolerance& tol) {
    if (opt.multistart < 8) throw std::invalid_argument("find_local_extrema_nd: multistart >= 8");
    Tolerance t = tol.rescaled(std::max({tol.scale, body.scale(), norm(O) + body.scale()}));
    Classification cl = classify_point(body, O, t);
    if (cl.location == Location::Boundary) throw BoundaryPivotError();
    const bool interior = cl.location == Location::Interior;
    const int n = body.dimension();

    // Quasi-uniform starting directions; for an exterior pivot, starts are
    // drawn until they see the body (deterministically, from the same stream).
    std::vector<Vec> starts;
    Rng rng(opt.seed);
    const Vec axis = interior ? Vec() : normalized(body.interior_point() - O);
    while (static_cast<int>(starts.size()) < opt.multistart) {
        Vec d = rng.unit_vector(n);
        if (!interior) {
            bool ok = false;
            for (int attempt = 0; attempt < 64; ++attempt) {
                if (oriented_length(body, O, d, false, t)) {
                    ok = true;
                    break;
                }
                // Pull toward the body axis.
                d = normalized(d + axis * (0.5 * (attempt + 1)));
            }
            if (!ok) d = axis;
        }
        starts.push_back(d);
    }

    struct Branch {
        CompassResult min_res, max_res;
    };
    // Endpoint features are read at the search resolution: a value-comparison
    // pattern search localizes smooth extrema to about sqrt(eps), so a
    // tighter activity tolerance would misread faces the chord actually hits.
    const Tolerance feature_tol = t.rebased(std::max(t.base, 1e-7));
    std::vector<Branch> branches(starts.size());
    auto run_branch = [&](int i) {
        const uint64_t salt = opt.seed * 0x9e3779b97f4a7c15ULL + static_cast<uint64_t>(i) * 2 + 1;
        branches[i].min_res =
            compass_search(body, O, starts[i], false, interior, opt.step_tol, salt, t);
        branches[i].max_res =
            compass_search(body, O, starts[i], true, interior, opt.step_tol, salt + 1, t);
        if (body.polytopal()) {
            // Alternate the sphere search with face-pair polishes until
            // neither improves: the polish walks ridge families to their
            // summit, and a fresh compass pass escapes summits that still
            // have a first-order transverse ascent. Each polish runs twice:
            // with the face pair read at the search resolution, then with a
            // coarse snap so an endpoint stalled near a lower-dimensional
            // face gets that face's chord family evaluated exactly.
            CompassResult best = branches[i].max_res;
            const double improve_eps = 1e-12 * std::max(1.0, t.scale);
            for (int round = 0; round < 8 && best.valid; ++round) {
                CompassResult p = face_pair_polish(body, O, best, interior, feature_tol,
                                                   feature_tol, t);
                p = face_pair_polish(body, O, p, interior, t.rebased(1e-4), feature_tol, t);
                if (p.value > best.value) best = p;
                CompassResult c = compass_search(body, O, best.dir, true, interior, opt.step_tol,
                                                 salt + 2 + static_cast<uint64_t>(round), t);
                if (c.valid && c.value > best.value + improve_eps) {
                    best = c;
                    continue;
                }
                break;
            }
            branches[i].max_res = best;
        }
    };
    if (opt.exec == Exec::Parallel) {
        // Branches write to their own slots; the schedule affects load
        // balance only, never the merged result.
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < static_cast<int>(starts.size()); ++i) run_branch(i);
    } else {
        for (int i = 0; i < static_cast<int>(starts.size()); ++i) run_branch(i);
    }

    // Deterministic sequential merge, ordered by starting index.
    const double merge_tol = opt.merge_scale * (body.bounded() ? body.diameter() : t.scale);
    const double degenerate_len = 1e-7 * std::max(1.0, t.scale);

    std::vector<ExtremumRecord> records;
    // Local-extremality certificate: a record must dominate (or be dominated
    // by) dense direction rings at several radii. Search stalls next to a
    // sharper summit show an ascent at the ring whose radius is below the
    // stall distance, so multiple radii are required to not jump over the
    // structure.
    auto ring_certified = [&](const Vec& d, double f, ExtremumKind kind) {
        std::vector<Vec> tb = tangent_basis(d);
        if (tb.empty()) return true;
        const double margin = 1e-12 * std::max(1.0, t.scale);
        const double flip = kind == ExtremumKind::Max ? -1.0 : 1.0;
        auto probe = [&](const Vec& cand) {
            std::optional<double> fc = oriented_length(body, O, cand, interior, t);
            return !(fc && flip * *fc < flip * f - margin);
        };
        for (double ring : {1e-7, 1e-6, 1e-5, 1e-4}) {
            if (tb.size() == 1) {
                if (!probe(normalized(d + tb[0] * ring)) ||
                    !probe(normalized(d - tb[0] * ring)))
                    return false;
                continue;
            }
            for (size_t i = 0; i < tb.size(); ++i) {
                const Vec& e0 = tb[i];
                const Vec& e1 = tb[(i + 1) % tb.size()];
                for (int k = 0; k < 720; ++k) {
                    const double a = 2.0 * std::numbers::pi * k / 720.0;
                    Vec cand = normalized(d + (e0 * std::cos(a) + e1 * std::sin(a)) * ring);
                    if (!probe(cand)) return false;
                }
            }
        }
        return true;
    };

    auto add_candidate = [&](const CompassResult& cr, ExtremumKind kind) {
        if (!cr.valid || cr.domain_edge) return;
        if (cr.value <= degenerate_len) return;  // tangency sliver, not an extremum
        Vec d = canonical_direction(cr.dir, interior);
        std::optional<double> len = oriented_length(body, O, d, interior, t);
        if (!len) {
            d = cr.dir;
            len = oriented_length(body, O, d, interior, t);
            if (!len) return;
        }
        if (!ring_certified(d, *len, kind)) return;
        ChordResult res = chord(body, Line(O, d), t);
        if (!res.hit() || res.chord->degenerate) return;
        const Chord& ch = *res.chord;
        for (ExtremumRecord& r : records) {
            if (r.kind != kind) continue;
            double direct = distance(r.chord.a, ch.a) + distance(r.chord.b, ch.b);
            double swapped = distance(r.chord.a, ch.b) + distance(r.chord.b, ch.a);
            if (std::min(direct, swapped) <= merge_tol) {
                bool better = kind == ExtremumKind::Max ? ch.length > r.chord.length
                                                        : ch.length < r.chord.length;
                if (better) {
                    Classification ca = classify_point(body, ch.a, feature_tol);
                    Classification cb = classify_point(body, ch.b, feature_tol);
                    if (ca.location == Location::Boundary && cb.location == Location::Boundary) {
                        r.chord = ch;
                        r.direction = d;
                        r.feature_a = *ca.feature;
                        r.feature_b = *cb.feature;
                    }
                }
                return;
            }
        }
        Classification ca = classify_point(body, ch.a, feature_tol);
        Classification cb = classify_point(body, ch.b, feature_tol);
        if (ca.location != Location::Boundary || cb.location != Location::Boundary) return;
        ExtremumRecord rec;
        rec.phi_star = std::numeric_limits<double>::quiet_NaN();
        rec.direction = d;
        rec.kind = kind;
        rec.chord = ch;
        rec.feature_a = *ca.feature;
        rec.feature_b = *cb.feature;
        rec.refinement_width = 0.0;
        records.push_back(rec);
    };
    for (const Branch& br : branches) {
        add_candidate(br.min_res, ExtremumKind::Min);
        add_candidate(br.max_res, ExtremumKind::Max);
    }
    for (ExtremumRecord& r : records) r.refinement_width = opt.step_tol;
    return records;
}

// ---------------------------------------------------------------------------
// Theorem verification
// ---------------------------------------------------------------------------

TheoremCheckSummary verify_nd_theorems(const Body& body, const Point& O,
                                       const std::vector<ExtremumRecord>& recs,
                                       const Tolerance& tol) {
    Tolerance t = tol.rescaled(std::max({tol.scale, body.scale(), norm(O) + body.scale()}));
    Classification cl = classify_point(body, O, t);
    const bool interior = cl.location == Location::Interior;
    const int n = body.dimension();
    const double resid_tol = std::max(1e-6, t.base);

    TheoremCheckSummary out;
    for (int i = 0; i < static_cast<int>(recs.size()); ++i) {
        const ExtremumRecord& rec = recs[i];
        TheoremCheck chk;
        chk.record_index = i;
        if (rec.kind == ExtremumKind::Min) {
            bool meets_interior = interior;
            if (!interior) {
                Point mid = (rec.chord.a + rec.chord.b) * 0.5;
                meets_interior = classify_point(body, mid, t).location == Location::Interior;
            }
            if (!meets_interior) {
                chk.law = "exterior_min_boundary_chord";
                chk.applicable = false;
                chk.detail = "minimum chord contained in the boundary; no concurrency assertion";
            } else {
                chk.law = "min_smooth_concurrent_normals";
                SupportSet sa = supporting_hyperplanes_at(body, rec.feature_a, t);
                SupportSet sb = supporting_hyperplanes_at(body, rec.feature_b, t);
                if (!sa.unique || !sb.unique) {
                    chk.passed = false;
                    chk.detail = "non-smooth endpoint at a minimum";
                } else {
                    ConcurrencyReport rep =
                        concurrency_residual_nd(sa.planes[0], sb.planes[0], rec.chord, O, t);
                    chk.report = rep;
                    chk.passed = rep.residual_normals <= resid_tol &&
                                 rep.residual_hyperplane <= resid_tol;
                    if (!chk.passed) chk.detail = "support normals fail to meet at the pivot hyperplane";
                }
            }
        } else {
            const int sum = rec.feature_a.face_dim + rec.feature_b.face_dim;
            if (interior) {
                chk.law = "max_face_dimension_sum_interior";
                chk.passed = sum <= n - 1;
            } else {
                chk.law = "max_face_dimension_sum_exterior";
                chk.passed = sum <= n;
            }
            if (!chk.passed)
                chk.detail = "face dimension sum " + std::to_string(sum) + " too large";
            // Facet-interior endpoint at an interior-pivot maximum forces the
            // opposite endpoint to be an extreme point.
            if (interior &&
                (rec.feature_a.face_dim == n - 1 || rec.feature_b.face_dim == n - 1)) {
                TheoremCheck cor;
                cor.record_index = i;
                cor.law = "facet_max_opposite_extreme_point";
                const int other = rec.feature_a.face_dim == n - 1 ? rec.feature_b.face_dim
                                                                  : rec.feature_a.face_dim;
                cor.passed = other == 0;
                if (!cor.passed)
                    cor.detail = "opposite endpoint has face dimension " + std::to_string(other);
                out.all_passed = out.all_passed && cor.passed;
                out.checks.push_back(std::move(cor));
            }
        }
        out.all_passed = out.all_passed && (chk.passed || !chk.applicable);
        out.checks.push_back(std::move(chk));
    }
    return out;
}

}  // namespace chordex
