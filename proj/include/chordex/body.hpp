#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chordex/geometry.hpp"
#include "chordex/tolerance.hpp"

namespace chordex {

// ---------------------------------------------------------------------------
// Convex body variants
// ---------------------------------------------------------------------------

/// Planar angle with vertex E and unit arm directions u1, u2; the region is
/// the convex cone E + {s u1 + t u2 : s,t >= 0}. theta is stored redundantly
/// and validated against angle(u1, u2).
struct Angle2D {
    Point vertex;
    Vec u1, u2;
    double theta;
};

/// Region between two distinct parallel lines.
struct Strip2D {
    Line line1, line2;
};

/// Strictly convex polygon, vertices in counterclockwise order.
struct Polygon2D {
    std::vector<Point> vertices;
};

/// Ellipse with semi-axes a, b, rotated by `rotation` about its center.
struct Ellipse2D {
    Point center;
    double a, b;
    double rotation;
};

/// Halfspace { x : <normal, x> <= offset } with unit normal.
struct Halfspace {
    Vec normal;
    double offset;
};

/// Bounded full-dimensional polytope in H-representation.
struct PolytopeH {
    std::vector<Halfspace> halfspaces;
    int dim = 0;
};

/// Simplex given by n+1 affinely independent vertices in R^n.
struct SimplexV {
    std::vector<Point> vertices;
};

/// Euclidean ball; the one smooth body available in every dimension.
struct BallND {
    Point center;
    double radius;
};

class Body {
public:
    using Variant = std::variant<Angle2D, Strip2D, Polygon2D, Ellipse2D, PolytopeH, SimplexV, BallND>;

    explicit Body(Variant v, Tolerance tol = {});

    const Variant& variant() const { return v_; }
    template <class T>
    const T* as() const { return std::get_if<T>(&v_); }
    template <class T>
    bool is() const { return std::holds_alternative<T>(v_); }

    int dimension() const { return dim_; }
    bool bounded() const { return bounded_; }
    bool smooth() const { return smooth_; }
    bool polytopal() const { return polytopal_; }

    /// Configuration scale (bounding-box diameter for bounded bodies).
    double scale() const { return scale_; }
    /// Diameter for bounded bodies (max vertex pair distance / axis bound).
    double diameter() const;
    /// A point strictly inside the body.
    const Point& interior_point() const { return interior_; }
    /// Vertices for polytopal bodies (enumerated for PolytopeH).
    const std::vector<Point>& vertices() const { return vertices_; }
    /// H-representation for polytopal bodies (facet halfspaces; polygon edges in order).
    const std::vector<Halfspace>& facets() const { return facets_; }

    std::string kind_name() const;

private:
    void validate_and_finish(const Tolerance& tol);

    Variant v_;
    int dim_ = 2;
    bool bounded_ = true;
    bool smooth_ = false;
    bool polytopal_ = false;
    double scale_ = 1.0;
    Point interior_;
    std::vector<Point> vertices_;
    std::vector<Halfspace> facets_;
};

// ---------------------------------------------------------------------------
// Classification and boundary features
// ---------------------------------------------------------------------------

enum class Location { Interior, Boundary, Exterior };

/// What the boundary looks like at a point: the active facets/arms for
/// polytopal variants, the tangent for smooth ones, and the face dimension.
struct BoundaryFeature {
    Point point;
    std::vector<int> active;       ///< active facet/edge/arm indices (polytopal variants)
    std::optional<Line> tangent;   ///< tangent line at smooth 2D boundary points
    int face_dim = 0;              ///< dimension of the minimal exposed face containing the point
    bool smooth = false;           ///< exactly one supporting hyperplane
};

struct Classification {
    Location location;
    std::optional<BoundaryFeature> feature;  ///< present iff location == Boundary
};

Classification classify_point(const Body& body, const Point& P, const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// Chords
// ---------------------------------------------------------------------------

struct Chord {
    Point a, b;              ///< endpoints, ordered by increasing line parameter
    Line line;
    double ta = 0.0, tb = 0.0;  ///< line parameters of a and b
    double length = 0.0;
    bool degenerate = false;    ///< tangency: zero-length within tolerance
};

enum class ChordStatus { Hit, Miss, Unbounded };

struct ChordResult {
    ChordStatus status;
    std::optional<Chord> chord;  ///< present iff status == Hit

    bool hit() const { return status == ChordStatus::Hit; }
};

/// Segment that `line` cuts from `body`.
ChordResult chord(const Body& body, const Line& line, const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// Supporting hyperplanes and face dimension
// ---------------------------------------------------------------------------

struct SupportSet {
    bool unique = false;
    std::vector<Hyperplane> planes;  ///< one plane when unique, extreme planes otherwise
};

/// Supporting hyperplanes at a boundary point described by `f` (outward normals).
SupportSet supporting_hyperplanes_at(const Body& body, const BoundaryFeature& f,
                                     const Tolerance& tol = {});

/// d_C(P): n minus the rank of the active facet normals. Interior points map to n.
/// Defined for polytopal bodies (polygon, polytope, simplex).
int face_dimension(const Body& body, const Point& P, const Tolerance& tol = {});

/// Facet planes of a simplex, each oriented with the omitted vertex inside.
PolytopeH simplex_to_halfspaces(const SimplexV& s, const Tolerance& tol = {});

}  // namespace chordex
