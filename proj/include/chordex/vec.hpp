#pragma once

#include <cmath>
#include <initializer_list>
#include <stdexcept>

namespace chordex {

// Maximum supported dimension. Face enumeration and the search routines are
// desk-scale by design; raising this is a recompile, not a refactor.
inline constexpr int kMaxDim = 8;

/// Fixed-capacity Euclidean vector / point. Dimension is set at construction
/// and checked on every binary operation.
class Vec {
public:
    Vec() = default;

    explicit Vec(int n, double fill = 0.0) : n_(n) {
        if (n < 0 || n > kMaxDim) throw std::invalid_argument("Vec: dimension out of range");
        for (int i = 0; i < n_; ++i) v_[i] = fill;
    }

    Vec(std::initializer_list<double> xs) : n_(static_cast<int>(xs.size())) {
        if (n_ > kMaxDim) throw std::invalid_argument("Vec: dimension out of range");
        int i = 0;
        for (double x : xs) v_[i++] = x;
    }

    static Vec zero(int n) { return Vec(n, 0.0); }

    int dim() const { return n_; }
    bool empty() const { return n_ == 0; }

    double operator[](int i) const { return v_[i]; }
    double& operator[](int i) { return v_[i]; }

    // 2D accessors used heavily by the planar code paths.
    double x() const { return v_[0]; }
    double y() const { return v_[1]; }

    Vec& operator+=(const Vec& r);
    Vec& operator-=(const Vec& r);
    Vec& operator*=(double s) {
        for (int i = 0; i < n_; ++i) v_[i] *= s;
        return *this;
    }

private:
    double v_[kMaxDim] = {};
    int n_ = 0;
};

using Point = Vec;

inline void check_same_dim(const Vec& a, const Vec& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
}

inline Vec& Vec::operator+=(const Vec& r) {
    check_same_dim(*this, r);
    for (int i = 0; i < n_; ++i) v_[i] += r[i];
    return *this;
}

inline Vec& Vec::operator-=(const Vec& r) {
    check_same_dim(*this, r);
    for (int i = 0; i < n_; ++i) v_[i] -= r[i];
    return *this;
}

inline Vec operator+(Vec a, const Vec& b) { return a += b; }
inline Vec operator-(Vec a, const Vec& b) { return a -= b; }
inline Vec operator*(Vec a, double s) { return a *= s; }
inline Vec operator*(double s, Vec a) { return a *= s; }
inline Vec operator-(const Vec& a) {
    Vec r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = -a[i];
    return r;
}

inline double dot(const Vec& a, const Vec& b) {
    check_same_dim(a, b);
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }
inline double distance(const Vec& a, const Vec& b) { return norm(a - b); }

inline Vec normalized(const Vec& a, double eps = 1e-300) {
    double n = norm(a);
    if (!(n > eps)) throw std::invalid_argument("normalized: zero-length vector");
    return a * (1.0 / n);
}

/// z-component of the 2D cross product.
inline double cross2(const Vec& a, const Vec& b) {
    if (a.dim() != 2 || b.dim() != 2) throw std::invalid_argument("cross2: 2D only");
    return a[0] * b[1] - a[1] * b[0];
}

/// Rotate a 2D vector by +90 degrees.
inline Vec perp2(const Vec& a) {
    if (a.dim() != 2) throw std::invalid_argument("perp2: 2D only");
    return Vec{-a[1], a[0]};
}

inline bool all_finite(const Vec& a) {
    for (int i = 0; i < a.dim(); ++i)
        if (!std::isfinite(a[i])) return false;
    return true;
}

/// Unsigned angle between two vectors, computed via atan2 for accuracy near 0 and pi.
inline double angle_between(const Vec& a, const Vec& b) {
    check_same_dim(a, b);
    double d = dot(a, b);
    double c;
    if (a.dim() == 2) {
        c = std::fabs(cross2(a, b));
    } else {
        // |a x b|^2 = |a|^2 |b|^2 - (a.b)^2
        double s2 = norm2(a) * norm2(b) - d * d;
        c = std::sqrt(std::max(0.0, s2));
    }
    return std::atan2(c, d);
}

}  // namespace chordex
