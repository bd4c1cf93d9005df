#include "chordex/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace chordex {

int rank_of(std::vector<Vec> rows, double tol) {
    if (rows.empty()) return 0;
    const int m = static_cast<int>(rows.size());
    const int n = rows[0].dim();
    int rank = 0;
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int piv = row;
        for (int r = row + 1; r < m; ++r)
            if (std::fabs(rows[r][col]) > std::fabs(rows[piv][col])) piv = r;
        if (std::fabs(rows[piv][col]) <= tol) continue;
        std::swap(rows[piv], rows[row]);
        for (int r = row + 1; r < m; ++r) {
            double f = rows[r][col] / rows[row][col];
            for (int c = col; c < n; ++c) rows[r][c] -= f * rows[row][c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

std::vector<Vec> orthonormal_basis(const std::vector<Vec>& vectors, double tol) {
    std::vector<Vec> basis;
    for (const Vec& v : vectors) {
        Vec u = v;
        for (const Vec& e : basis) u -= e * dot(u, e);
        // One re-orthogonalization pass keeps the basis clean for near-dependent input.
        for (const Vec& e : basis) u -= e * dot(u, e);
        double n = norm(u);
        if (n > tol) basis.push_back(u * (1.0 / n));
    }
    return basis;
}

bool solve_linear(std::vector<Vec> rows, Vec rhs, Vec& x, double tol) {
    const int n = rhs.dim();
    if (static_cast<int>(rows.size()) != n) throw std::invalid_argument("solve_linear: shape");
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(rows[r][col]) > std::fabs(rows[piv][col])) piv = r;
        if (std::fabs(rows[piv][col]) <= tol) return false;
        std::swap(rows[piv], rows[col]);
        std::swap(rhs[piv], rhs[col]);
        for (int r = col + 1; r < n; ++r) {
            double f = rows[r][col] / rows[col][col];
            for (int c = col; c < n; ++c) rows[r][c] -= f * rows[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    x = Vec::zero(n);
    for (int r = n - 1; r >= 0; --r) {
        double s = rhs[r];
        for (int c = r + 1; c < n; ++c) s -= rows[r][c] * x[c];
        x[r] = s / rows[r][r];
    }
    return true;
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
    auto at = [&](int i, int j) -> double& { return a[i * n + j]; };
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (std::fabs(apq) < 1e-300) continue;
                double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

double max_subspace_cosine(const std::vector<Vec>& basis1, const std::vector<Vec>& basis2) {
    const int k1 = static_cast<int>(basis1.size());
    const int k2 = static_cast<int>(basis2.size());
    if (k1 == 0 || k2 == 0) return 0.0;
    // M[i][j] = <e1_i, e2_j>; largest singular value of M via eigenvalues of M^T M.
    std::vector<double> m(static_cast<size_t>(k1) * k2);
    for (int i = 0; i < k1; ++i)
        for (int j = 0; j < k2; ++j) m[i * k2 + j] = dot(basis1[i], basis2[j]);
    std::vector<double> mtm(static_cast<size_t>(k2) * k2, 0.0);
    for (int i = 0; i < k2; ++i)
        for (int j = 0; j < k2; ++j) {
            double s = 0.0;
            for (int r = 0; r < k1; ++r) s += m[r * k2 + i] * m[r * k2 + j];
            mtm[i * k2 + j] = s;
        }
    std::vector<double> eig = symmetric_eigenvalues(std::move(mtm), k2);
    double lmax = eig.empty() ? 0.0 : eig.back();
    return std::sqrt(std::max(0.0, lmax));
}

}  // namespace chordex
