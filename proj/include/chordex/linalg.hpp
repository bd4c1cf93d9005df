#pragma once

#include <vector>

#include "chordex/vec.hpp"

namespace chordex {

/// Numerical rank of a set of row vectors by Gaussian elimination with
/// partial pivoting; pivots below `tol` count as zero.
int rank_of(std::vector<Vec> rows, double tol);

/// Gram-Schmidt orthonormal basis of the span of `vectors`; vectors whose
/// residual after projection is below `tol` are dropped.
std::vector<Vec> orthonormal_basis(const std::vector<Vec>& vectors, double tol);

/// Solve the n x n system A x = b by Gaussian elimination with partial
/// pivoting. Returns false when the matrix is singular at threshold `tol`.
bool solve_linear(std::vector<Vec> rows, Vec rhs, Vec& x, double tol);

/// All eigenvalues of a small symmetric matrix (row-major, n x n) by cyclic
/// Jacobi rotations.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

/// Largest cosine <u1,u2> over unit u1 in span(basis1), u2 in span(basis2):
/// the largest singular value of B1^T B2 for orthonormal bases B1, B2.
double max_subspace_cosine(const std::vector<Vec>& basis1, const std::vector<Vec>& basis2);

}  // namespace chordex
