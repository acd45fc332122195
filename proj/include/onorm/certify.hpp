#pragma once

#include <string>
#include <vector>

#include "onorm/matrix.hpp"

namespace onorm {

enum class Verdict { LocalMax, CriticalNotMax, NotCritical, HasZeroEntry };

std::string verdict_name(Verdict v);

// Outcome of the first/second-order tests at U: S = sgn(U) entrywise,
// M = S*U^t. U is a critical point of the 1-norm iff M is symmetric, and
// a local maximizer iff M is positive definite.
struct Certificate {
    double symmetry_residual = 0.0;  // max-abs of M - M^t
    double min_eigenvalue = 0.0;     // of the symmetrized M
    Verdict verdict = Verdict::HasZeroEntry;
    std::vector<double> eigenvalues;  // sorted ascending
};

// S * U^t for S = sign_pattern(U).
SquareMatrix sign_times_transpose(const OrthogonalMatrix& u, double tol_zero = kZeroTol);

Certificate critical_point_check(const OrthogonalMatrix& u, double tol_zero = kZeroTol,
                                 double sym_tol = 1e-8);

Certificate local_max_certificate(const OrthogonalMatrix& u, double tol_zero = kZeroTol,
                                  double sym_tol = 1e-8, double eig_tol = 1e-10);

// Eigenvalues of a symmetric matrix by cyclic Jacobi, sorted ascending.
std::vector<double> jacobi_eigenvalues(const SquareMatrix& sym);

// Kronecker product with index order (i,a) -> i*m + a. Local maximizers
// are stable under this operation.
OrthogonalMatrix tensor_product(const OrthogonalMatrix& u, const OrthogonalMatrix& v);

struct Quaternion {
    double x, y, z, t;
};

// The Euler-Rodrigues parametrization of SO(3) by unit quaternions.
OrthogonalMatrix euler_rodrigues(const Quaternion& q);

struct GridResult {
    double max_found;
    Quaternion argmax;
};

// Scans the 1-norm of euler_rodrigues over a quasi-uniform grid of S^3
// (resolution points per axis), then pattern-search refinement around the
// best cell. The result never exceeds 5.
GridResult k3_grid_verify(int resolution);

// The extremal 3x3 matrix with 1-norm 5: (1/3)[[1,2,2],[2,1,-2],[-2,2,-1]].
const OrthogonalMatrix& matrix_a();

}  // namespace onorm
