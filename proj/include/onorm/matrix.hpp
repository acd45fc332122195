#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace onorm {

inline constexpr double kOrthTol = 1e-10;
inline constexpr double kZeroTol = 1e-8;

// Thrown when sign extraction meets an entry within tol_zero of 0.
// Such a matrix cannot locally maximize the 1-norm, so callers treat
// this as a verdict, not a crash.
struct ZeroEntryError : std::runtime_error {
    int row;
    int col;
    ZeroEntryError(int i, int j);
};

struct NoConvergenceError : std::runtime_error {
    explicit NoConvergenceError(const std::string& what);
};

// Dense real n x n matrix, row-major, immutable by convention:
// operations return new values.
class SquareMatrix {
public:
    explicit SquareMatrix(int n);
    SquareMatrix(int n, std::vector<double> entries);

    int n() const { return n_; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    double& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const std::vector<double>& data() const { return a_; }

    SquareMatrix transposed() const;

private:
    int n_;
    std::vector<double> a_;
};

double one_norm(const SquareMatrix& u);
double p_norm(const SquareMatrix& u, double p);

// max-abs entry of U*U^t - I
double orthogonality_residual(const SquareMatrix& u);

// Modified Gram-Schmidt on columns, two passes. Diagonal of the implicit
// triangular factor is positive by construction (column norms), which is
// the sign convention the Haar sampler relies on.
SquareMatrix gram_schmidt_columns(const SquareMatrix& u);

class OrthogonalMatrix {
public:
    explicit OrthogonalMatrix(SquareMatrix m, double tol_orth = kOrthTol);

    // Explicit re-orthonormalization; the plain constructor never repairs.
    static OrthogonalMatrix orthonormalized(const SquareMatrix& m, double tol_orth = kOrthTol);

    int n() const { return m_.n(); }
    double operator()(int i, int j) const { return m_(i, j); }
    const SquareMatrix& matrix() const { return m_; }
    double orth_residual() const { return residual_; }

private:
    SquareMatrix m_;
    double residual_;
};

// n x n matrix over {+1,-1}, extracted from a matrix with no near-zero entries.
struct SignPattern {
    int n;
    std::vector<int> signs;  // row-major, each +1 or -1

    int operator()(int i, int j) const { return signs[static_cast<size_t>(i) * n + j]; }
};

SignPattern sign_pattern(const SquareMatrix& u, double tol_zero = kZeroTol);

// Row/column permutations plus row/column sign flips: the equivalence
// moves under which every entrywise norm here is invariant.
struct EquivalenceMove {
    std::vector<int> row_perm;
    std::vector<int> col_perm;
    std::vector<int> row_signs;
    std::vector<int> col_signs;
};

// result(i, j) = row_signs[i] * col_signs[j] * U(row_perm[i], col_perm[j])
OrthogonalMatrix apply_move(const OrthogonalMatrix& u, const EquivalenceMove& m);

// Deterministic representative of the equivalence class. Heuristic: fix
// row/column signs so the largest-magnitude entry of each row/column
// (leftmost/topmost on ties) is positive, then sort rows and columns
// lexicographically by entries rounded to 9 decimals, repeating until a
// fixed point. Requires no entry within tol_zero of 0.
OrthogonalMatrix canonicalize(const OrthogonalMatrix& u, double tol_zero = kZeroTol);

bool equivalent(const OrthogonalMatrix& u, const OrthogonalMatrix& v, double tol);

// Text format: line 1 is N, then N lines of N numbers at 17 significant digits.
void write_matrix(std::ostream& os, const SquareMatrix& u);
SquareMatrix read_matrix(std::istream& is);
std::string matrix_to_text(const SquareMatrix& u);
SquareMatrix matrix_from_text(const std::string& text);

}  // namespace onorm
