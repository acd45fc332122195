#pragma once

#include <stdexcept>
#include <vector>

#include "onorm/matrix.hpp"

namespace onorm {

// detect_rescaled: entry magnitudes all looked like 1/sqrt(n) but the
// rounded sign matrix failed the exact Hadamard test. Signals a tolerance
// chosen too loose.
struct InconsistentDetectionError : std::runtime_error {
    explicit InconsistentDetectionError(const std::string& what) : std::runtime_error(what) {}
};

// +-1 matrix with pairwise orthogonal rows; the Gram identity H*H^t = n*I
// is verified in exact integer arithmetic.
class HadamardMatrix {
public:
    HadamardMatrix(int n, std::vector<int> entries);

    int n() const { return n_; }
    int operator()(int i, int j) const { return s_[static_cast<size_t>(i) * n_ + j]; }

    SquareMatrix as_matrix() const;
    OrthogonalMatrix rescaled() const;  // H / sqrt(n)

private:
    int n_;
    std::vector<int> s_;
};

// Order-2^k Sylvester matrix: H_0 = [1], H_{k+1} = [[H, H], [H, -H]].
HadamardMatrix sylvester(int k);

HadamardMatrix kronecker(const HadamardMatrix& h1, const HadamardMatrix& h2);

bool is_hadamard(const SquareMatrix& m, double tol = 1e-8);

// True iff every |U_ij| is within tol of 1/sqrt(n); the rounded sign
// matrix is then asserted to be Hadamard (Prop-1.1 equality case).
bool detect_rescaled(const OrthogonalMatrix& u, double tol = 1e-6);

struct RowDefect {
    double defect;                            // ||u - H||^2
    std::vector<double> nearest_sign_vector;  // H, entries sgn(u_i)/sqrt(n)
};

// For a unit vector u: ||u||_1 = sqrt(n) * (1 - defect/2). sgn(0) := +1
// here; the identity is insensitive to that choice.
RowDefect row_defect(const std::vector<double>& u);

}  // namespace onorm
