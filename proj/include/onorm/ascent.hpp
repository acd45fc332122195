#pragma once

#include <utility>

#include "onorm/haar.hpp"
#include "onorm/matrix.hpp"

namespace onorm {

struct AscentOptions {
    double p = 1.0;          // objective exponent, p != 2
    int max_sweeps = 0;      // 0 -> 10 * n^2
    double gain_tol = 1e-12; // stop when a full sweep improves less than this
    int restarts = 0;
    SamplerConfig sampler{};
};

struct AscentResult {
    OrthogonalMatrix matrix;
    double objective;  // p_norm(matrix, p)
    int sweeps_used;
    int restart_index;
    bool converged;
};

// p-norm of U after rotating rows i, j by angle t.
double pair_objective(const OrthogonalMatrix& u, int i, int j, double t, double p = 1.0);

struct Rotation {
    double t;     // best angle, smallest t >= 0 among equal optima
    double gain;  // objective improvement (increase for p < 2, decrease for p > 2), >= 0
};

// Exact line search over the row-pair rotation angle. For p = 1 the
// objective is piecewise A cos t + B sin t between breakpoints where some
// rotated entry vanishes, so the optimum is found in closed form; for
// general p each breakpoint interval is searched numerically.
Rotation best_pair_rotation(const OrthogonalMatrix& u, int i, int j, double p);

// One pass of best rotations over all row pairs and all column pairs.
std::pair<OrthogonalMatrix, double> sweep(const OrthogonalMatrix& u, double p);

// Iterated sweeps from a given start until the per-sweep gain drops below
// gain_tol or max_sweeps is reached.
AscentResult optimize(const OrthogonalMatrix& start, const AscentOptions& opts);

// Multi-restart search from Haar-sampled starts (stream r = sampler
// stream_id + r); returns the best local optimum found. The objective is
// a lower bound on K_n at p = 1.
AscentResult search_kn(int n, const AscentOptions& opts, int threads = 0);

}  // namespace onorm
