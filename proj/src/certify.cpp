#include "onorm/certify.hpp"

#include <algorithm>
#include <cmath>

namespace onorm {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::LocalMax: return "LocalMax";
        case Verdict::CriticalNotMax: return "CriticalNotMax";
        case Verdict::NotCritical: return "NotCritical";
        case Verdict::HasZeroEntry: return "HasZeroEntry";
    }
    return "?";
}

SquareMatrix sign_times_transpose(const OrthogonalMatrix& u, double tol_zero) {
    const SignPattern s = sign_pattern(u.matrix(), tol_zero);
    const int n = u.n();
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double dot = 0.0;
            for (int k = 0; k < n; ++k) dot += s(i, k) * u(j, k);
            m.at(i, j) = dot;
        }
    return m;
}

std::vector<double> jacobi_eigenvalues(const SquareMatrix& sym) {
    SquareMatrix a = sym;
    const int n = a.n();
    double scale = 0.0;
    for (double x : a.data()) scale = std::max(scale, std::fabs(x));
    if (scale == 0.0) return std::vector<double>(n, 0.0);
    const double stop = 1e-15 * scale;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off = std::max(off, std::fabs(a(i, j)));
        if (off < stop) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::fabs(apq) < stop) continue;
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

Certificate local_max_certificate(const OrthogonalMatrix& u, double tol_zero, double sym_tol,
                                  double eig_tol) {
    Certificate c;
    SquareMatrix m(1);
    try {
        m = sign_times_transpose(u, tol_zero);
    } catch (const ZeroEntryError&) {
        c.verdict = Verdict::HasZeroEntry;
        return c;
    }
    const int n = m.n();
    double res = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) res = std::max(res, std::fabs(m(i, j) - m(j, i)));
    c.symmetry_residual = res;
    // Eigenvalues of the symmetrized matrix, reported in every branch.
    SquareMatrix h(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h.at(i, j) = 0.5 * (m(i, j) + m(j, i));
    c.eigenvalues = jacobi_eigenvalues(h);
    c.min_eigenvalue = c.eigenvalues.front();
    if (res > sym_tol)
        c.verdict = Verdict::NotCritical;
    else
        c.verdict = c.min_eigenvalue > eig_tol ? Verdict::LocalMax : Verdict::CriticalNotMax;
    return c;
}

Certificate critical_point_check(const OrthogonalMatrix& u, double tol_zero, double sym_tol) {
    return local_max_certificate(u, tol_zero, sym_tol);
}

OrthogonalMatrix tensor_product(const OrthogonalMatrix& u, const OrthogonalMatrix& v) {
    const int n = u.n(), m = v.n();
    const int nm = n * m;
    SquareMatrix w(nm);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < m; ++a)
            for (int j = 0; j < n; ++j)
                for (int b = 0; b < m; ++b) w.at(i * m + a, j * m + b) = u(i, j) * v(a, b);
    return OrthogonalMatrix(std::move(w));
}

OrthogonalMatrix euler_rodrigues(const Quaternion& q) {
    const double norm2 = q.x * q.x + q.y * q.y + q.z * q.z + q.t * q.t;
    if (std::fabs(norm2 - 1.0) > 1e-12)
        throw std::invalid_argument("euler_rodrigues requires a unit quaternion");
    const double x = q.x, y = q.y, z = q.z, t = q.t;
    SquareMatrix m(3, {x * x + y * y - z * z - t * t, 2 * (y * z - x * t), 2 * (x * z + y * t),
                       2 * (x * t + y * z), x * x + z * z - y * y - t * t, 2 * (z * t - x * y),
                       2 * (y * t - x * z), 2 * (x * y + z * t), x * x + t * t - y * y - z * z});
    return OrthogonalMatrix(std::move(m));
}

namespace {

Quaternion normalized(double x, double y, double z, double t) {
    const double n = std::sqrt(x * x + y * y + z * z + t * t);
    return Quaternion{x / n, y / n, z / n, t / n};
}

double norm_at(const Quaternion& q) { return one_norm(euler_rodrigues(q).matrix()); }

}  // namespace

GridResult k3_grid_verify(int resolution) {
    if (resolution < 10) throw std::invalid_argument("resolution must be >= 10");
    // Sign flips and coordinate permutations leave the 1-norm invariant,
    // so a grid on the positive orthant of S^3 covers everything.
    Quaternion best = normalized(1, 0, 0, 0);
    double best_val = norm_at(best);
    const double step = 1.0 / (resolution - 1);
    for (int a = 0; a < resolution; ++a) {
        for (int b = 0; b < resolution; ++b) {
            for (int c = 0; c < resolution; ++c) {
                for (int d = 0; d < resolution; ++d) {
                    const double x = a * step, y = b * step, z = c * step, t = d * step;
                    const double n2 = x * x + y * y + z * z + t * t;
                    if (n2 < 1e-12) continue;
                    const Quaternion q = normalized(x, y, z, t);
                    const double v = norm_at(q);
                    if (v > best_val) {
                        best_val = v;
                        best = q;
                    }
                }
            }
        }
    }
    // Pattern-search refinement around the best cell.
    double h = step;
    while (h > 1e-11) {
        bool improved = false;
        for (int axis = 0; axis < 4; ++axis) {
            for (double dir : {1.0, -1.0}) {
                Quaternion q = best;
                (axis == 0 ? q.x : axis == 1 ? q.y : axis == 2 ? q.z : q.t) += dir * h;
                q = normalized(q.x, q.y, q.z, q.t);
                const double v = norm_at(q);
                if (v > best_val) {
                    best_val = v;
                    best = q;
                    improved = true;
                }
            }
        }
        if (!improved) h *= 0.5;
    }
    return GridResult{best_val, best};
}

const OrthogonalMatrix& matrix_a() {
    static const OrthogonalMatrix a(SquareMatrix(
        3, {1.0 / 3, 2.0 / 3, 2.0 / 3, 2.0 / 3, 1.0 / 3, -2.0 / 3, -2.0 / 3, 2.0 / 3, -1.0 / 3}));
    return a;
}

}  // namespace onorm
