#include "onorm/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace onorm {

ZeroEntryError::ZeroEntryError(int i, int j)
    : std::runtime_error("near-zero entry at (" + std::to_string(i) + "," + std::to_string(j) +
                         "); not a local maximizer"),
      row(i),
      col(j) {}

NoConvergenceError::NoConvergenceError(const std::string& what) : std::runtime_error(what) {}

SquareMatrix::SquareMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {
    if (n <= 0) throw std::invalid_argument("matrix dimension must be positive");
}

SquareMatrix::SquareMatrix(int n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
    if (n <= 0) throw std::invalid_argument("matrix dimension must be positive");
    if (a_.size() != static_cast<size_t>(n) * n)
        throw std::invalid_argument("entry count does not match dimension");
    for (double x : a_)
        if (!std::isfinite(x)) throw std::invalid_argument("matrix entries must be finite");
}

SquareMatrix SquareMatrix::transposed() const {
    SquareMatrix t(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) t.at(j, i) = (*this)(i, j);
    return t;
}

double one_norm(const SquareMatrix& u) {
    double s = 0.0;
    for (double x : u.data()) s += std::fabs(x);
    return s;
}

double p_norm(const SquareMatrix& u, double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("p-norm requires finite p >= 1");
    if (p == 1.0) return one_norm(u);
    double s = 0.0;
    if (p == 2.0) {
        for (double x : u.data()) s += x * x;
        return std::sqrt(s);
    }
    for (double x : u.data()) s += std::pow(std::fabs(x), p);
    return std::pow(s, 1.0 / p);
}

double orthogonality_residual(const SquareMatrix& u) {
    const int n = u.n();
    double r = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double dot = 0.0;
            for (int k = 0; k < n; ++k) dot += u(i, k) * u(j, k);
            r = std::max(r, std::fabs(dot - (i == j ? 1.0 : 0.0)));
        }
    }
    return r;
}

SquareMatrix gram_schmidt_columns(const SquareMatrix& u) {
    const int n = u.n();
    SquareMatrix q = u;
    for (int k = 0; k < n; ++k) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < k; ++j) {
                double dot = 0.0;
                for (int i = 0; i < n; ++i) dot += q(i, j) * q(i, k);
                for (int i = 0; i < n; ++i) q.at(i, k) -= dot * q(i, j);
            }
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i) norm += q(i, k) * q(i, k);
        norm = std::sqrt(norm);
        if (norm == 0.0) throw std::invalid_argument("rank-deficient matrix in Gram-Schmidt");
        for (int i = 0; i < n; ++i) q.at(i, k) /= norm;
    }
    return q;
}

OrthogonalMatrix::OrthogonalMatrix(SquareMatrix m, double tol_orth)
    : m_(std::move(m)), residual_(orthogonality_residual(m_)) {
    if (residual_ > tol_orth)
        throw std::invalid_argument("matrix is not orthogonal: residual " + std::to_string(residual_));
}

OrthogonalMatrix OrthogonalMatrix::orthonormalized(const SquareMatrix& m, double tol_orth) {
    return OrthogonalMatrix(gram_schmidt_columns(m), tol_orth);
}

SignPattern sign_pattern(const SquareMatrix& u, double tol_zero) {
    if (!(tol_zero > 0.0)) throw std::invalid_argument("tol_zero must be positive");
    const int n = u.n();
    SignPattern s{n, std::vector<int>(static_cast<size_t>(n) * n)};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double x = u(i, j);
            if (std::fabs(x) <= tol_zero) throw ZeroEntryError(i, j);
            s.signs[static_cast<size_t>(i) * n + j] = x > 0.0 ? 1 : -1;
        }
    }
    return s;
}

namespace {

void check_perm(const std::vector<int>& p, int n, const char* what) {
    if (static_cast<int>(p.size()) != n) throw std::invalid_argument(std::string(what) + ": size mismatch");
    std::vector<char> seen(n, 0);
    for (int v : p) {
        if (v < 0 || v >= n || seen[v]) throw std::invalid_argument(std::string(what) + ": not a permutation");
        seen[v] = 1;
    }
}

void check_signs(const std::vector<int>& s, int n, const char* what) {
    if (static_cast<int>(s.size()) != n) throw std::invalid_argument(std::string(what) + ": size mismatch");
    for (int v : s)
        if (v != 1 && v != -1) throw std::invalid_argument(std::string(what) + ": entries must be +1/-1");
}

}  // namespace

OrthogonalMatrix apply_move(const OrthogonalMatrix& u, const EquivalenceMove& m) {
    const int n = u.n();
    check_perm(m.row_perm, n, "row_perm");
    check_perm(m.col_perm, n, "col_perm");
    check_signs(m.row_signs, n, "row_signs");
    check_signs(m.col_signs, n, "col_signs");
    SquareMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r.at(i, j) = m.row_signs[i] * m.col_signs[j] * u(m.row_perm[i], m.col_perm[j]);
    return OrthogonalMatrix(std::move(r));
}

namespace {

double round9(double x) { return std::round(x * 1e9) / 1e9; }

// Fix signs so each row's largest-magnitude entry (leftmost on ties) is positive.
bool fix_row_signs(SquareMatrix& m) {
    const int n = m.n();
    bool changed = false;
    for (int i = 0; i < n; ++i) {
        int arg = 0;
        for (int j = 1; j < n; ++j)
            if (std::fabs(m(i, j)) > std::fabs(m(i, arg))) arg = j;
        if (m(i, arg) < 0.0) {
            for (int j = 0; j < n; ++j) m.at(i, j) = -m(i, j);
            changed = true;
        }
    }
    return changed;
}

bool fix_col_signs(SquareMatrix& m) {
    const int n = m.n();
    bool changed = false;
    for (int j = 0; j < n; ++j) {
        int arg = 0;
        for (int i = 1; i < n; ++i)
            if (std::fabs(m(i, j)) > std::fabs(m(arg, j))) arg = i;
        if (m(arg, j) < 0.0) {
            for (int i = 0; i < n; ++i) m.at(i, j) = -m(i, j);
            changed = true;
        }
    }
    return changed;
}

// Lexicographic order on rounded entries; ties keep original index (stable sort).
bool sort_rows(SquareMatrix& m) {
    const int n = m.n();
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        for (int j = 0; j < n; ++j) {
            double x = round9(m(a, j)), y = round9(m(b, j));
            if (x != y) return x < y;
        }
        return false;
    });
    bool changed = false;
    for (int i = 0; i < n; ++i)
        if (idx[i] != i) changed = true;
    if (!changed) return false;
    SquareMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = m(idx[i], j);
    m = out;
    return true;
}

bool sort_cols(SquareMatrix& m) {
    SquareMatrix t = m.transposed();
    if (!sort_rows(t)) return false;
    m = t.transposed();
    return true;
}

// Row-major lexicographic order on rounded entries.
bool lex_less(const SquareMatrix& a, const SquareMatrix& b) {
    for (size_t k = 0; k < a.data().size(); ++k) {
        const double x = round9(a.data()[k]), y = round9(b.data()[k]);
        if (x != y) return x < y;
    }
    return false;
}

bool lex_equal(const SquareMatrix& a, const SquareMatrix& b) {
    return !lex_less(a, b) && !lex_less(b, a);
}

// Runs sign-fix and sort until a fixed point. On matrices with tied
// magnitudes (rescaled Hadamard classes) the sweep can enter a short
// cycle instead; then the lexicographically smallest state seen is
// returned, which keeps the map deterministic and idempotent.
SquareMatrix canonical_pass(SquareMatrix m) {
    const int n = m.n();
    const int max_sweeps = std::max(n * n, 4);
    std::vector<SquareMatrix> seen;
    for (int s = 0; s < max_sweeps; ++s) {
        bool changed = false;
        changed |= fix_row_signs(m);
        changed |= fix_col_signs(m);
        changed |= sort_rows(m);
        changed |= sort_cols(m);
        if (!changed) return m;
        for (size_t k = 0; k < seen.size(); ++k) {
            if (lex_equal(seen[k], m)) {
                // states seen[k..] form the cycle; its lex-min is intrinsic
                // to the cycle, not to where the orbit entered it
                SquareMatrix best = m;
                for (size_t c = k; c < seen.size(); ++c)
                    if (lex_less(seen[c], best)) best = seen[c];
                return best;
            }
        }
        seen.push_back(m);
    }
    throw NoConvergenceError("canonicalize did not reach a fixed point in " +
                             std::to_string(max_sweeps) + " sweeps");
}

}  // namespace

OrthogonalMatrix canonicalize(const OrthogonalMatrix& u, double tol_zero) {
    sign_pattern(u.matrix(), tol_zero);  // refuse near-zero entries up front
    const int n = u.n();
    SquareMatrix best = canonical_pass(u.matrix());
    // The sign-fix/sort loop can have several fixed points on one
    // equivalence class. Kick the result with row/column transpositions
    // and keep the lexicographically smallest fixed point reached; this
    // stays deterministic and strictly decreases, so it terminates.
    auto try_kick = [&](SquareMatrix kicked, SquareMatrix& best) {
        SquareMatrix c = canonical_pass(std::move(kicked));
        if (lex_less(c, best)) {
            best = std::move(c);
            return true;
        }
        return false;
    };
    bool improved = true;
    while (improved) {
        improved = false;
        // single row/column sign flips
        for (int i = 0; i < n && !improved; ++i) {
            for (int by_col = 0; by_col < 2 && !improved; ++by_col) {
                SquareMatrix kicked = best;
                for (int k = 0; k < n; ++k) {
                    if (by_col)
                        kicked.at(k, i) = -kicked.at(k, i);
                    else
                        kicked.at(i, k) = -kicked.at(i, k);
                }
                improved = try_kick(std::move(kicked), best);
            }
        }
        // row/column transpositions
        for (int i = 0; i < n && !improved; ++i) {
            for (int j = i + 1; j < n && !improved; ++j) {
                for (int by_col = 0; by_col < 2 && !improved; ++by_col) {
                    SquareMatrix kicked = best;
                    for (int k = 0; k < n; ++k) {
                        if (by_col)
                            std::swap(kicked.at(k, i), kicked.at(k, j));
                        else
                            std::swap(kicked.at(i, k), kicked.at(j, k));
                    }
                    improved = try_kick(std::move(kicked), best);
                }
            }
        }
        // paired sign flips (row+row, column+column, row+column)
        for (int i = 0; i < n && !improved; ++i) {
            for (int j = 0; j < n && !improved; ++j) {
                for (int mode = 0; mode < 3 && !improved; ++mode) {
                    if (mode < 2 && j <= i) continue;
                    SquareMatrix kicked = best;
                    for (int k = 0; k < n; ++k) {
                        if (mode == 0) {
                            kicked.at(i, k) = -kicked.at(i, k);
                            kicked.at(j, k) = -kicked.at(j, k);
                        } else if (mode == 1) {
                            kicked.at(k, i) = -kicked.at(k, i);
                            kicked.at(k, j) = -kicked.at(k, j);
                        } else {
                            kicked.at(i, k) = -kicked.at(i, k);
                            kicked.at(k, j) = -kicked.at(k, j);
                        }
                    }
                    improved = try_kick(std::move(kicked), best);
                }
            }
        }
    }
    return OrthogonalMatrix(std::move(best));
}

bool equivalent(const OrthogonalMatrix& u, const OrthogonalMatrix& v, double tol) {
    if (u.n() != v.n()) throw std::invalid_argument("dimension mismatch");
    OrthogonalMatrix cu = canonicalize(u);
    OrthogonalMatrix cv = canonicalize(v);
    for (int i = 0; i < u.n(); ++i)
        for (int j = 0; j < u.n(); ++j)
            if (std::fabs(cu(i, j) - cv(i, j)) > tol) return false;
    return true;
}

void write_matrix(std::ostream& os, const SquareMatrix& u) {
    const int n = u.n();
    os << n << "\n";
    char buf[64];
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", u(i, j));
            os << (j ? " " : "") << buf;
        }
        os << "\n";
    }
}

SquareMatrix read_matrix(std::istream& is) {
    int n = 0;
    if (!(is >> n) || n <= 0) throw std::invalid_argument("bad matrix header");
    std::vector<double> a(static_cast<size_t>(n) * n);
    for (auto& x : a)
        if (!(is >> x)) throw std::invalid_argument("truncated matrix data");
    return SquareMatrix(n, std::move(a));
}

std::string matrix_to_text(const SquareMatrix& u) {
    std::ostringstream os;
    write_matrix(os, u);
    return os.str();
}

SquareMatrix matrix_from_text(const std::string& text) {
    std::istringstream is(text);
    return read_matrix(is);
}

}  // namespace onorm
