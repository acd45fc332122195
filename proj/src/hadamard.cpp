#include "onorm/hadamard.hpp"

#include <cmath>

namespace onorm {

HadamardMatrix::HadamardMatrix(int n, std::vector<int> entries) : n_(n), s_(std::move(entries)) {
    if (n <= 0) throw std::invalid_argument("order must be positive");
    if (!(n == 1 || n == 2 || n % 4 == 0))
        throw std::invalid_argument("Hadamard order must be 1, 2, or divisible by 4");
    if (s_.size() != static_cast<size_t>(n) * n) throw std::invalid_argument("entry count mismatch");
    for (int v : s_)
        if (v != 1 && v != -1) throw std::invalid_argument("entries must be +1/-1");
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            long long dot = 0;
            for (int k = 0; k < n; ++k)
                dot += static_cast<long long>((*this)(i, k)) * (*this)(j, k);
            if (dot != 0) throw std::invalid_argument("rows are not pairwise orthogonal");
        }
    }
}

SquareMatrix HadamardMatrix::as_matrix() const {
    std::vector<double> a(s_.begin(), s_.end());
    return SquareMatrix(n_, std::move(a));
}

OrthogonalMatrix HadamardMatrix::rescaled() const {
    const double inv = 1.0 / std::sqrt(static_cast<double>(n_));
    std::vector<double> a(s_.size());
    for (size_t i = 0; i < s_.size(); ++i) a[i] = s_[i] * inv;
    return OrthogonalMatrix(SquareMatrix(n_, std::move(a)));
}

HadamardMatrix sylvester(int k) {
    if (k < 0) throw std::invalid_argument("k must be nonnegative");
    if (k > 20) throw std::invalid_argument("size guard: k must be <= 20");
    int n = 1;
    std::vector<int> s{1};
    for (int step = 0; step < k; ++step) {
        const int m = 2 * n;
        std::vector<int> t(static_cast<size_t>(m) * m);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const int v = s[static_cast<size_t>(i) * n + j];
                t[static_cast<size_t>(i) * m + j] = v;
                t[static_cast<size_t>(i) * m + j + n] = v;
                t[static_cast<size_t>(i + n) * m + j] = v;
                t[static_cast<size_t>(i + n) * m + j + n] = -v;
            }
        }
        n = m;
        s = std::move(t);
    }
    return HadamardMatrix(n, std::move(s));
}

HadamardMatrix kronecker(const HadamardMatrix& h1, const HadamardMatrix& h2) {
    const int n = h1.n(), m = h2.n();
    const int nm = n * m;
    std::vector<int> s(static_cast<size_t>(nm) * nm);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < m; ++a)
            for (int j = 0; j < n; ++j)
                for (int b = 0; b < m; ++b)
                    s[static_cast<size_t>(i * m + a) * nm + (j * m + b)] = h1(i, j) * h2(a, b);
    return HadamardMatrix(nm, std::move(s));
}

bool is_hadamard(const SquareMatrix& m, double tol) {
    const int n = m.n();
    for (double x : m.data())
        if (std::fabs(std::fabs(x) - 1.0) > tol) return false;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double dot = 0.0;
            for (int k = 0; k < n; ++k) dot += m(i, k) * m(j, k);
            if (std::fabs(dot - (i == j ? n : 0.0)) > tol * n) return false;
        }
    }
    return true;
}

bool detect_rescaled(const OrthogonalMatrix& u, double tol) {
    const int n = u.n();
    const double target = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::fabs(std::fabs(u(i, j)) - target) > tol) return false;
    std::vector<int> s(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s[static_cast<size_t>(i) * n + j] = u(i, j) > 0.0 ? 1 : -1;
    try {
        HadamardMatrix h(n, std::move(s));
        (void)h;
    } catch (const std::invalid_argument& e) {
        throw InconsistentDetectionError(std::string("magnitudes match 1/sqrt(n) but signs are not "
                                                     "Hadamard: ") +
                                         e.what());
    }
    return true;
}

RowDefect row_defect(const std::vector<double>& u) {
    const int n = static_cast<int>(u.size());
    if (n == 0) throw std::invalid_argument("empty vector");
    double norm2 = 0.0;
    for (double x : u) norm2 += x * x;
    if (std::fabs(std::sqrt(norm2) - 1.0) > 1e-10)
        throw std::invalid_argument("row_defect requires a unit vector");
    const double inv = 1.0 / std::sqrt(static_cast<double>(n));
    RowDefect r{0.0, std::vector<double>(n)};
    for (int i = 0; i < n; ++i) {
        r.nearest_sign_vector[i] = (u[i] < 0.0 ? -inv : inv);
        const double d = u[i] - r.nearest_sign_vector[i];
        r.defect += d * d;
    }
    return r;
}

}  // namespace onorm
