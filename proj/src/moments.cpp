#include "onorm/moments.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "onorm/parallel.hpp"

namespace onorm {

BigInt double_factorial(long m) {
    if (m < 0) throw std::invalid_argument("double_factorial requires m >= 0");
    BigInt r = 1;
    for (long j = m - 1; j >= 1; j -= 2) r *= j;
    return r;
}

ExponentVector::ExponentVector(int n_, std::vector<int> ks_) : n(n_), ks(std::move(ks_)) {
    if (ks.empty()) throw std::invalid_argument("exponent list must be nonempty");
    if (static_cast<int>(ks.size()) > n)
        throw std::invalid_argument("more exponents than ambient dimension");
    for (int k : ks)
        if (k < 0) throw std::invalid_argument("exponents must be nonnegative");
}

int sigma_exponent(const ExponentVector& v) {
    int odds = 0;
    for (int k : v.ks)
        if (k % 2 != 0) ++odds;
    const int by_parity = (v.n % 2 != 0) ? odds / 2 : (odds + 1) / 2;
    const int compact = (v.n + odds + 1) / 2 - (v.n + 1) / 2;
    if (by_parity != compact) throw std::logic_error("sigma exponent forms disagree");
    return by_parity;
}

double ExactValue::to_double() const {
    return static_cast<double>(rational) * std::pow(2.0 / M_PI, pi_exponent);
}

std::string ExactValue::to_string() const {
    std::ostringstream os;
    const BigInt num = boost::multiprecision::numerator(rational);
    const BigInt den = boost::multiprecision::denominator(rational);
    os << num;
    if (den != 1) os << "/" << den;
    if (pi_exponent != 0) os << " * (2/pi)^" << pi_exponent;
    return os.str();
}

ExactValue spherical_integral(const ExponentVector& v) {
    const int sigma = sigma_exponent(v);
    long sum_k = 0;
    BigInt num = double_factorial(v.n - 1);
    for (int k : v.ks) {
        num *= double_factorial(k);
        sum_k += k;
    }
    const BigInt den = double_factorial(v.n + sum_k - 1);
    return ExactValue{BigRat(num, den), sigma};
}

ExactValue average_one_norm(int n) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    ExactValue v = spherical_integral(ExponentVector(n, {1}));
    v.rational *= BigInt(n) * n;
    return v;
}

double asymptotic_average(int n) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    return std::sqrt(2.0 / M_PI) * n * std::sqrt(static_cast<double>(n));
}

BigRat weingarten_11_22(int n) {
    if (n < 2) throw std::invalid_argument("weingarten_11_22 requires n >= 2");
    return BigRat(BigInt(n + 1), BigInt(n - 1) * n * (n + 2));
}

double second_moment_lower_bound(int n) {
    if (n < 2) throw std::invalid_argument("second_moment_lower_bound requires n >= 2");
    const double nn = static_cast<double>(n);
    const double t1 = nn * nn * spherical_integral(ExponentVector(n, {2})).to_double();
    const double t2 = 2.0 * nn * nn * (nn - 1.0) * spherical_integral(ExponentVector(n, {1, 1})).to_double();
    const double t3 = nn * nn * (nn - 1.0) * (nn - 1.0) * static_cast<double>(weingarten_11_22(n));
    return t1 + t2 + t3;
}

namespace {

struct Accum {
    double sum = 0.0;
    double sumsq = 0.0;
    long long count = 0;
};

// Fixed shard count -> results independent of thread count: shards are
// computed independently and merged in shard order.
template <typename Statistic>
MomentEstimate run_mc(int n, int k, long long samples, SamplerConfig cfg, int threads,
                      Statistic stat) {
    if (samples < 100) throw std::invalid_argument("need at least 100 samples");
    const int shards = samples >= 6400 ? 64 : 1;
    std::vector<Accum> acc(shards);
    parallel_for(shards, threads, [&](int s) {
        const long long lo = samples * s / shards;
        const long long hi = samples * (s + 1) / shards;
        Xoshiro256pp rng(SamplerConfig{cfg.seed, cfg.stream_id + static_cast<std::uint32_t>(s)});
        Accum a;
        for (long long i = lo; i < hi; ++i) {
            const double v = stat(rng);
            a.sum += v;
            a.sumsq += v * v;
            ++a.count;
        }
        acc[s] = a;
    });
    Accum total;
    for (const Accum& a : acc) {
        total.sum += a.sum;
        total.sumsq += a.sumsq;
        total.count += a.count;
    }
    const double mean = total.sum / total.count;
    const double var =
        std::max(0.0, (total.sumsq - total.sum * total.sum / total.count) / (total.count - 1));
    MomentEstimate est;
    est.n = n;
    est.k = k;
    est.mean = mean;
    est.std_error = std::sqrt(var / total.count);
    est.samples = total.count;
    est.seed = cfg.seed;
    est.kn_lower_bound = k == 1 ? mean : std::pow(mean, 1.0 / k);
    return est;
}

}  // namespace

MomentEstimate monte_carlo_moment(int n, int k, long long samples, SamplerConfig cfg, int threads) {
    if (n < 1 || k < 1) throw std::invalid_argument("n and k must be positive");
    return run_mc(n, k, samples, cfg, threads, [n, k](Xoshiro256pp& rng) {
        const OrthogonalMatrix u = sample_haar(n, rng);
        const double v = one_norm(u.matrix());
        double r = v;
        for (int i = 1; i < k; ++i) r *= v;
        return r;
    });
}

MomentEstimate moment_term(int n, int k, const std::vector<std::pair<int, int>>& entries,
                           long long samples, SamplerConfig cfg, int threads) {
    if (n < 1 || k < 1) throw std::invalid_argument("n and k must be positive");
    if (k > 4)
        throw std::invalid_argument(
            "moment_term supports k <= 4 only; the general expansion is out of scope");
    if (static_cast<int>(entries.size()) != k) throw std::invalid_argument("need k index pairs");
    for (auto [i, j] : entries)
        if (i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("entry index out of range");
    return run_mc(n, k, samples, cfg, threads, [n, &entries](Xoshiro256pp& rng) {
        const OrthogonalMatrix u = sample_haar(n, rng);
        double prod = 1.0;
        for (auto [i, j] : entries) prod *= std::fabs(u(i, j));
        return prod;
    });
}

}  // namespace onorm
