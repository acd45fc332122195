#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "onorm/haar.hpp"

namespace onorm {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// NOTE: this is the offset convention m!! = (m-1)(m-3)(m-5)..., the
// product ending at 2 for odd m and at 1 for even m (empty product = 1).
// It is NOT the standard double factorial; every exact formula in this
// module is stated in terms of this convention, so the standard one is
// deliberately not provided.
BigInt double_factorial(long m);

// Exponents k_1..k_p of |x_1^{k_1} ... x_p^{k_p}| on S^(n-1), p <= n.
struct ExponentVector {
    int n;
    std::vector<int> ks;

    ExponentVector(int n_, std::vector<int> ks_);
};

// The (2/pi)-exponent: [odds/2] for odd n, [(odds+1)/2] for even n, where
// odds counts the odd exponents. Cross-checked against the equivalent
// compact form [(n+odds+1)/2] - [(n+1)/2].
int sigma_exponent(const ExponentVector& v);

// value = rational * (2/pi)^pi_exponent, exact.
struct ExactValue {
    BigRat rational;
    int pi_exponent = 0;

    double to_double() const;
    std::string to_string() const;  // e.g. "1/2" or "1 * (2/pi)^1"
};

// Exact spherical integral of |x_1^{k_1} ... x_p^{k_p}| over S^(n-1):
// (2/pi)^Sigma * (n-1)!! k_1!! ... k_p!! / (n + Sigma k_i - 1)!!
ExactValue spherical_integral(const ExponentVector& v);

// Average of the 1-norm over O(n): n^2 * integral of |x_1| on S^(n-1).
ExactValue average_one_norm(int n);

// Large-n limit of the average: sqrt(2/pi) * n * sqrt(n).
double asymptotic_average(int n);

// The Haar integral of U_11^2 U_22^2 over O(n): (n+1)/((n-1) n (n+2)).
BigRat weingarten_11_22(int n);

// Lower bound on the second moment of the 1-norm:
// n^2/n + 2 n^2 (n-1) * (2/(pi n)) + n^2 (n-1)^2 * weingarten_11_22(n).
double second_moment_lower_bound(int n);

struct MomentEstimate {
    int n = 0;
    int k = 0;
    double mean = 0.0;
    double std_error = 0.0;
    long long samples = 0;
    std::uint64_t seed = 0;
    double kn_lower_bound = 0.0;  // mean^(1/k); valid since I_k <= K_n^k
};

// Monte Carlo estimate of the k-th moment of the 1-norm under Haar
// measure. The sample budget is split over a fixed shard count with one
// generator stream per shard and merged in shard order, so the result is
// independent of the executing thread count.
MomentEstimate monte_carlo_moment(int n, int k, long long samples, SamplerConfig cfg,
                                  int threads = 0);

// One term of the k-fold expansion of I_k: the Haar integral of
// |U_{i_1 j_1} ... U_{i_k j_k}|, estimated by Monte Carlo. Guarded at
// k <= 4; the general expansion is outside this toolkit's scope.
MomentEstimate moment_term(int n, int k, const std::vector<std::pair<int, int>>& entries,
                           long long samples, SamplerConfig cfg, int threads = 0);

}  // namespace onorm
