#include "onorm/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "onorm/moments.hpp"

namespace onorm {

double bound_cauchy_schwarz(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    return n * std::sqrt(static_cast<double>(n));
}

double bound_improved_threshold(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const double ns = bound_cauchy_schwarz(n);
    return ns - 1.0 / ns;
}

ElementaryBounds bound_elementary(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    ElementaryBounds b{(n - 4.5) * std::sqrt(static_cast<double>(n)), std::nullopt};
    if (n >= 4) b.refined = (n - 3) * std::sqrt(static_cast<double>(n - 3)) + 5.0;
    return b;
}

BoundsReport bounds_report(int n, bool with_empirical, const AscentOptions& opts, int threads) {
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    BoundsReport r{};
    r.n = n;
    r.cauchy_schwarz = bound_cauchy_schwarz(n);
    r.improved_threshold = bound_improved_threshold(n);
    const ElementaryBounds eb = bound_elementary(n);
    r.elementary = eb.basic;
    r.elementary_refined = eb.refined;
    r.spherical_exact = average_one_norm(n).to_double();
    r.spherical_asymptotic = asymptotic_average(n);
    r.hc_note =
        "K_N = N*sqrt(N) is equivalent to HC at N; K_N >= N*sqrt(N) - 1/(N*sqrt(N)) implies HC "
        "(Theorem holds for even N" +
        std::string(n % 2 == 0 ? "" : "; N odd here, threshold shown for reference only") +
        "); elementary rows are conditional on HC; spherical rows are unconditional; "
        "empirical_best is a lower bound on K_N, not a value claim.";
    if (with_empirical) {
        AscentOptions o = opts;
        if (o.restarts < 1) o.restarts = 100;
        r.empirical_best = search_kn(n, o, threads).objective;
    }
    if (!(r.spherical_exact <= r.cauchy_schwarz) || !(r.improved_threshold < r.cauchy_schwarz))
        throw std::logic_error("bounds report ordering violated");
    if (r.empirical_best &&
        !(r.spherical_exact <= *r.empirical_best + 1e-6 &&
          *r.empirical_best <= r.cauchy_schwarz + 1e-6))
        throw std::logic_error("empirical value outside [spherical, cauchy-schwarz] band");
    return r;
}

}  // namespace onorm
