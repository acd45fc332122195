#pragma once

#include <optional>
#include <string>

#include "onorm/ascent.hpp"

namespace onorm {

double bound_cauchy_schwarz(int n);       // n * sqrt(n)
double bound_improved_threshold(int n);   // n*sqrt(n) - 1/(n*sqrt(n))

struct ElementaryBounds {
    double basic;                  // (n - 4.5) * sqrt(n), conditional on HC
    std::optional<double> refined; // (n-3)*sqrt(n-3) + 5 for n >= 4, conditional on HC
};

ElementaryBounds bound_elementary(int n);

// The four-row table of K_n estimates, plus the optional empirical value
// from the multi-restart optimizer. empirical_best is a lower bound on
// K_n, never a claim of equality.
struct BoundsReport {
    int n;
    double cauchy_schwarz;
    double improved_threshold;
    double elementary;
    std::optional<double> elementary_refined;
    double spherical_exact;       // average of the 1-norm, exact evaluation
    double spherical_asymptotic;  // sqrt(2/pi) * n * sqrt(n)
    std::optional<double> empirical_best;
    std::string hc_note;
};

BoundsReport bounds_report(int n, bool with_empirical, const AscentOptions& opts, int threads = 0);

}  // namespace onorm
