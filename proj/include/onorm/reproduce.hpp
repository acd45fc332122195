#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace onorm {

struct ReproduceResult {
    nlohmann::json report;  // numeric fields deterministic for fixed seed, any thread count
    bool pass = false;
    std::vector<std::string> failures;
};

// One-command reproduction of the headline numbers: the K_3 search, the
// certificate of the extremal 3x3 matrix, bounds tables for n = 3..8,
// spherical-integral cross-checks, and the second-moment comparison.
ReproduceResult run_reproduce(std::uint64_t seed, int threads);

}  // namespace onorm
