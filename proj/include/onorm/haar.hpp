#pragma once

#include <cstdint>
#include <vector>

#include "onorm/matrix.hpp"

namespace onorm {

// (seed, stream_id) fully determines the sample sequence. Distinct stream
// ids select disjoint subsequences of the generator via long jumps, so
// concurrent workers never overlap.
struct SamplerConfig {
    std::uint64_t seed = 0;
    std::uint32_t stream_id = 0;
};

// xoshiro256++ 1.0 (Blackman/Vigna, public domain), state seeded through
// splitmix64. Stream selection: stream_id applications of long_jump
// (2^192 steps each). Gaussians via Box-Muller, so output is bit-exact
// for a given (seed, stream_id) independent of the standard library.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(SamplerConfig cfg);

    std::uint64_t next();
    double uniform();   // [0, 1)
    double gaussian();  // standard normal

private:
    void long_jump();

    std::uint64_t s_[4];
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Uniform unit vector on S^(n-1): normalized Gaussian vector.
std::vector<double> sample_sphere(int n, Xoshiro256pp& rng);
std::vector<double> sample_sphere(int n, SamplerConfig cfg);

// Haar-distributed matrix on O(n): Gaussian fill, then Gram-Schmidt on
// the columns. Column normalization keeps the triangular factor's
// diagonal positive, the sign convention Haar correctness requires.
OrthogonalMatrix sample_haar(int n, Xoshiro256pp& rng);
OrthogonalMatrix sample_haar(int n, SamplerConfig cfg);

}  // namespace onorm
