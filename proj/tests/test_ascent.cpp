#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "onorm/ascent.hpp"
#include "onorm/bounds.hpp"
#include "onorm/certify.hpp"
#include "onorm/hadamard.hpp"

using namespace onorm;

namespace {

OrthogonalMatrix identity(int n) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return OrthogonalMatrix(std::move(m));
}

OrthogonalMatrix h2_rescaled() {
    const double r = 1.0 / std::sqrt(2.0);
    return OrthogonalMatrix(SquareMatrix(2, {r, r, r, -r}));
}

}  // namespace

TEST_CASE("pair_objective examples") {
    CHECK(pair_objective(identity(2), 0, 1, M_PI / 4.0) ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(pair_objective(identity(2), 0, 1, 0.0) == 2.0);
    CHECK(pair_objective(matrix_a(), 0, 2, 0.0) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK_THROWS_AS(pair_objective(identity(2), 0, 0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(pair_objective(identity(2), 0, 5, 0.1), std::out_of_range);
}

TEST_CASE("best_pair_rotation: exact line search at p = 1") {
    const Rotation r = best_pair_rotation(identity(2), 0, 1, 1.0);
    CHECK(std::fabs(std::fmod(r.t, M_PI / 2.0) - M_PI / 4.0) < 1e-12);
    CHECK(r.gain == doctest::Approx(2.0 * std::sqrt(2.0) - 2.0).epsilon(1e-12));

    CHECK(best_pair_rotation(h2_rescaled(), 0, 1, 1.0).gain <= 1e-12);

    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) CHECK(best_pair_rotation(matrix_a(), i, j, 1.0).gain <= 1e-12);

    CHECK_THROWS_AS(best_pair_rotation(identity(2), 0, 1, 2.0), std::invalid_argument);
}

TEST_CASE("line search dominates a fine grid (oracle)") {
    const OrthogonalMatrix u = sample_haar(4, SamplerConfig{17, 0});
    for (auto [i, j] : {std::pair{0, 1}, {1, 3}, {0, 2}}) {
        const Rotation r = best_pair_rotation(u, i, j, 1.0);
        const double found = pair_objective(u, i, j, r.t);
        double grid_best = 0.0;
        for (int g = 0; g < 100000; ++g)
            grid_best = std::max(grid_best, pair_objective(u, i, j, 2.0 * M_PI * g / 100000.0));
        CHECK(found >= grid_best - 1e-10);
    }
}

TEST_CASE("line search for general p (grid oracle)") {
    const OrthogonalMatrix u = sample_haar(3, SamplerConfig{18, 0});
    for (double p : {1.5, 4.0}) {
        const Rotation r = best_pair_rotation(u, 0, 2, p);
        const double found = pair_objective(u, 0, 2, r.t, p);
        double grid_best = pair_objective(u, 0, 2, 0.0, p);
        for (int g = 0; g < 100000; ++g) {
            const double v = pair_objective(u, 0, 2, 2.0 * M_PI * g / 100000.0, p);
            grid_best = p < 2.0 ? std::max(grid_best, v) : std::min(grid_best, v);
        }
        if (p < 2.0)
            CHECK(found >= grid_best - 1e-9);
        else
            CHECK(found <= grid_best + 1e-9);
    }
}

TEST_CASE("sweep") {
    auto [at_max, gain_at_max] = sweep(matrix_a(), 1.0);
    CHECK(gain_at_max <= 1e-12);

    auto [from_id, gain_from_id] = sweep(identity(3), 1.0);
    CHECK(gain_from_id > 0.0);
    CHECK(one_norm(from_id.matrix()) <= 3.0 * std::sqrt(3.0) + 1e-9);
}

TEST_CASE("optimize from fixed starts") {
    AscentOptions opts;
    const AscentResult r3 = optimize(identity(3), opts);
    CHECK(r3.converged);
    CHECK(r3.objective == doctest::Approx(5.0).epsilon(1e-6));
    CHECK(equivalent(r3.matrix, matrix_a(), 1e-6));

    const AscentResult r2 = optimize(identity(2), opts);
    CHECK(r2.objective == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("optimize is monotone across sweeps") {
    OrthogonalMatrix u = sample_haar(5, SamplerConfig{23, 0});
    double prev = one_norm(u.matrix());
    for (int s = 0; s < 30; ++s) {
        auto [next, gain] = sweep(u, 1.0);
        const double now = one_norm(next.matrix());
        CHECK(now >= prev - 1e-12);
        prev = now;
        u = next;
    }
}

TEST_CASE("search_kn reaches the known maxima") {
    AscentOptions opts;
    opts.sampler = SamplerConfig{1234, 0};

    opts.restarts = 100;
    const AscentResult k3 = search_kn(3, opts);
    CHECK(k3.objective == doctest::Approx(5.0).epsilon(1e-6));

    opts.restarts = 10;
    const AscentResult k2 = search_kn(2, opts);
    CHECK(k2.objective == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-9));

    const AscentResult k4 = search_kn(4, opts);
    CHECK(k4.objective == doctest::Approx(8.0).epsilon(1e-6));

    opts.restarts = 200;
    const AscentResult k5 = search_kn(5, opts);
    CHECK(k5.objective > bound_elementary(5).basic);
    CHECK(k5.objective <= 5.0 * std::sqrt(5.0) + 1e-9);
    MESSAGE("empirical K_5 lower bound: ", k5.objective);
}

TEST_CASE("p = 4 minimization finds rescaled Hadamard at n = 4") {
    AscentOptions opts;
    opts.p = 4.0;
    opts.restarts = 10;
    opts.sampler = SamplerConfig{77, 0};
    const AscentResult r = search_kn(4, opts);
    CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(detect_rescaled(r.matrix, 1e-4));
}

TEST_CASE("converged runs pass the certificate and conversely") {
    for (int r = 0; r < 50; ++r) {
        AscentOptions opts;
        opts.sampler = SamplerConfig{500, static_cast<std::uint32_t>(r)};
        const AscentResult res = optimize(sample_haar(3, opts.sampler), opts);
        REQUIRE(res.converged);
        const Certificate c = local_max_certificate(res.matrix);
        CHECK(c.verdict == Verdict::LocalMax);
        CHECK(c.min_eigenvalue > 1e-6);
        // and the certified point is a sweep fixed point
        CHECK(sweep(res.matrix, 1.0).second <= 1e-12);
    }
}

TEST_CASE("search_kn determinism across thread counts") {
    AscentOptions opts;
    opts.restarts = 16;
    opts.sampler = SamplerConfig{902, 0};
    const AscentResult a = search_kn(4, opts, 1);
    const AscentResult b = search_kn(4, opts, 4);
    CHECK(a.objective == b.objective);
    CHECK(a.restart_index == b.restart_index);
}

TEST_CASE("option validation") {
    AscentOptions opts;
    opts.p = 2.0;
    CHECK_THROWS_AS(optimize(identity(3), opts), std::invalid_argument);
    opts.p = 1.0;
    opts.restarts = 0;
    CHECK_THROWS_AS(search_kn(3, opts), std::invalid_argument);
}
