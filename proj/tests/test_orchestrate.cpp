#include "a2a/error.hpp"
#include "a2a/orchestrate.hpp"
#include "a2a/universal.hpp"

#include <doctest.h>

using namespace a2a;

namespace {

std::size_t ceil_log(std::size_t K, std::size_t b) {
    std::size_t t = 0, v = 1;
    while (v < K) {
        v *= b;
        ++t;
    }
    return t;
}

} // namespace

TEST_CASE("broadcast tree reaches every member") {
    const PrimeField f(13);
    for (std::size_t p = 1; p <= 3; ++p) {
        for (std::size_t n = 1; n <= 20; ++n) {
            const BroadcastTree tree(n, p);
            CHECK(tree.rounds() == ceil_log(n, p + 1));
            if (n < 2) continue;
            std::vector<Fe> x(n, f.zero());
            x[0] = Fe(7, 13);
            const auto r = run(SystemConfig(n, std::min(p, n - 1), f), tree, x);
            for (const auto& y : r.outputs) CHECK(y == Fe(7, 13));
            CHECK(r.report.c2 == r.report.c1);
        }
    }
}

TEST_CASE("N=8 K=4 p=1 over F_5") {
    const PrimeField f(5);
    const auto G = random_matrix(f, 4, 8, 3);
    const auto x = random_vector(f, 4, 4);
    const auto r = run_orchestrate(SystemConfig(8, 1, f), G, x);
    CHECK(r.outputs == mat_vec_mul(x, G));
    CHECK(r.report.c1 == 3);
}

TEST_CASE("orchestration across sizes") {
    const PrimeField f(257);
    for (std::size_t p = 1; p <= 3; ++p) {
        for (std::size_t K : {2u, 3u, 5u, 8u}) {
            if (p >= K) continue;
            for (std::size_t blocks : {1u, 2u, 3u, 9u}) {
                const std::size_t N = K * blocks;
                const auto G = random_matrix(f, K, N, N + p);
                const auto x = random_vector(f, K, K + p);
                const auto r = run_orchestrate(SystemConfig(N, p, f), G, x);
                CHECK(r.outputs == mat_vec_mul(x, G));
                CHECK(r.report.c1 == ceil_log(blocks, p + 1) + ceil_log(K, p + 1));
            }
        }
    }
}

TEST_CASE("N = K reduces to the universal encode") {
    const PrimeField f(13);
    const auto G = random_matrix(f, 6, 6, 1);
    const auto x = random_vector(f, 6, 2);
    RunOptions opts;
    opts.trace = true;
    const auto a = run_orchestrate(SystemConfig(6, 2, f), G, x, opts);
    const auto b = ps::run_universal(SystemConfig(6, 2, f), G, x, opts);
    CHECK(a.outputs == b.outputs);
    CHECK(dump_trace(a.report) == dump_trace(b.report));
}

TEST_CASE("stacked identity blocks copy the inputs") {
    const PrimeField f(5);
    MatrixFq G(f, 2, 4);
    for (std::size_t j = 0; j < 4; ++j) G(j % 2, j) = f.one();
    const std::vector<Fe> x{Fe(1, 5), Fe(2, 5)};
    const auto r = run_orchestrate(SystemConfig(4, 1, f), G, x);
    CHECK(r.outputs == std::vector<Fe>{Fe(1, 5), Fe(2, 5), Fe(1, 5), Fe(2, 5)});
    CHECK(r.report.c1 == 2);
}

TEST_CASE("partition errors") {
    const PrimeField f(5);
    const auto G = random_matrix(f, 4, 6, 1);
    CHECK_THROWS_AS((void)run_orchestrate(SystemConfig(6, 1, f), G, random_vector(f, 4, 1)), Error);
    try {
        (void)orchestration_protocol(G, 1);
        FAIL("expected BadPartition");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::BadPartition);
    }
}
