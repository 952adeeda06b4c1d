#include "cli/commands.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace a2a;
using namespace a2a::cli;

namespace {

RunSpec spec(std::string algo, std::size_t k, std::size_t p, std::uint32_t q) {
    RunSpec s;
    s.algo = std::move(algo);
    s.k = k;
    s.p = p;
    s.q = q;
    return s;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

} // namespace

TEST_CASE("run examples") {
    auto s = spec("universal", 9, 2, 13);
    s.matrix_seed = s.input_seed = 7;
    const auto r = cmd_run(s);
    CHECK(r.verified);
    CHECK(r.c1 == 2);
    CHECK(r.c2 == 2);

    auto d = spec("dft", 4, 1, 5);
    d.input = "1,2,3,4";
    const auto rd = cmd_run(d);
    CHECK(rd.output == std::vector<Fe>{Fe(0, 5), Fe(2, 5), Fe(1, 5), Fe(1, 5)});

    auto l = spec("lagrange", 6, 1, 13);
    l.phi_omega = l.phi_alpha = {0, 1, 2};
    const auto rl = cmd_run(l);
    CHECK(rl.output == rl.input);
    CHECK(rl.verified);
}

TEST_CASE("json and csv share the documented field order") {
    const auto r = cmd_run(spec("universal", 5, 1, 13));
    const Json j = to_json(r);
    const std::vector<std::string> keys{"algo", "k", "p", "q", "c1", "c2", "d",
                                        "c1_lower", "c2_lower", "verified", "total_cost"};
    auto it = j.begin();
    for (const auto& k : keys) {
        REQUIRE(it != j.end());
        CHECK(it.key() == k);
        ++it;
    }
    CHECK(csv_header() == "algo,k,p,q,c1,c2,d,c1_lower,c2_lower,verified,total_cost");
    CHECK(to_csv(r) == "universal,5,1,13,3,4,1;2;1,3,3,true,7.0");
}

TEST_CASE("every algorithm and direction verifies") {
    for (bool inv : {false, true}) {
        for (auto s : {spec("universal", 12, 3, 13), spec("dft", 16, 3, 17),
                       spec("vandermonde", 8, 3, 17), spec("vandermonde", 6, 1, 13)}) {
            if (inv && s.algo == "universal") continue;
            s.inverse = inv;
            CHECK(cmd_run(s).verified);
        }
    }
    for (const char* family : {"identity", "ones", "dft", "vandermonde"}) {
        auto s = spec("universal", 8, 1, 17);
        s.matrix = family;
        CHECK(cmd_run(s).verified);
    }
}

TEST_CASE("matrix and input files") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto mpath = (dir / "a2a_test_matrix.txt").string();
    const auto ipath = (dir / "a2a_test_input.txt").string();
    {
        std::ofstream m(mpath);
        write_matrix(m, random_matrix(PrimeField(13), 4, 4, 5));
        std::ofstream i(ipath);
        i << "13 1 4\n1 2 3 4\n";
    }
    auto s = spec("universal", 4, 1, 13);
    s.matrix = mpath;
    s.input = ipath;
    const auto r = cmd_run(s);
    CHECK(r.verified);
    CHECK(r.expected == mat_vec_mul(r.input, random_matrix(PrimeField(13), 4, 4, 5)));
    CHECK(r.input == std::vector<Fe>{Fe(1, 13), Fe(2, 13), Fe(3, 13), Fe(4, 13)});
    s.k = 5;
    CHECK_THROWS_AS((void)cmd_run(s), Error);
    std::remove(mpath.c_str());
    std::remove(ipath.c_str());
}

TEST_CASE("bad arguments map to exit code 3, violations to 2") {
    try {
        (void)cmd_run(spec("dft", 6, 1, 13));
        FAIL("expected NotAPower");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotAPower);
        CHECK(exit_code_for(e) == kBadArguments);
    }
    auto s = spec("universal", 9, 1, 13);
    s.round_limit = 2;
    try {
        (void)cmd_run(s);
        FAIL("expected NonTermination");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonTermination);
        CHECK(exit_code_for(e) == kModelViolation);
    }
    CHECK_THROWS_AS((void)cmd_run(spec("nonsense", 4, 1, 5)), Error);
    CHECK_THROWS_AS((void)parse_index_list("1,-2"), Error);
    CHECK_THROWS_AS((void)parse_index_list("1,x"), Error);
    auto bad_input = spec("dft", 4, 1, 5);
    bad_input.input = "1,2,3,5";
    CHECK_THROWS_AS((void)cmd_run(bad_input), Error);
}

TEST_CASE("verify replays identically") {
    const auto v = cmd_verify(spec("vandermonde", 8, 3, 17));
    CHECK(v.ok);
    CHECK(v.replay_identical);
    CHECK(v.trace_rounds_match);
    CHECK(v.run.trace.has_value());
}

TEST_CASE("bounds") {
    const Json a = cmd_bounds(4, 1, std::nullopt);
    CHECK(a["c1_lower"] == 2);
    CHECK(a["c2_lower"] == 2);
    const Json b = cmd_bounds(9, 2, std::nullopt);
    CHECK(b["c1_lower"] == 2);
    CHECK(b["c2_lower"] == 2);
    CHECK(cmd_bounds(1, 1, std::nullopt)["c1_lower"] == 0);
    const Json c = cmd_bounds(16, 3, 17u);
    CHECK(c["predictions"]["dft"]["c1"] == 2);
}

TEST_CASE("auto prime policy") {
    CHECK(auto_prime("universal", 4) == 5);
    CHECK(auto_prime("universal", 2) == 3);
    CHECK(auto_prime("dft", 16) == 17);
    CHECK(auto_prime("dft", 8) == 17);
    CHECK(auto_prime("vandermonde", 6) == 7);
    CHECK(auto_prime("dft", 256) == 257);
}

TEST_CASE("universal sweep p=1 has C1 = ceil(log2 K)") {
    SweepSpec s;
    for (std::size_t k = 2; k <= 64; ++k) s.ks.push_back(k);
    s.ps = {1};
    s.jobs = 4;
    const auto rows = lines_of(cmd_sweep(s));
    REQUIRE(rows.size() == 64);
    CHECK(rows[0] == "k,p,q,c1,c2,c1_lower,c2_lower,ratio,status");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const std::size_t k = i + 1;
        std::size_t lg = 0;
        while ((std::size_t{1} << lg) < k) ++lg;
        std::istringstream in(rows[i]);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(in, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() == 9);
        CHECK(cells[0] == std::to_string(k));
        CHECK(cells[3] == std::to_string(lg));
        CHECK(cells[8] == "ok");
    }
}

TEST_CASE("dft sweep over F_17 and skipped rows") {
    SweepSpec s;
    s.algo = "dft";
    s.ks = {2, 4, 8, 16, 6};
    s.ps = {1};
    s.q = 17;
    const auto rows = lines_of(cmd_sweep(s));
    CHECK(rows[1] == "2,1,17,1,1,1,1,1.000000,ok");
    CHECK(rows[2] == "4,1,17,2,2,2,2,1.000000,ok");
    CHECK(rows[3].rfind("8,1,17,3,3,", 0) == 0);
    CHECK(rows[4].rfind("16,1,17,4,4,", 0) == 0);
    CHECK(rows[5] == "6,1,17,,,,,,skipped:NotAPower");
}

TEST_CASE("sweep ratio near the bound for large K") {
    SweepSpec s;
    s.ks = {256, 1024};
    s.ps = {1};
    const auto rows = lines_of(cmd_sweep(s));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto ratio = std::stod(rows[i].substr(0, rows[i].rfind(',')).substr(
            rows[i].substr(0, rows[i].rfind(',')).rfind(',') + 1));
        CHECK(ratio <= 1.415);
    }
}

TEST_CASE("sweeps are identical across runs and thread counts") {
    SweepSpec s;
    s.ks = {3, 7, 12, 30, 31};
    s.ps = {1, 2, 5};
    s.jobs = 1;
    const auto a = cmd_sweep(s);
    s.jobs = 8;
    CHECK(cmd_sweep(s) == a);
    CHECK(cmd_sweep(s) == a);
    CHECK(a.find("skipped:BadConfig") != std::string::npos);  // p = 5 with K = 3
}

TEST_CASE("orchestrate") {
    OrchestrateSpec s;
    s.n = 8;
    s.k = 4;
    s.p = 1;
    s.q = 5;
    const auto r = cmd_orchestrate(s);
    CHECK(r.verified);
    CHECK(r.result.report.c1 == 3);
    s.n = 4;
    s.k = 2;
    s.matrix = "identity";
    s.input = "1,2";
    const auto id = cmd_orchestrate(s);
    CHECK(id.result.outputs == std::vector<Fe>{Fe(1, 5), Fe(2, 5), Fe(1, 5), Fe(2, 5)});
    s.n = 6;
    s.k = 4;
    CHECK_THROWS_AS((void)cmd_orchestrate(s), Error);
}
