#pragma once

#include "a2a/error.hpp"
#include "a2a/linalg.hpp"
#include "a2a/netsim.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace a2a::cli {

using Json = nlohmann::ordered_json;

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailure = 1,
    kModelViolation = 2,
    kBadArguments = 3,
};

int exit_code_for(const Error& e);

struct RunSpec {
    std::string algo = "universal";  // universal | dft | vandermonde | lagrange
    std::size_t k = 0;
    std::size_t p = 1;
    std::uint32_t q = 0;
    /// "random", "identity", "ones", "dft", "vandermonde" or a matrix file.
    /// Only the universal algorithm reads it.
    std::string matrix = "random";
    /// "random", a comma-separated list of residues, or a 1 x K matrix file.
    std::string input = "random";
    std::uint64_t matrix_seed = 1;
    std::uint64_t input_seed = 1;
    std::vector<std::size_t> phi;
    std::vector<std::size_t> phi_omega;
    std::vector<std::size_t> phi_alpha;
    bool inverse = false;
    bool trace = false;
    double beta = 1.0;
    double tau = 1.0;
    std::optional<std::size_t> round_limit;
};

struct RunRecord {
    RunSpec spec;
    std::size_t c1 = 0;
    std::size_t c2 = 0;
    std::vector<std::size_t> d;
    std::size_t c1_lower = 0;
    std::size_t c2_lower = 0;
    double c2_lower_real = 0.0;
    bool verified = false;
    double total_cost = 0.0;
    std::vector<Fe> input;
    std::vector<Fe> output;
    std::vector<Fe> expected;
    std::optional<std::string> trace;
};

/// Executes the spec, checks the result against x * A computed directly.
/// Throws a2a::Error on precondition failures and model violations.
RunRecord cmd_run(const RunSpec& spec);

Json to_json(const RunRecord& record);
std::string csv_header();
std::string to_csv(const RunRecord& record);

/// Runs twice with tracing; verified requires oracle agreement, identical
/// traces, a trace round count equal to C1, and C2 >= C1.
struct VerifyRecord {
    RunRecord run;
    bool replay_identical = false;
    bool trace_rounds_match = false;
    bool ok = false;
};
VerifyRecord cmd_verify(RunSpec spec);
Json to_json(const VerifyRecord& record);

Json cmd_bounds(std::size_t k, std::size_t p, std::optional<std::uint32_t> q);

struct SweepSpec {
    std::string algo = "universal";
    std::vector<std::size_t> ks;
    std::vector<std::size_t> ps;
    /// 0 selects the smallest suitable prime per configuration.
    std::uint32_t q = 0;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
};

/// Smallest prime suitable for the algorithm on (K, p): K | q-1 for dft and
/// vandermonde, q > K for universal.
std::uint32_t auto_prime(const std::string& algo, std::size_t k);

/// CSV with header k,p,q,c1,c2,c1_lower,c2_lower,ratio,status; one row per
/// (p, K) in input order.
std::string cmd_sweep(const SweepSpec& spec);

struct OrchestrateSpec {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t p = 1;
    std::uint32_t q = 0;
    std::string matrix = "random";
    std::string input = "random";
    std::uint64_t matrix_seed = 1;
    std::uint64_t input_seed = 1;
    double beta = 1.0;
    double tau = 1.0;
};

struct OrchestrateRecord {
    OrchestrateSpec spec;
    RunResult result;
    std::vector<Fe> expected;
    bool verified = false;
};
OrchestrateRecord cmd_orchestrate(const OrchestrateSpec& spec);
Json to_json(const OrchestrateRecord& record);

/// Helpers shared with the entry point.
std::vector<std::size_t> parse_index_list(const std::string& text);
std::vector<Fe> load_input(const std::string& source, const PrimeField& field, std::size_t k,
                           std::uint64_t seed);

} // namespace a2a::cli
