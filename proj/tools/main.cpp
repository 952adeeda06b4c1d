#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace a2a;
using namespace a2a::cli;

namespace {

std::optional<std::size_t> round_limit_from_env() {
    const char* raw = std::getenv("A2A_ROUND_LIMIT");
    if (!raw || !*raw) return std::nullopt;
    const auto values = parse_index_list(raw);
    if (values.size() != 1 || values[0] == 0) {
        throw Error(Errc::ParseError, std::string("A2A_ROUND_LIMIT='") + raw + "'");
    }
    return values[0];
}

struct RunFlags {
    RunSpec spec;
    std::string phi, phi_omega, phi_alpha;
    std::string format = "json";
    std::string trace_path;
    std::uint64_t seed = 0;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--algo", f.spec.algo, "universal | dft | vandermonde | lagrange")
        ->check(CLI::IsMember({"universal", "dft", "vandermonde", "lagrange"}));
    cmd->add_option("--k", f.spec.k, "number of processors")->required();
    cmd->add_option("--p", f.spec.p, "ports per processor");
    cmd->add_option("--q", f.spec.q, "prime field modulus")->required();
    cmd->add_option("--matrix", f.spec.matrix,
                    "random | identity | ones | dft | vandermonde | PATH");
    cmd->add_option("--input", f.spec.input, "random | comma list | PATH");
    cmd->add_option("--seed", f.seed, "seed for both random matrix and input")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_option("--matrix-seed", f.spec.matrix_seed);
    cmd->add_option("--input-seed", f.spec.input_seed);
    cmd->add_option("--phi", f.phi, "evaluation point exponents (vandermonde)");
    cmd->add_option("--phi-omega", f.phi_omega, "interpolation point exponents (lagrange)");
    cmd->add_option("--phi-alpha", f.phi_alpha, "evaluation point exponents (lagrange)");
    cmd->add_flag("--inverse", f.spec.inverse, "run the inverse transform");
    cmd->add_option("--trace", f.trace_path, "write the message trace as JSONL");
    cmd->add_option("--format", f.format)->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--beta", f.spec.beta, "per-round startup cost");
    cmd->add_option("--tau", f.spec.tau, "per-element cost");
}

RunSpec finish_spec(CLI::App* cmd, RunFlags& f) {
    RunSpec spec = f.spec;
    if (cmd->count("--seed")) {
        if (!cmd->count("--matrix-seed")) spec.matrix_seed = f.seed;
        if (!cmd->count("--input-seed")) spec.input_seed = f.seed;
    }
    spec.phi = parse_index_list(f.phi);
    spec.phi_omega = parse_index_list(f.phi_omega);
    spec.phi_alpha = parse_index_list(f.phi_alpha);
    spec.trace = !f.trace_path.empty();
    spec.round_limit = round_limit_from_env();
    return spec;
}

void write_trace(const RunFlags& f, const RunRecord& r, Json& j) {
    if (!r.trace) return;
    std::ofstream out(f.trace_path);
    if (!out) throw Error(Errc::ParseError, "cannot write trace '" + f.trace_path + "'");
    out << *r.trace;
    j["trace"] = f.trace_path;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"All-to-all encode simulator over prime fields"};
    app.require_subcommand(1);

    RunFlags run_flags;
    auto* run = app.add_subcommand("run", "simulate one encode and check it against x * A");
    add_run_flags(run, run_flags);

    RunFlags verify_flags;
    auto* verify = app.add_subcommand("verify", "run twice with tracing and compare");
    add_run_flags(verify, verify_flags);

    std::size_t bk = 0, bp = 1;
    std::uint32_t bq = 0;
    auto* bounds = app.add_subcommand("bounds", "lower bounds and predicted costs");
    bounds->add_option("--k", bk)->required();
    bounds->add_option("--p", bp);
    bounds->add_option("--q", bq, "field for algorithm-specific predictions");

    SweepSpec sweep_spec;
    std::size_t k_min = 2, k_max = 0;
    std::string k_list, p_list = "1", sweep_q = "auto";
    auto* sweep = app.add_subcommand("sweep", "CSV table of costs over K and p");
    sweep->add_option("--algo", sweep_spec.algo)
        ->check(CLI::IsMember({"universal", "dft", "vandermonde"}));
    sweep->add_option("--k-min", k_min);
    sweep->add_option("--k-max", k_max);
    sweep->add_option("--k-list", k_list, "explicit comma-separated K values");
    sweep->add_option("--p", p_list, "comma-separated port counts");
    sweep->add_option("--q", sweep_q, "prime modulus or auto");
    sweep->add_option("--seed", sweep_spec.seed);
    sweep->add_option("--jobs", sweep_spec.jobs);

    OrchestrateSpec orch;
    std::uint64_t orch_seed = 0;
    auto* orchestrate = app.add_subcommand("orchestrate", "broadcast then grouped encodes");
    orchestrate->add_option("--n", orch.n)->required();
    orchestrate->add_option("--k", orch.k)->required();
    orchestrate->add_option("--p", orch.p);
    orchestrate->add_option("--q", orch.q)->required();
    orchestrate->add_option("--matrix", orch.matrix, "random | identity | ones | PATH");
    orchestrate->add_option("--input", orch.input, "random | comma list | PATH");
    orchestrate->add_option("--seed", orch_seed)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    orchestrate->add_option("--beta", orch.beta);
    orchestrate->add_option("--tau", orch.tau);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kSuccess : kBadArguments;
    }

    try {
        if (run->parsed()) {
            const RunSpec spec = finish_spec(run, run_flags);
            const RunRecord r = cmd_run(spec);
            Json j = to_json(r);
            write_trace(run_flags, r, j);
            if (run_flags.format == "csv") {
                std::cout << csv_header() << '\n' << to_csv(r) << '\n';
            } else {
                std::cout << j.dump() << '\n';
            }
            return r.verified ? kSuccess : kVerificationFailure;
        }
        if (verify->parsed()) {
            RunSpec spec = finish_spec(verify, verify_flags);
            const VerifyRecord v = cmd_verify(spec);
            Json j = to_json(v);
            if (!verify_flags.trace_path.empty()) write_trace(verify_flags, v.run, j);
            std::cout << j.dump() << '\n';
            return v.ok ? kSuccess : kVerificationFailure;
        }
        if (bounds->parsed()) {
            std::optional<std::uint32_t> q;
            if (bounds->count("--q")) q = bq;
            std::cout << cmd_bounds(bk, bp, q).dump() << '\n';
            return kSuccess;
        }
        if (sweep->parsed()) {
            if (!k_list.empty()) {
                sweep_spec.ks = parse_index_list(k_list);
            } else {
                if (k_max < k_min) throw Error(Errc::ParseError, "--k-max below --k-min");
                for (std::size_t k = k_min; k <= k_max; ++k) sweep_spec.ks.push_back(k);
            }
            sweep_spec.ps = parse_index_list(p_list);
            if (sweep_q != "auto") {
                const auto q = parse_index_list(sweep_q);
                if (q.size() != 1) throw Error(Errc::ParseError, "--q '" + sweep_q + "'");
                sweep_spec.q = static_cast<std::uint32_t>(q[0]);
                PrimeField check(sweep_spec.q);
            }
            std::cout << cmd_sweep(sweep_spec);
            return kSuccess;
        }
        if (orchestrate->parsed()) {
            if (orchestrate->count("--seed")) orch.matrix_seed = orch.input_seed = orch_seed;
            const OrchestrateRecord r = cmd_orchestrate(orch);
            std::cout << to_json(r).dump() << '\n';
            return r.verified ? kSuccess : kVerificationFailure;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kBadArguments;
}
