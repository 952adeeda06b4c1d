#include "cli/commands.hpp"

#include "a2a/bounds.hpp"
#include "a2a/dft.hpp"
#include "a2a/orchestrate.hpp"
#include "a2a/universal.hpp"
#include "a2a/vandermonde.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace a2a::cli {

namespace {

std::vector<std::uint32_t> residues(const std::vector<Fe>& v) {
    std::vector<std::uint32_t> out;
    out.reserve(v.size());
    for (const Fe& e : v) out.push_back(e.value());
    return out;
}

MatrixFq load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open matrix file '" + path + "'");
    return read_matrix(in);
}

MatrixFq load_matrix(const std::string& source, const PrimeField& field, std::size_t rows,
                     std::size_t cols, std::uint64_t seed) {
    if (source == "random") return random_matrix(field, rows, cols, seed);
    if (source == "identity" && cols % rows == 0) {
        // K x N identity blocks side by side, used by orchestration runs.
        MatrixFq A(field, rows, cols);
        for (std::size_t j = 0; j < cols; ++j) A(j % rows, j) = field.one();
        return A;
    }
    if (source == "ones") {
        std::vector<std::uint64_t> ones(rows * cols, 1);
        return MatrixFq::from_values(field, rows, cols, ones);
    }
    if (source == "dft" && rows == cols) return dft_matrix(field, rows);
    if (source == "vandermonde" && rows == cols) {
        std::vector<Fe> pts;
        for (std::size_t i = 1; i <= rows; ++i) pts.push_back(field.element(i));
        return vandermonde(field, pts);
    }
    if (std::filesystem::exists(source)) {
        MatrixFq A = load_matrix_file(source);
        if (A.rows() != rows || A.cols() != cols || !(A.field() == field)) {
            throw Error(Errc::DimensionError, "matrix file '" + source + "' is " +
                                                  std::to_string(A.rows()) + "x" +
                                                  std::to_string(A.cols()) + " over F_" +
                                                  std::to_string(A.field().modulus()));
        }
        return A;
    }
    throw Error(Errc::ParseError, "unknown matrix source '" + source + "'");
}

RunOptions options_for(const RunSpec& spec) {
    RunOptions opts;
    opts.trace = spec.trace;
    opts.round_limit = spec.round_limit;
    return opts;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

} // namespace

int exit_code_for(const Error& e) {
    return is_model_violation(e.code()) ? kModelViolation : kBadArguments;
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || item.front() == '-') {
            throw Error(Errc::ParseError, "'" + item + "' is not a nonnegative integer");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

std::vector<Fe> load_input(const std::string& source, const PrimeField& field, std::size_t k,
                           std::uint64_t seed) {
    if (source == "random") return random_vector(field, k, seed);
    if (std::filesystem::exists(source)) {
        const MatrixFq row = load_matrix_file(source);
        if (row.rows() != 1 || row.cols() != k || !(row.field() == field)) {
            throw Error(Errc::DimensionError, "input file '" + source + "' is not a 1x" +
                                                  std::to_string(k) + " vector over F_" +
                                                  std::to_string(field.modulus()));
        }
        return {row.row(0).begin(), row.row(0).end()};
    }
    const auto values = parse_index_list(source);
    if (values.size() != k) {
        throw Error(Errc::DimensionError, std::to_string(values.size()) + " inputs for K=" +
                                              std::to_string(k));
    }
    std::vector<Fe> out;
    for (std::size_t v : values) {
        if (v >= field.modulus()) {
            throw Error(Errc::ParseError, std::to_string(v) + " is not a residue mod " +
                                              std::to_string(field.modulus()));
        }
        out.push_back(field.element(v));
    }
    return out;
}

RunRecord cmd_run(const RunSpec& spec) {
    const PrimeField field(spec.q);
    const SystemConfig config(spec.k, spec.p, field, spec.beta, spec.tau);
    config.validate();
    const RunOptions opts = options_for(spec);
    const auto direction = spec.inverse ? butterfly::Direction::Inverse : butterfly::Direction::Forward;

    RunRecord rec;
    rec.spec = spec;
    rec.input = load_input(spec.input, field, spec.k, spec.input_seed);

    CostReport report;
    if (spec.algo == "universal") {
        const MatrixFq A = load_matrix(spec.matrix, field, spec.k, spec.k, spec.matrix_seed);
        RunResult r = ps::run_universal(config, A, rec.input, opts);
        rec.output = std::move(r.outputs);
        report = std::move(r.report);
        rec.expected = mat_vec_mul(rec.input, A);
    } else if (spec.algo == "dft") {
        const auto params = butterfly::dft_params(config);
        auto r = butterfly::run_dft(config, rec.input, direction, opts);
        rec.output = std::move(r.outputs);
        report = std::move(r.report);
        MatrixFq A = butterfly::reversed_dft_matrix(params, field);
        rec.expected = mat_vec_mul(rec.input, spec.inverse ? invert(A) : A);
    } else if (spec.algo == "vandermonde") {
        const auto params = draw_loose::vdm_params(config, spec.phi);
        auto r = draw_loose::run_vandermonde(config, params, rec.input, direction, opts);
        rec.output = std::move(r.outputs);
        report = std::move(r.report);
        MatrixFq A = draw_loose::target_matrix(params);
        rec.expected = mat_vec_mul(rec.input, spec.inverse ? invert(A) : A);
    } else if (spec.algo == "lagrange") {
        const auto omega = draw_loose::vdm_params(config, spec.phi_omega);
        const auto alpha = draw_loose::vdm_params(config, spec.phi_alpha);
        auto r = draw_loose::run_lagrange(config, spec.phi_omega, spec.phi_alpha, rec.input, opts);
        rec.output = std::move(r.outputs);
        report = std::move(r.report);
        const auto w = omega.points();
        const auto a = alpha.points();
        rec.expected = mat_vec_mul(rec.input, lagrange_matrix(field, w, a));
    } else {
        throw Error(Errc::ParseError, "unknown algorithm '" + spec.algo + "'");
    }

    rec.c1 = report.c1;
    rec.c2 = report.c2;
    rec.d = report.d;
    rec.c1_lower = bounds::c1_lower_universal(spec.k, spec.p);
    if (spec.k >= 2) {
        const auto c2 = bounds::c2_lower_universal(spec.k, spec.p);
        rec.c2_lower = c2.ceiling;
        rec.c2_lower_real = c2.real;
    }
    rec.verified = rec.output == rec.expected;
    rec.total_cost = total_cost(report, spec.beta, spec.tau);
    if (report.trace) rec.trace = dump_trace(report);
    return rec;
}

Json to_json(const RunRecord& r) {
    Json j;
    j["algo"] = r.spec.algo;
    j["k"] = r.spec.k;
    j["p"] = r.spec.p;
    j["q"] = r.spec.q;
    j["c1"] = r.c1;
    j["c2"] = r.c2;
    j["d"] = r.d;
    j["c1_lower"] = r.c1_lower;
    j["c2_lower"] = r.c2_lower;
    j["verified"] = r.verified;
    j["total_cost"] = r.total_cost;
    j["direction"] = r.spec.inverse ? "inverse" : "forward";
    j["input"] = residues(r.input);
    j["output"] = residues(r.output);
    return j;
}

std::string csv_header() { return "algo,k,p,q,c1,c2,d,c1_lower,c2_lower,verified,total_cost"; }

std::string to_csv(const RunRecord& r) {
    std::ostringstream out;
    out << r.spec.algo << ',' << r.spec.k << ',' << r.spec.p << ',' << r.spec.q << ',' << r.c1
        << ',' << r.c2 << ',';
    for (std::size_t i = 0; i < r.d.size(); ++i) out << (i ? ";" : "") << r.d[i];
    out << ',' << r.c1_lower << ',' << r.c2_lower << ',' << (r.verified ? "true" : "false") << ','
        << Json(r.total_cost).dump();
    return out.str();
}

VerifyRecord cmd_verify(RunSpec spec) {
    spec.trace = true;
    VerifyRecord v;
    v.run = cmd_run(spec);
    const RunRecord again = cmd_run(spec);
    v.replay_identical = v.run.trace == again.trace && v.run.output == again.output &&
                         v.run.d == again.d;
    std::size_t rounds = 0;
    std::size_t last = 0;
    std::istringstream lines(v.run.trace.value_or(""));
    std::string line;
    while (std::getline(lines, line)) {
        const std::size_t round = Json::parse(line)["round"].get<std::size_t>();
        if (round != last) {
            ++rounds;
            last = round;
        }
    }
    v.trace_rounds_match = rounds == v.run.c1;
    v.ok = v.run.verified && v.replay_identical && v.trace_rounds_match && v.run.c2 >= v.run.c1;
    return v;
}

Json to_json(const VerifyRecord& v) {
    Json j = to_json(v.run);
    j["replay_identical"] = v.replay_identical;
    j["trace_rounds_match"] = v.trace_rounds_match;
    j["ok"] = v.ok;
    return j;
}

Json cmd_bounds(std::size_t k, std::size_t p, std::optional<std::uint32_t> q) {
    std::optional<PrimeField> field;
    if (q) field.emplace(*q);
    const auto r = bounds::bound_report(k, p, field ? &*field : nullptr);
    Json j;
    j["k"] = k;
    j["p"] = p;
    if (q) j["q"] = *q;
    j["c1_lower"] = r.c1_lower;
    j["c2_lower"] = r.c2_lower;
    j["c2_lower_real"] = r.c2_lower_real;
    auto pair = [](const bounds::CostPair& c) {
        Json out;
        out["c1"] = c.c1;
        out["c2"] = c.c2;
        return out;
    };
    Json pred;
    pred["universal"] = pair(r.universal);
    if (r.dft) pred["dft"] = pair(*r.dft);
    if (r.vandermonde) pred["vandermonde"] = pair(*r.vandermonde);
    j["predictions"] = pred;
    return j;
}

std::uint32_t auto_prime(const std::string& algo, std::size_t k) {
    if (algo == "universal") {
        std::uint64_t q = std::max<std::uint64_t>(k + 1, 3);
        while (!is_prime(q)) ++q;
        return static_cast<std::uint32_t>(q);
    }
    for (std::uint64_t q = k + 1;; q += k) {
        if (q > 2 && is_prime(q)) return static_cast<std::uint32_t>(q);
    }
}

std::string cmd_sweep(const SweepSpec& spec) {
    struct Job {
        std::size_t k, p;
    };
    std::vector<Job> jobs;
    for (std::size_t p : spec.ps)
        for (std::size_t k : spec.ks) jobs.push_back({k, p});
    std::vector<std::string> rows(jobs.size());

    auto work = [&](std::size_t idx) {
        const Job job = jobs[idx];
        const std::uint32_t q = spec.q ? spec.q : auto_prime(spec.algo, job.k);
        std::ostringstream row;
        row << job.k << ',' << job.p << ',' << q << ',';
        try {
            RunSpec rs;
            rs.algo = spec.algo;
            rs.k = job.k;
            rs.p = job.p;
            rs.q = q;
            rs.matrix_seed = spec.seed;
            rs.input_seed = spec.seed + 1;
            const RunRecord r = cmd_run(rs);
            const double ratio = r.c2_lower ? static_cast<double>(r.c2) / r.c2_lower : 0.0;
            row << r.c1 << ',' << r.c2 << ',' << r.c1_lower << ',' << r.c2_lower << ','
                << fixed(ratio, 6) << ',' << (r.verified ? "ok" : "failed");
        } catch (const Error& e) {
            row << ",,,,,skipped:" << to_string(e.code());
        }
        rows[idx] = row.str();
    };

    const std::size_t threads = std::max<std::size_t>(1, std::min(spec.jobs, jobs.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t + 1 < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < jobs.size(); i = next++) work(i);
        });
    }
    for (std::size_t i = next++; i < jobs.size(); i = next++) work(i);
    for (auto& th : pool) th.join();

    std::string out = "k,p,q,c1,c2,c1_lower,c2_lower,ratio,status\n";
    for (const auto& r : rows) out += r + '\n';
    return out;
}

OrchestrateRecord cmd_orchestrate(const OrchestrateSpec& spec) {
    const PrimeField field(spec.q);
    if (spec.k == 0 || spec.n % spec.k != 0) {
        throw Error(Errc::BadPartition, "K=" + std::to_string(spec.k) + " does not divide N=" +
                                            std::to_string(spec.n));
    }
    const SystemConfig config(spec.n, spec.p, field, spec.beta, spec.tau);
    const MatrixFq G = load_matrix(spec.matrix, field, spec.k, spec.n, spec.matrix_seed);
    const auto x = load_input(spec.input, field, spec.k, spec.input_seed);
    OrchestrateRecord rec{spec, run_orchestrate(config, G, x), mat_vec_mul(x, G), false};
    rec.verified = rec.result.outputs == rec.expected;
    return rec;
}

Json to_json(const OrchestrateRecord& r) {
    Json j;
    j["algo"] = "orchestrate";
    j["n"] = r.spec.n;
    j["k"] = r.spec.k;
    j["p"] = r.spec.p;
    j["q"] = r.spec.q;
    j["c1"] = r.result.report.c1;
    j["c2"] = r.result.report.c2;
    j["d"] = r.result.report.d;
    j["c1_expected"] = bounds::c1_lower_universal(r.spec.n / r.spec.k, r.spec.p) +
                       bounds::c1_lower_universal(r.spec.k, r.spec.p);
    j["verified"] = r.verified;
    j["total_cost"] = total_cost(r.result.report, r.spec.beta, r.spec.tau);
    j["output"] = residues(r.result.outputs);
    return j;
}

} // namespace a2a::cli
