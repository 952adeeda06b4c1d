#include "a2a/netsim.hpp"

#include "a2a/error.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

namespace a2a {

SystemConfig::SystemConfig(std::size_t K_, std::size_t p_, const PrimeField& field_,
                           double beta, double tau)
    : K(K_), p(p_), field(field_), beta_startup(beta), tau_per_element(tau) {}

void SystemConfig::validate() const {
    if (K == 0) throw Error(Errc::BadConfig, "K must be at least 1");
    if (K > 1 && (p == 0 || p >= K)) {
        throw Error(Errc::BadConfig, "need 1 <= p < K, got p=" + std::to_string(p) +
                                         " K=" + std::to_string(K));
    }
}

std::size_t default_round_limit(std::size_t K) {
    std::size_t lg = 0;
    while ((std::size_t{1} << lg) < K) ++lg;
    return 4 * lg + 8;
}

namespace {

class RoundChecker {
public:
    RoundChecker(const SystemConfig& config, const RunOptions& options)
        : config_(config), options_(options) {}

    void fail(Errc code, const std::string& what, std::vector<std::string>& violations) const {
        if (options_.strict) throw Error(code, what);
        violations.push_back(std::string(to_string(code)) + ": " + what);
    }

    // Messages must already be sorted by (sender, port).
    void check(std::size_t round, std::span<const Message> msgs,
               std::vector<std::string>& violations) const {
        const std::string at = " in round " + std::to_string(round);
        std::vector<std::size_t> sends(config_.K, 0), receives(config_.K, 0);
        for (std::size_t i = 0; i < msgs.size(); ++i) {
            const Message& m = msgs[i];
            const std::string who = "processor " + std::to_string(m.sender);
            if (m.receiver >= config_.K) {
                fail(Errc::BadMessage, who + " addresses nonexistent processor " +
                                           std::to_string(m.receiver) + at, violations);
                continue;
            }
            if (m.receiver == m.sender) fail(Errc::BadMessage, who + " sends to itself" + at, violations);
            if (m.payload.empty()) fail(Errc::BadMessage, who + " sends an empty message" + at, violations);
            for (const Fe& v : m.payload) {
                if (v.modulus() != config_.field.modulus()) {
                    fail(Errc::BadMessage, who + " sends an element outside F_" +
                                               std::to_string(config_.field.modulus()) + at, violations);
                    break;
                }
            }
            if (m.port == 0 || m.port > config_.p) {
                fail(Errc::PortOverflow, who + " uses port " + std::to_string(m.port) + " of " +
                                             std::to_string(config_.p) + at, violations);
            }
            if (i > 0 && msgs[i - 1].sender == m.sender && msgs[i - 1].port == m.port) {
                fail(Errc::PortReuse, who + " sends twice on port " + std::to_string(m.port) + at,
                     violations);
            }
            ++sends[m.sender];
            ++receives[m.receiver];
        }
        for (std::size_t k = 0; k < config_.K; ++k) {
            if (sends[k] > config_.p) {
                fail(Errc::PortOverflow, "processor " + std::to_string(k) + " sends " +
                                             std::to_string(sends[k]) + " messages with p=" +
                                             std::to_string(config_.p) + at, violations);
            }
            if (receives[k] > config_.p) {
                fail(Errc::PortOverflow, "processor " + std::to_string(k) + " receives " +
                                             std::to_string(receives[k]) + " messages with p=" +
                                             std::to_string(config_.p) + at, violations);
            }
        }
    }

private:
    const SystemConfig& config_;
    const RunOptions& options_;
};

} // namespace

RunResult run(const SystemConfig& config, const Protocol& protocol, std::span<const Fe> inputs,
              const RunOptions& options) {
    config.validate();
    if (protocol.processors() != config.K || inputs.size() != config.K) {
        throw Error(Errc::DimensionError,
                    "protocol for " + std::to_string(protocol.processors()) + " processors, " +
                        std::to_string(inputs.size()) + " inputs, K=" + std::to_string(config.K));
    }
    const std::size_t limit = options.round_limit.value_or(default_round_limit(config.K));
    const RoundChecker checker(config, options);

    std::vector<std::unique_ptr<Node>> nodes;
    nodes.reserve(config.K);
    for (ProcId k = 0; k < config.K; ++k) nodes.push_back(protocol.spawn(k, inputs[k]));

    RunResult result;
    CostReport& report = result.report;
    if (options.trace) report.trace.emplace();

    const std::size_t total = protocol.rounds();
    std::vector<Message> batch;
    std::vector<std::vector<Message>> inbox(config.K);
    for (std::size_t t = 1; t <= total; ++t) {
        if (t > limit) {
            throw Error(Errc::NonTermination, "schedule of " + std::to_string(total) +
                                                  " rounds exceeds the limit of " +
                                                  std::to_string(limit));
        }
        batch.clear();
        for (ProcId k = 0; k < config.K; ++k) {
            for (Message& m : nodes[k]->emit(t)) {
                if (m.sender != k) {
                    checker.fail(Errc::BadMessage, "processor " + std::to_string(k) +
                                                       " forges sender " + std::to_string(m.sender),
                                 report.violations);
                    m.sender = k;
                }
                m.round = t;
                batch.push_back(std::move(m));
            }
        }
        std::stable_sort(batch.begin(), batch.end(), [](const Message& a, const Message& b) {
            return a.sender != b.sender ? a.sender < b.sender : a.port < b.port;
        });
        checker.check(t, batch, report.violations);

        std::size_t largest = 0;
        for (auto& box : inbox) box.clear();
        for (const Message& m : batch) {
            largest = std::max(largest, m.payload.size());
            if (m.receiver < config.K && m.receiver != m.sender) inbox[m.receiver].push_back(m);
        }
        for (ProcId k = 0; k < config.K; ++k) nodes[k]->absorb(t, inbox[k]);

        if (!batch.empty()) {
            ++report.c1;
            report.c2 += largest;
            report.d.push_back(largest);
            if (report.trace) {
                report.trace->insert(report.trace->end(), batch.begin(), batch.end());
            }
        }
    }

    result.outputs.reserve(config.K);
    for (auto& node : nodes) result.outputs.push_back(node->finish());
    return result;
}

double total_cost(const CostReport& report, double beta, double tau) {
    return static_cast<double>(report.c1) * beta + static_cast<double>(report.c2) * tau;
}

std::string dump_trace(const CostReport& report) {
    if (!report.trace) throw Error(Errc::NoTrace, "run was executed without tracing");
    std::ostringstream out;
    for (const Message& m : *report.trace) {
        nlohmann::ordered_json line;
        line["round"] = m.round;
        line["from"] = m.sender;
        line["to"] = m.receiver;
        line["port"] = m.port;
        line["len"] = m.payload.size();
        auto& payload = line["payload"] = nlohmann::ordered_json::array();
        for (const Fe& v : m.payload) payload.push_back(v.value());
        out << line.dump() << '\n';
    }
    return out.str();
}

} // namespace a2a
