#pragma once

#include "a2a/gf.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace a2a {

using ProcId = std::size_t;

/// The synchronous p-port system: K processors on a complete network, each
/// with p ports, plus the per-message startup and per-element costs.
struct SystemConfig {
    std::size_t K = 1;
    std::size_t p = 1;
    PrimeField field;
    double beta_startup = 1.0;
    double tau_per_element = 1.0;

    SystemConfig(std::size_t K, std::size_t p, const PrimeField& field,
                 double beta_startup = 1.0, double tau_per_element = 1.0);

    /// Throws BadConfig unless K >= 1 and 1 <= p < K (p is ignored for K = 1).
    void validate() const;
};

struct Message {
    ProcId sender = 0;
    ProcId receiver = 0;
    /// 1-based port index on the sender.
    std::size_t port = 1;
    std::size_t round = 0;
    std::vector<Fe> payload;

    friend bool operator==(const Message&, const Message&) = default;
};

/// Per-processor state machine. A node sees rounds numbered from 1 within
/// its protocol; it emits its outbound messages for a round, then absorbs
/// everything addressed to it in that round (sorted by sender, then port).
class Node {
public:
    virtual ~Node() = default;

    virtual std::vector<Message> emit(std::size_t round) = 0;
    virtual void absorb(std::size_t round, std::span<const Message> inbound) = 0;
    /// Local computation after the last round; returns the coded packet.
    virtual Fe finish() = 0;
};

/// A protocol couples a fixed scheduling (the number of rounds and who talks
/// to whom) with a coding scheme. It spawns one node per processor.
class Protocol {
public:
    virtual ~Protocol() = default;

    virtual std::size_t processors() const = 0;
    /// Length of the schedule in rounds, identical for every processor.
    virtual std::size_t rounds() const = 0;
    virtual std::unique_ptr<Node> spawn(ProcId k, Fe input) const = 0;
};

struct CostReport {
    std::size_t c1 = 0;
    std::size_t c2 = 0;
    /// Largest payload of each counted round.
    std::vector<std::size_t> d;
    std::optional<std::vector<Message>> trace;
    /// Filled only when the engine runs in lenient mode.
    std::vector<std::string> violations;
};

struct RunOptions {
    bool trace = false;
    /// Defaults to default_round_limit(K).
    std::optional<std::size_t> round_limit;
    /// Strict runs throw on the first model violation; lenient runs record
    /// it in CostReport::violations and keep going.
    bool strict = true;
};

struct RunResult {
    std::vector<Fe> outputs;
    CostReport report;
};

/// 4 * ceil(log2 K) + 8.
std::size_t default_round_limit(std::size_t K);

/// Lock-step executor: each round collects every node's emits, validates them
/// against the p-port model, then delivers. Rounds with no cross-processor
/// message are not counted.
RunResult run(const SystemConfig& config, const Protocol& protocol, std::span<const Fe> inputs,
              const RunOptions& options = {});

/// C1 * beta + C2 * tau.
double total_cost(const CostReport& report, double beta, double tau);

/// JSON lines, one message per line with keys round, from, to, port, len,
/// payload. Throws NoTrace if the run was not traced.
std::string dump_trace(const CostReport& report);

} // namespace a2a
