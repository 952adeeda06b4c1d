#pragma once

#include "a2a/linalg.hpp"
#include "a2a/netsim.hpp"

#include <memory>

namespace a2a {

/// One-to-all broadcast along a (p+1)-ary tree rooted at local id 0. In round
/// t every holder with id < (p+1)^(t-1) forwards to id + rho*(p+1)^(t-1).
class BroadcastTree : public Protocol {
public:
    BroadcastTree(std::size_t processors, std::size_t p);

    std::size_t processors() const override { return processors_; }
    std::size_t rounds() const override { return rounds_; }
    std::unique_ptr<Node> spawn(ProcId k, Fe input) const override;

private:
    std::size_t processors_;
    std::size_t ports_;
    std::size_t rounds_ = 0;
};

/// Decentralized encoding of K packets into N coded packets with a K x N
/// generator G (K | N). Processor i < K holds x_i. First each x_i is
/// broadcast to processors {l*K + i}; then each block of K consecutive
/// processors runs prepare-and-shoot on its K x K column block of G.
/// Processor j ends with (x * G)_j. Inputs of processors >= K are ignored.
std::shared_ptr<const Protocol> orchestration_protocol(const MatrixFq& G, std::size_t p);

/// config.K is the system size N. `x` has length K = G.rows().
/// Throws BadPartition unless K divides N.
RunResult run_orchestrate(const SystemConfig& config, const MatrixFq& G, std::span<const Fe> x,
                          const RunOptions& options = {});

} // namespace a2a
