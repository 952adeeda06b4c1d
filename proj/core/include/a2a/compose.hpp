#pragma once

#include "a2a/netsim.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace a2a {

/// Runs stages back to back. Each processor's output of one stage is its
/// input to the next; the schedule is the concatenation of the stages'.
class SequentialProtocol : public Protocol {
public:
    explicit SequentialProtocol(std::vector<std::shared_ptr<const Protocol>> stages);

    std::size_t processors() const override;
    std::size_t rounds() const override;
    std::unique_ptr<Node> spawn(ProcId k, Fe input) const override;

private:
    std::vector<std::shared_ptr<const Protocol>> stages_;
};

/// Partitions the processors into disjoint groups running independent
/// protocols in parallel. Group g's member list maps the inner protocol's
/// local ids to physical ids. Groups with a shorter schedule idle.
class GroupedProtocol : public Protocol {
public:
    struct Group {
        std::vector<ProcId> members;
        std::shared_ptr<const Protocol> protocol;
    };

    GroupedProtocol(std::size_t processors, std::vector<Group> groups);

    std::size_t processors() const override { return processors_; }
    std::size_t rounds() const override { return rounds_; }
    std::unique_ptr<Node> spawn(ProcId k, Fe input) const override;

private:
    std::size_t processors_;
    std::size_t rounds_ = 0;
    std::vector<Group> groups_;
    // physical id -> (group, local id)
    std::vector<std::pair<std::size_t, ProcId>> where_;
};

/// Zero-round stage applying a per-processor local map.
class LocalMapProtocol : public Protocol {
public:
    using Map = std::function<Fe(ProcId, Fe)>;

    LocalMapProtocol(std::size_t processors, Map map);

    std::size_t processors() const override { return processors_; }
    std::size_t rounds() const override { return 0; }
    std::unique_ptr<Node> spawn(ProcId k, Fe input) const override;

private:
    std::size_t processors_;
    Map map_;
};

} // namespace a2a
