#include "a2a/compose.hpp"

#include "a2a/error.hpp"

#include <algorithm>
#include <string>

namespace a2a {

namespace {

class SequentialNode : public Node {
public:
    SequentialNode(const std::vector<std::shared_ptr<const Protocol>>& stages, ProcId k, Fe input)
        : stages_(stages), k_(k), node_(stages_.front()->spawn(k, input)) {}

    std::vector<Message> emit(std::size_t round) override {
        advance(round);
        return node_->emit(round - offset_);
    }

    void absorb(std::size_t round, std::span<const Message> inbound) override {
        node_->absorb(round - offset_, inbound);
    }

    Fe finish() override {
        while (stage_ + 1 < stages_.size()) next_stage();
        return node_->finish();
    }

private:
    // Moves to the stage that owns global round `round`.
    void advance(std::size_t round) {
        while (round > offset_ + stages_[stage_]->rounds() && stage_ + 1 < stages_.size()) {
            next_stage();
        }
    }

    void next_stage() {
        const Fe value = node_->finish();
        offset_ += stages_[stage_]->rounds();
        ++stage_;
        node_ = stages_[stage_]->spawn(k_, value);
    }

    const std::vector<std::shared_ptr<const Protocol>>& stages_;
    ProcId k_;
    std::size_t stage_ = 0;
    std::size_t offset_ = 0;
    std::unique_ptr<Node> node_;
};

class GroupedNode : public Node {
public:
    GroupedNode(const std::vector<ProcId>& members, std::size_t inner_rounds,
                std::unique_ptr<Node> inner, ProcId physical)
        : members_(members), inner_rounds_(inner_rounds), inner_(std::move(inner)),
          physical_(physical) {}

    std::vector<Message> emit(std::size_t round) override {
        if (round > inner_rounds_) return {};
        std::vector<Message> out = inner_->emit(round);
        for (Message& m : out) {
            if (m.receiver >= members_.size()) {
                throw Error(Errc::BadMessage, "group member addresses local id " +
                                                  std::to_string(m.receiver) + " outside its group");
            }
            m.sender = physical_;
            m.receiver = members_[m.receiver];
        }
        return out;
    }

    void absorb(std::size_t round, std::span<const Message> inbound) override {
        if (round > inner_rounds_) {
            if (!inbound.empty()) {
                throw Error(Errc::BadMessage, "message delivered to an idle group member");
            }
            return;
        }
        std::vector<Message> local(inbound.begin(), inbound.end());
        for (Message& m : local) {
            m.sender = local_id(m.sender);
            m.receiver = local_id(m.receiver);
        }
        inner_->absorb(round, local);
    }

    Fe finish() override { return inner_->finish(); }

private:
    ProcId local_id(ProcId physical) const {
        auto it = std::find(members_.begin(), members_.end(), physical);
        if (it == members_.end()) {
            throw Error(Errc::BadMessage, "cross-group message from processor " +
                                              std::to_string(physical));
        }
        return static_cast<ProcId>(it - members_.begin());
    }

    const std::vector<ProcId>& members_;
    std::size_t inner_rounds_;
    std::unique_ptr<Node> inner_;
    ProcId physical_;
};

class LocalMapNode : public Node {
public:
    LocalMapNode(const LocalMapProtocol::Map& map, ProcId k, Fe input)
        : map_(map), k_(k), input_(input) {}

    std::vector<Message> emit(std::size_t) override { return {}; }
    void absorb(std::size_t, std::span<const Message>) override {}
    Fe finish() override { return map_(k_, input_); }

private:
    const LocalMapProtocol::Map& map_;
    ProcId k_;
    Fe input_;
};

} // namespace

SequentialProtocol::SequentialProtocol(std::vector<std::shared_ptr<const Protocol>> stages)
    : stages_(std::move(stages)) {
    if (stages_.empty()) throw Error(Errc::BadConfig, "sequential protocol without stages");
    for (const auto& s : stages_) {
        if (s->processors() != stages_.front()->processors()) {
            throw Error(Errc::DimensionError, "stages disagree on the number of processors");
        }
    }
}

std::size_t SequentialProtocol::processors() const { return stages_.front()->processors(); }

std::size_t SequentialProtocol::rounds() const {
    std::size_t total = 0;
    for (const auto& s : stages_) total += s->rounds();
    return total;
}

std::unique_ptr<Node> SequentialProtocol::spawn(ProcId k, Fe input) const {
    return std::make_unique<SequentialNode>(stages_, k, input);
}

GroupedProtocol::GroupedProtocol(std::size_t processors, std::vector<Group> groups)
    : processors_(processors), groups_(std::move(groups)),
      where_(processors, {groups_.size(), 0}) {
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        const Group& group = groups_[g];
        if (group.protocol->processors() != group.members.size()) {
            throw Error(Errc::DimensionError, "group " + std::to_string(g) + " has " +
                                                  std::to_string(group.members.size()) +
                                                  " members for a protocol on " +
                                                  std::to_string(group.protocol->processors()));
        }
        rounds_ = std::max(rounds_, group.protocol->rounds());
        for (std::size_t i = 0; i < group.members.size(); ++i) {
            const ProcId k = group.members[i];
            if (k >= processors_ || where_[k].first != groups_.size()) {
                throw Error(Errc::BadPartition, "processor " + std::to_string(k) +
                                                    " is outside the system or in two groups");
            }
            where_[k] = {g, i};
        }
    }
    for (ProcId k = 0; k < processors_; ++k) {
        if (where_[k].first == groups_.size()) {
            throw Error(Errc::BadPartition, "processor " + std::to_string(k) + " is in no group");
        }
    }
}

std::unique_ptr<Node> GroupedProtocol::spawn(ProcId k, Fe input) const {
    const auto [g, local] = where_.at(k);
    const Group& group = groups_[g];
    return std::make_unique<GroupedNode>(group.members, group.protocol->rounds(),
                                         group.protocol->spawn(local, input), k);
}

LocalMapProtocol::LocalMapProtocol(std::size_t processors, Map map)
    : processors_(processors), map_(std::move(map)) {}

std::unique_ptr<Node> LocalMapProtocol::spawn(ProcId k, Fe input) const {
    return std::make_unique<LocalMapNode>(map_, k, input);
}

} // namespace a2a
