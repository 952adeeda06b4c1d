#include "a2a/orchestrate.hpp"

#include "a2a/compose.hpp"
#include "a2a/error.hpp"
#include "a2a/universal.hpp"

#include <optional>
#include <string>

namespace a2a {

namespace {

class BroadcastNode : public Node {
public:
    BroadcastNode(std::size_t processors, std::size_t ports, ProcId k, Fe input)
        : processors_(processors), ports_(ports), k_(k) {
        if (k == 0) value_ = input;
    }

    std::vector<Message> emit(std::size_t round) override {
        std::size_t reach = 1;
        for (std::size_t i = 1; i < round; ++i) reach *= ports_ + 1;
        std::vector<Message> out;
        if (!value_ || k_ >= reach) return out;
        for (std::size_t rho = 1; rho <= ports_; ++rho) {
            const ProcId to = k_ + rho * reach;
            if (to >= processors_) break;
            out.push_back(Message{k_, to, rho, round, {*value_}});
        }
        return out;
    }

    void absorb(std::size_t round, std::span<const Message> inbound) override {
        for (const Message& m : inbound) {
            if (value_ || m.payload.size() != 1) {
                throw Error(Errc::BadMessage, "unexpected broadcast message in round " +
                                                  std::to_string(round));
            }
            value_ = m.payload[0];
        }
    }

    Fe finish() override {
        if (!value_) {
            throw Error(Errc::IncompletePrepare, "broadcast did not reach processor " +
                                                     std::to_string(k_));
        }
        return *value_;
    }

private:
    std::size_t processors_;
    std::size_t ports_;
    ProcId k_;
    std::optional<Fe> value_;
};

} // namespace

BroadcastTree::BroadcastTree(std::size_t processors, std::size_t p)
    : processors_(processors), ports_(processors > 1 ? std::min(p, processors - 1) : p) {
    std::size_t reach = 1;
    while (reach < processors_) {
        reach *= ports_ + 1;
        ++rounds_;
    }
}

std::unique_ptr<Node> BroadcastTree::spawn(ProcId k, Fe input) const {
    return std::make_unique<BroadcastNode>(processors_, ports_, k, input);
}

std::shared_ptr<const Protocol> orchestration_protocol(const MatrixFq& G, std::size_t p) {
    const std::size_t K = G.rows();
    const std::size_t N = G.cols();
    if (K == 0 || N % K != 0) {
        throw Error(Errc::BadPartition, "K=" + std::to_string(K) + " does not divide N=" +
                                            std::to_string(N));
    }
    const std::size_t blocks = N / K;

    std::vector<GroupedProtocol::Group> spread;
    auto tree = std::make_shared<const BroadcastTree>(blocks, p);
    for (std::size_t i = 0; i < K; ++i) {
        GroupedProtocol::Group g{{}, tree};
        for (std::size_t l = 0; l < blocks; ++l) g.members.push_back(l * K + i);
        spread.push_back(std::move(g));
    }

    std::vector<GroupedProtocol::Group> encode;
    for (std::size_t l = 0; l < blocks; ++l) {
        auto block = std::make_shared<const MatrixFq>(G.columns(l * K, K));
        GroupedProtocol::Group g{{}, std::make_shared<const ps::PrepareAndShoot>(block, p)};
        for (std::size_t i = 0; i < K; ++i) g.members.push_back(l * K + i);
        encode.push_back(std::move(g));
    }

    return std::make_shared<const SequentialProtocol>(std::vector<std::shared_ptr<const Protocol>>{
        std::make_shared<const GroupedProtocol>(N, std::move(spread)),
        std::make_shared<const GroupedProtocol>(N, std::move(encode))});
}

RunResult run_orchestrate(const SystemConfig& config, const MatrixFq& G, std::span<const Fe> x,
                          const RunOptions& options) {
    if (G.cols() != config.K || !(G.field() == config.field)) {
        throw Error(Errc::DimensionError, "generator must be K x N with N=" +
                                              std::to_string(config.K));
    }
    if (x.size() != G.rows()) {
        throw Error(Errc::DimensionError, std::to_string(x.size()) + " inputs for K=" +
                                              std::to_string(G.rows()));
    }
    const auto protocol = orchestration_protocol(G, config.p);
    std::vector<Fe> inputs(config.K, config.field.zero());
    std::copy(x.begin(), x.end(), inputs.begin());
    return run(config, *protocol, inputs, options);
}

} // namespace a2a
