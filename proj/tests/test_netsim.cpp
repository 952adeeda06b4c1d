#include "a2a/error.hpp"
#include "a2a/netsim.hpp"

#include <json.hpp>

#include <doctest.h>

#include <functional>
#include <sstream>

using namespace a2a;

namespace {

// Scripted protocol: processor k emits script(k, round); the output is the
// sum of the input and every received element.
using Script = std::function<std::vector<Message>(ProcId, std::size_t)>;

class ScriptNode : public Node {
public:
    ScriptNode(ProcId k, Fe x, const Script& s) : k_(k), acc_(x), script_(s) {}
    std::vector<Message> emit(std::size_t round) override { return script_(k_, round); }
    void absorb(std::size_t, std::span<const Message> inbound) override {
        for (const auto& m : inbound)
            for (const auto& e : m.payload) acc_ += e;
    }
    Fe finish() override { return acc_; }

private:
    ProcId k_;
    Fe acc_;
    const Script& script_;
};

class ScriptProtocol : public Protocol {
public:
    ScriptProtocol(std::size_t K, std::size_t rounds, Script s)
        : K_(K), rounds_(rounds), script_(std::move(s)) {}
    std::size_t processors() const override { return K_; }
    std::size_t rounds() const override { return rounds_; }
    std::unique_ptr<Node> spawn(ProcId k, Fe x) const override {
        return std::make_unique<ScriptNode>(k, x, script_);
    }

private:
    std::size_t K_, rounds_;
    Script script_;
};

Message msg(ProcId from, ProcId to, std::size_t port, std::vector<Fe> payload) {
    Message m;
    m.sender = from;
    m.receiver = to;
    m.port = port;
    m.payload = std::move(payload);
    return m;
}

const PrimeField F13(13);

std::vector<Fe> ones(std::size_t n) { return std::vector<Fe>(n, F13.one()); }

template <class F>
Errc code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no exception");
    return Errc::BadConfig;
}

Errc run_code(std::size_t K, std::size_t p, std::size_t rounds, Script s) {
    const ScriptProtocol proto(K, rounds, std::move(s));
    return code_of([&] { (void)run(SystemConfig(K, p, F13), proto, ones(K)); });
}

} // namespace

TEST_CASE("config validation") {
    CHECK(code_of([] { SystemConfig(4, 4, F13).validate(); }) == Errc::BadConfig);
    CHECK(code_of([] { SystemConfig(4, 0, F13).validate(); }) == Errc::BadConfig);
    CHECK(code_of([] { SystemConfig(0, 1, F13).validate(); }) == Errc::BadConfig);
    SystemConfig(1, 5, F13).validate();
    SystemConfig(4, 3, F13).validate();
}

TEST_CASE("p + 1 sends in a round overflow the ports") {
    const auto e = run_code(4, 2, 1, [](ProcId k, std::size_t) {
        std::vector<Message> out;
        if (k == 0)
            for (std::size_t r = 1; r <= 3; ++r) out.push_back(msg(0, r, r, ones(1)));
        return out;
    });
    CHECK(e == Errc::PortOverflow);
}

TEST_CASE("port index outside 1..p overflows") {
    CHECK(run_code(4, 2, 1, [](ProcId k, std::size_t) {
              return k == 0 ? std::vector{msg(0, 1, 3, ones(1))} : std::vector<Message>{};
          }) == Errc::PortOverflow);
    CHECK(run_code(4, 2, 1, [](ProcId k, std::size_t) {
              return k == 0 ? std::vector{msg(0, 1, 0, ones(1))} : std::vector<Message>{};
          }) == Errc::PortOverflow);
}

TEST_CASE("a port used twice in one round is reuse") {
    CHECK(run_code(4, 2, 1, [](ProcId k, std::size_t) {
              return k == 0 ? std::vector{msg(0, 1, 1, ones(1)), msg(0, 2, 1, ones(1))}
                            : std::vector<Message>{};
          }) == Errc::PortReuse);
}

TEST_CASE("more than p receptions overflow") {
    CHECK(run_code(4, 1, 1, [](ProcId k, std::size_t) {
              return k != 0 ? std::vector{msg(k, 0, 1, ones(1))} : std::vector<Message>{};
          }) == Errc::PortOverflow);
}

TEST_CASE("malformed messages") {
    CHECK(run_code(3, 1, 1, [](ProcId k, std::size_t) {
              return k == 0 ? std::vector{msg(0, 0, 1, ones(1))} : std::vector<Message>{};
          }) == Errc::BadMessage);
    CHECK(run_code(3, 1, 1, [](ProcId k, std::size_t) {
              return k == 0 ? std::vector{msg(0, 3, 1, ones(1))} : std::vector<Message>{};
          }) == Errc::BadMessage);
    CHECK(run_code(3, 1, 1, [](ProcId k, std::size_t) {
              return k == 0 ? std::vector{msg(0, 1, 1, {})} : std::vector<Message>{};
          }) == Errc::BadMessage);
    CHECK(run_code(3, 1, 1, [](ProcId k, std::size_t) {
              return k == 0 ? std::vector{msg(1, 2, 1, ones(1))} : std::vector<Message>{};
          }) == Errc::BadMessage);
    CHECK(run_code(3, 1, 1, [](ProcId k, std::size_t) {
              return k == 0 ? std::vector{msg(0, 1, 1, {Fe(1, 5)})} : std::vector<Message>{};
          }) == Errc::BadMessage);
}

TEST_CASE("schedules longer than the round limit do not terminate") {
    const ScriptProtocol proto(2, 50, [](ProcId, std::size_t) { return std::vector<Message>{}; });
    const SystemConfig cfg(2, 1, F13);
    CHECK(code_of([&] { (void)run(cfg, proto, ones(2)); }) == Errc::NonTermination);
    RunOptions opts;
    opts.round_limit = 50;
    CHECK(run(cfg, proto, ones(2), opts).report.c1 == 0);
    CHECK(default_round_limit(2) == 12);
    CHECK(default_round_limit(1024) == 48);
}

TEST_CASE("costs count only rounds with traffic and the largest payload") {
    // Round 1 silent, round 2 payloads 1 and 3, round 3 payload 2.
    const ScriptProtocol proto(4, 3, [](ProcId k, std::size_t t) {
        std::vector<Message> out;
        if (t == 2 && k == 0) out.push_back(msg(0, 1, 1, ones(1)));
        if (t == 2 && k == 2) out.push_back(msg(2, 3, 1, ones(3)));
        if (t == 3 && k == 3) out.push_back(msg(3, 0, 1, ones(2)));
        return out;
    });
    RunOptions opts;
    opts.trace = true;
    const auto r = run(SystemConfig(4, 1, F13), proto, ones(4), opts);
    CHECK(r.report.c1 == 2);
    CHECK(r.report.c2 == 5);
    CHECK(r.report.d == std::vector<std::size_t>{3, 2});
    CHECK(r.outputs == std::vector<Fe>{Fe(3, 13), Fe(2, 13), Fe(1, 13), Fe(4, 13)});
    CHECK(total_cost(r.report, 10, 1) == doctest::Approx(25));
    CHECK(r.report.c2 >= r.report.c1);

    // JSONL trace, one line per message with the fixed key order.
    std::istringstream lines(dump_trace(r.report));
    std::string line;
    std::vector<std::string> all;
    while (std::getline(lines, line)) all.push_back(line);
    REQUIRE(all.size() == 3);
    CHECK(all[0] == R"({"round":2,"from":0,"to":1,"port":1,"len":1,"payload":[1]})");
    const auto j = nlohmann::json::parse(all[2]);
    CHECK(j["round"] == 3);
    CHECK(j["len"] == 2);
}

TEST_CASE("total cost formula") {
    CostReport c;
    c.c1 = 2;
    c.c2 = 3;
    CHECK(total_cost(c, 10, 1) == doctest::Approx(23));
    CHECK(code_of([&] { (void)dump_trace(c); }) == Errc::NoTrace);
}

TEST_CASE("lenient mode records every violation and keeps going") {
    const ScriptProtocol proto(4, 2, [](ProcId k, std::size_t t) {
        std::vector<Message> out;
        if (k == 0 && t == 1) {
            out.push_back(msg(0, 1, 1, ones(1)));
            out.push_back(msg(0, 2, 1, ones(1)));
        }
        if (k == 1 && t == 2) out.push_back(msg(1, 1, 1, ones(1)));
        return out;
    });
    RunOptions opts;
    opts.strict = false;
    const auto r = run(SystemConfig(4, 1, F13), proto, ones(4), opts);
    CHECK(r.report.violations.size() >= 2);
}

TEST_CASE("inbound messages arrive sorted by sender") {
    std::vector<ProcId> seen;
    class Recorder : public Node {
    public:
        Recorder(ProcId k, std::vector<ProcId>& seen) : k_(k), seen_(seen) {}
        std::vector<Message> emit(std::size_t) override {
            if (k_ == 0) return {};
            return {msg(k_, 0, 1, {Fe(1, 13)})};
        }
        void absorb(std::size_t, std::span<const Message> in) override {
            for (const auto& m : in) seen_.push_back(m.sender);
        }
        Fe finish() override { return Fe(0, 13); }

    private:
        ProcId k_;
        std::vector<ProcId>& seen_;
    };
    class Fan : public Protocol {
    public:
        explicit Fan(std::vector<ProcId>& s) : seen_(s) {}
        std::size_t processors() const override { return 4; }
        std::size_t rounds() const override { return 1; }
        std::unique_ptr<Node> spawn(ProcId k, Fe) const override {
            return std::make_unique<Recorder>(k, seen_);
        }

    private:
        std::vector<ProcId>& seen_;
    };
    Fan fan(seen);
    (void)run(SystemConfig(4, 3, F13), fan, ones(4));
    CHECK(seen == std::vector<ProcId>{1, 2, 3});
}
