#include "a2a/universal.hpp"

#include "a2a/error.hpp"

#include <string>

namespace a2a::ps {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

ProcId sub_mod(ProcId k, std::size_t j, std::size_t K) { return (k + K - j % K) % K; }

} // namespace

std::size_t PSParams::prepare_c2() const { return (ipow(base(), Tp) - 1) / ports; }
std::size_t PSParams::shoot_c2() const { return (ipow(base(), Ts) - 1) / ports; }

PSParams ps_params(std::size_t K, std::size_t p) {
    if (K < 2) throw Error(Errc::Degenerate, "prepare-and-shoot needs K >= 2, got " + std::to_string(K));
    if (p == 0) throw Error(Errc::BadConfig, "p must be at least 1");
    PSParams s;
    s.K = K;
    s.ports = std::min(p, K - 1);
    const std::size_t b = s.base();
    while (ipow(b, s.L + 1) < K) ++s.L;
    if (s.L % 2 == 0) {
        s.Tp = s.L / 2 + 1;
        s.Ts = s.L / 2;
    } else {
        s.Tp = s.Ts = (s.L + 1) / 2;
    }
    s.m = ipow(b, s.Tp);
    s.n = ipow(b, s.Ts);
    if (K > s.n * s.m || s.m > K) {
        throw Error(Errc::ParamsInconsistent, "K=" + std::to_string(K) + " m=" +
                                                  std::to_string(s.m) + " n=" + std::to_string(s.n));
    }
    return s;
}

std::size_t PrepareStore::held() const {
    std::size_t c = 0;
    for (const auto& v : by_offset) c += v.has_value();
    return c;
}

PrepareStore prepare_init(Fe x_k, const PSParams& params) {
    PrepareStore store;
    store.by_offset.resize(params.m);
    store.by_offset[0] = x_k;
    return store;
}

std::vector<Message> prepare_round(ProcId k, std::size_t t, const PrepareStore& store,
                                   const PSParams& params) {
    const std::size_t stride = ipow(params.base(), params.Tp - t);
    std::vector<Fe> payload;
    for (const auto& v : store.by_offset)
        if (v) payload.push_back(*v);
    std::vector<Message> out;
    for (std::size_t rho = 1; rho <= params.ports; ++rho) {
        out.push_back(Message{k, (k + rho * stride) % params.K, rho, t, payload});
    }
    return out;
}

void prepare_absorb(PrepareStore& store, std::size_t t, std::span<const Message> inbound,
                    const PSParams& params) {
    const std::size_t stride = ipow(params.base(), params.Tp - t);
    // Every processor holds the same offset pattern, so the sender's payload
    // lines up with our own held offsets shifted by rho * stride.
    std::vector<std::size_t> held;
    for (std::size_t o = 0; o < store.by_offset.size(); ++o)
        if (store.by_offset[o]) held.push_back(o);
    for (const Message& msg : inbound) {
        const std::size_t rho = msg.port;
        if (rho == 0 || rho > params.ports || msg.payload.size() != held.size()) {
            throw Error(Errc::BadMessage, "unexpected prepare message in round " + std::to_string(t));
        }
        for (std::size_t i = 0; i < held.size(); ++i) {
            store.by_offset[held[i] + rho * stride] = msg.payload[i];
        }
    }
}

ShootStore shoot_init(ProcId k, const MatrixFq& A, const PrepareStore& received,
                      const PSParams& params) {
    if (received.by_offset.size() != params.m) {
        throw Error(Errc::IncompletePrepare, "store has " + std::to_string(received.by_offset.size()) +
                                                 " slots, expected m=" + std::to_string(params.m));
    }
    for (std::size_t j = 0; j < params.m; ++j) {
        if (!received.by_offset[j]) {
            throw Error(Errc::IncompletePrepare, "processor " + std::to_string(k) + " lacks x_" +
                                                     std::to_string(sub_mod(k, j, params.K)));
        }
    }
    ShootStore store{k, std::vector<Fe>(params.n, A.field().zero())};
    const std::size_t window = params.window();
    for (std::size_t slot = 0; slot < params.n; ++slot) {
        const ProcId dest = store.destination(slot, params);
        Fe acc = A.field().zero();
        for (std::size_t j = 0; j < params.m && slot * params.m + j < window; ++j) {
            const ProcId r = sub_mod(k, j, params.K);
            acc += *received.by_offset[j] * A(r, dest);
        }
        store.w[slot] = acc;
    }
    return store;
}

std::vector<Message> shoot_round(ProcId k, std::size_t t, ShootStore& store,
                                 const PSParams& params) {
    const std::size_t b = params.base();
    const std::size_t low = ipow(b, t - 1);
    const std::size_t high = low * b;
    const std::size_t count = ipow(b, params.Ts - t);
    std::vector<Message> out;
    for (std::size_t rho = 1; rho <= params.ports; ++rho) {
        const ProcId to = (k + rho * params.m * low) % params.K;
        if (to == k) {
            for (std::size_t l = 0; l < count; ++l) store.w[high * l] += store.w[rho * low + high * l];
            continue;
        }
        Message msg{k, to, rho, t, {}};
        msg.payload.reserve(count);
        for (std::size_t l = 0; l < count; ++l) msg.payload.push_back(store.w[rho * low + high * l]);
        out.push_back(std::move(msg));
    }
    return out;
}

void shoot_absorb(ShootStore& store, std::size_t t, std::span<const Message> inbound,
                  const PSParams& params) {
    const std::size_t high = ipow(params.base(), t);
    const std::size_t count = ipow(params.base(), params.Ts - t);
    for (const Message& msg : inbound) {
        if (msg.port == 0 || msg.port > params.ports || msg.payload.size() != count) {
            throw Error(Errc::BadMessage, "unexpected shoot message in round " + std::to_string(t));
        }
        for (std::size_t l = 0; l < count; ++l) store.w[high * l] += msg.payload[l];
    }
}

std::vector<ProcId> overlap_set(ProcId k, const PSParams& params) {
    std::vector<ProcId> out;
    for (std::size_t j = 0; j < params.overlap(); ++j) out.push_back(sub_mod(k, j, params.K));
    return out;
}

Fe overlap_correct(ProcId k, Fe y_k, const PrepareStore& local, const MatrixFq& A,
                   const PSParams& params) {
    for (std::size_t j = 0; j < params.overlap(); ++j) {
        const ProcId r = sub_mod(k, j, params.K);
        if (j >= local.by_offset.size() || !local.by_offset[j]) {
            throw Error(Errc::IncompletePrepare, "overlap term x_" + std::to_string(r) + " not local");
        }
        y_k -= A(r, k) * *local.by_offset[j];
    }
    return y_k;
}

namespace {

class PrepareAndShootNode : public Node {
public:
    PrepareAndShootNode(const MatrixFq& A, const PSParams& params, ProcId k, Fe x)
        : A_(A), params_(params), k_(k), prepare_(prepare_init(x, params)) {}

    std::vector<Message> emit(std::size_t round) override {
        if (round <= params_.Tp) return prepare_round(k_, round, prepare_, params_);
        ensure_shoot();
        return shoot_round(k_, round - params_.Tp, *shoot_, params_);
    }

    void absorb(std::size_t round, std::span<const Message> inbound) override {
        if (round <= params_.Tp) {
            prepare_absorb(prepare_, round, inbound, params_);
        } else {
            shoot_absorb(*shoot_, round - params_.Tp, inbound, params_);
        }
    }

    Fe finish() override {
        ensure_shoot();
        return overlap_correct(k_, shoot_->w[0], prepare_, A_, params_);
    }

private:
    void ensure_shoot() {
        if (!shoot_) shoot_ = shoot_init(k_, A_, prepare_, params_);
    }

    const MatrixFq& A_;
    const PSParams& params_;
    ProcId k_;
    PrepareStore prepare_;
    std::optional<ShootStore> shoot_;
};

class LocalScaleNode : public Node {
public:
    LocalScaleNode(Fe a, Fe x) : value_(a * x) {}
    std::vector<Message> emit(std::size_t) override { return {}; }
    void absorb(std::size_t, std::span<const Message>) override {}
    Fe finish() override { return value_; }

private:
    Fe value_;
};

} // namespace

PrepareAndShoot::PrepareAndShoot(std::shared_ptr<const MatrixFq> A, std::size_t p)
    : A_(std::move(A)), K_(A_->rows()) {
    if (!A_->square() || K_ == 0) {
        throw Error(Errc::DimensionError, "prepare-and-shoot needs a nonempty square matrix");
    }
    if (K_ > 1) params_ = ps_params(K_, p);
}

std::unique_ptr<Node> PrepareAndShoot::spawn(ProcId k, Fe input) const {
    if (!params_) return std::make_unique<LocalScaleNode>((*A_)(0, 0), input);
    return std::make_unique<PrepareAndShootNode>(*A_, *params_, k, input);
}

RunResult run_universal(const SystemConfig& config, const MatrixFq& A, std::span<const Fe> x,
                        const RunOptions& options) {
    if (A.rows() != config.K || A.cols() != config.K || !(A.field() == config.field)) {
        throw Error(Errc::DimensionError, "matrix does not match K=" + std::to_string(config.K) +
                                              " over F_" + std::to_string(config.field.modulus()));
    }
    const PrepareAndShoot protocol(std::make_shared<const MatrixFq>(A), config.p);
    return run(config, protocol, x, options);
}

} // namespace a2a::ps
