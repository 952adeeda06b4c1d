#include "a2a/dft.hpp"

#include "a2a/error.hpp"

#include <string>

namespace a2a::butterfly {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

} // namespace

DftParams dft_params(const PrimeField& field, std::size_t K, std::size_t p, bool allow_trivial) {
    if (p == 0) throw Error(Errc::BadConfig, "p must be at least 1");
    DftParams params;
    params.K = K;
    params.base = p + 1;
    std::size_t power = 1;
    while (power < K) {
        power *= params.base;
        ++params.H;
    }
    if (power != K || (params.H == 0 && !allow_trivial)) {
        throw Error(Errc::NotAPower, std::to_string(K) + " is not a positive power of " +
                                         std::to_string(params.base));
    }
    params.beta = root_of_unity(field, K);
    return params;
}

DftParams dft_params(const SystemConfig& config) {
    return dft_params(config.field, config.K, config.p);
}

Fe gamma(std::span<const std::size_t> digits, const DftParams& params) {
    const std::size_t h = digits.size();
    if (h > params.H) {
        throw Error(Errc::BadDigit, std::to_string(h) + " digits for a tree of height " +
                                        std::to_string(params.H));
    }
    std::size_t exponent = 0;
    for (std::size_t d : digits) {
        if (d >= params.base) {
            throw Error(Errc::BadDigit, "digit " + std::to_string(d) + " in base " +
                                            std::to_string(params.base));
        }
        exponent = exponent * params.base + d;
    }
    return params.beta.pow(exponent).pow(ipow(params.base, params.H - h));
}

MatrixFq butterfly_matrix(std::size_t k, std::size_t t, const DftParams& params,
                          const PrimeField& field) {
    const std::size_t b = params.base;
    const auto kd = digits_of(k, params.H, b);
    // Node digits rho k_{t-1} ... k_0, most significant first.
    std::vector<std::size_t> node(t + 1);
    for (std::size_t i = 0; i < t; ++i) node[1 + i] = kd[t - 1 - i];
    MatrixFq B(field, b, b);
    for (std::size_t rho = 0; rho < b; ++rho) {
        node[0] = rho;
        const Fe g = gamma(node, params);
        Fe acc = field.one();
        for (std::size_t e = 0; e < b; ++e) {
            B(rho, e) = acc;
            acc *= g;
        }
    }
    return B;
}

MatrixFq reversed_dft_matrix(const DftParams& params, const PrimeField& field) {
    MatrixFq A(field, params.K, params.K);
    for (std::size_t i = 0; i < params.K; ++i) {
        const Fe root = params.beta.pow(digit_reverse(i, params.H, params.base));
        for (std::size_t j = 0; j < params.K; ++j) A(i, j) = root.pow(j);
    }
    return A;
}

std::vector<std::size_t> reversal_permutation(const DftParams& params) {
    std::vector<std::size_t> perm(params.K);
    for (std::size_t i = 0; i < params.K; ++i) perm[i] = digit_reverse(i, params.H, params.base);
    return perm;
}

namespace {

class ButterflyNode : public Node {
public:
    ButterflyNode(const Butterfly& protocol, Direction direction, ProcId k, Fe x)
        : protocol_(protocol), direction_(direction), k_(k), q_(x) {}

    std::vector<Message> emit(std::size_t round) override {
        const auto& params = protocol_.params();
        const std::size_t t = digit(round);
        const std::size_t unit = ipow(params.base, t);
        const std::size_t mine = (k_ / unit) % params.base;
        std::vector<Message> out;
        std::size_t port = 1;
        for (std::size_t rho = 0; rho < params.base; ++rho) {
            if (rho == mine) continue;
            const ProcId peer = k_ + rho * unit - mine * unit;
            out.push_back(Message{k_, peer, port++, round, {q_}});
        }
        return out;
    }

    void absorb(std::size_t round, std::span<const Message> inbound) override {
        const auto& params = protocol_.params();
        const std::size_t t = digit(round);
        const std::size_t unit = ipow(params.base, t);
        const std::size_t mine = (k_ / unit) % params.base;
        if (inbound.size() + 1 != params.base) {
            throw Error(Errc::BadMessage, "butterfly group of processor " + std::to_string(k_) +
                                              " incomplete in round " + std::to_string(round));
        }
        const auto& row = protocol_.coefficients(k_, t);
        Fe next = row[mine] * q_;
        for (const Message& m : inbound) {
            const std::size_t rho = (m.sender / unit) % params.base;
            if (m.payload.size() != 1 || m.sender - rho * unit != k_ - mine * unit) {
                throw Error(Errc::BadMessage, "processor " + std::to_string(m.sender) +
                                                  " is not in the butterfly group of " +
                                                  std::to_string(k_));
            }
            next += row[rho] * m.payload[0];
        }
        q_ = next;
    }

    Fe finish() override { return q_; }

private:
    std::size_t digit(std::size_t round) const {
        const std::size_t H = protocol_.params().H;
        return direction_ == Direction::Forward ? round - 1 : H - round;
    }

    const Butterfly& protocol_;
    Direction direction_;
    ProcId k_;
    Fe q_;
};

} // namespace

Butterfly::Butterfly(const PrimeField& field, const DftParams& params, Direction direction)
    : field_(field), params_(params), direction_(direction) {
    const std::size_t b = params_.base;
    coeffs_.resize(params_.H);
    for (std::size_t t = 0; t < params_.H; ++t) {
        coeffs_[t].resize(params_.K);
        // The matrix depends only on the lower t digits of k.
        const std::size_t unit = ipow(b, t);
        std::vector<MatrixFq> by_suffix;
        by_suffix.reserve(unit);
        for (std::size_t suffix = 0; suffix < unit; ++suffix) {
            MatrixFq B = butterfly_matrix(suffix, t, params_, field_);
            by_suffix.push_back(direction_ == Direction::Forward ? B : invert(B));
        }
        for (std::size_t k = 0; k < params_.K; ++k) {
            const MatrixFq& B = by_suffix[k % unit];
            const auto row = B.row((k / unit) % b);
            coeffs_[t][k].assign(row.begin(), row.end());
        }
    }
}

const std::vector<Fe>& Butterfly::coefficients(std::size_t k, std::size_t t) const {
    return coeffs_.at(t).at(k);
}

std::unique_ptr<Node> Butterfly::spawn(ProcId k, Fe input) const {
    return std::make_unique<ButterflyNode>(*this, direction_, k, input);
}

DftResult run_dft(const SystemConfig& config, std::span<const Fe> x, Direction direction,
                  const RunOptions& options) {
    const DftParams params = dft_params(config);
    const Butterfly protocol(config.field, params, direction);
    RunResult r = run(config, protocol, x, options);
    return DftResult{std::move(r.outputs), std::move(r.report), reversal_permutation(params)};
}

} // namespace a2a::butterfly
