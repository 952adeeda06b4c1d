#include "a2a/vandermonde.hpp"

#include "a2a/compose.hpp"
#include "a2a/error.hpp"
#include "a2a/universal.hpp"

#include <numeric>
#include <string>

namespace a2a::draw_loose {

std::vector<Fe> VdmParams::points() const {
    std::vector<Fe> out;
    out.reserve(K);
    for (std::size_t k = 0; k < K; ++k) out.push_back(point(k));
    return out;
}

VdmParams vdm_params(const SystemConfig& config, std::vector<std::size_t> phi) {
    config.validate();
    const std::size_t q1 = config.field.modulus() - 1;
    if (config.K > q1) {
        throw Error(Errc::TooManyProcessors, "K=" + std::to_string(config.K) + " exceeds q-1=" +
                                                 std::to_string(q1));
    }
    VdmParams params{.field = config.field, .K = config.K, .p = config.p};
    const std::size_t g = std::gcd(config.K, q1);
    const std::size_t b = config.p + 1;
    while (g % (params.Z * b) == 0) {
        params.Z *= b;
        ++params.H;
    }
    params.M = config.K / params.Z;

    if (phi.empty()) {
        phi.resize(params.M);
        std::iota(phi.begin(), phi.end(), std::size_t{0});
    }
    const std::size_t range = q1 / params.Z;
    if (phi.size() != params.M) {
        throw Error(Errc::BadPhi, "phi has " + std::to_string(phi.size()) + " entries, M=" +
                                      std::to_string(params.M));
    }
    std::vector<bool> seen(range, false);
    for (std::size_t v : phi) {
        if (v >= range || seen[v]) {
            throw Error(Errc::BadPhi, "phi value " + std::to_string(v) +
                                          " repeated or outside [0, " + std::to_string(range) + ")");
        }
        seen[v] = true;
    }
    params.phi = std::move(phi);

    const Fe gen = config.field.generator();
    for (std::size_t v : params.phi) params.alphas.push_back(gen.pow(v));
    const Fe beta1 = root_of_unity(config.field, params.Z);
    for (std::size_t c = 0; c < params.Z; ++c) params.betas.push_back(beta1.pow(c));
    params.exponent.resize(params.K);
    for (std::size_t k = 0; k < params.K; ++k) {
        params.exponent[k] = digit_reverse(k % params.Z, params.H, b) + params.Z * (k / params.Z);
    }
    return params;
}

MatrixFq target_matrix(const VdmParams& params) {
    MatrixFq A(params.field, params.K, params.K);
    for (std::size_t k = 0; k < params.K; ++k) {
        const Fe pt = params.point(k);
        for (std::size_t row = 0; row < params.K; ++row) A(row, k) = pt.pow(params.exponent[row]);
    }
    return A;
}

MatrixFq draw_matrix(const VdmParams& params) {
    MatrixFq V(params.field, params.M, params.M);
    for (std::size_t i = 0; i < params.M; ++i) {
        const Fe node = params.alphas[i].pow(params.Z);
        for (std::size_t w = 0; w < params.M; ++w) V(w, i) = node.pow(w);
    }
    return V;
}

std::size_t psi(std::size_t M, std::size_t p) {
    if (M <= 1) return 0;
    return ps::ps_params(M, p).c2();
}

namespace {

// Column scale alpha_i^rev(c) for processor k = c + Z i.
Fe draw_scale(const VdmParams& params, std::size_t k) {
    const std::size_t c = k % params.Z;
    return params.alphas[k / params.Z].pow(digit_reverse(c, params.H, params.p + 1));
}

std::shared_ptr<const Protocol> column_encode(const VdmParams& params, const MatrixFq& V) {
    auto shared = std::make_shared<const MatrixFq>(V);
    auto inner = std::make_shared<const ps::PrepareAndShoot>(shared, params.p);
    std::vector<GroupedProtocol::Group> groups;
    for (std::size_t c = 0; c < params.Z; ++c) {
        GroupedProtocol::Group g{{}, inner};
        for (std::size_t i = 0; i < params.M; ++i) g.members.push_back(c + params.Z * i);
        groups.push_back(std::move(g));
    }
    return std::make_shared<const GroupedProtocol>(params.K, std::move(groups));
}

std::shared_ptr<const Protocol> scale_stage(const VdmParams& params, bool inverse) {
    std::vector<Fe> scale;
    for (std::size_t k = 0; k < params.K; ++k) {
        const Fe s = draw_scale(params, k);
        scale.push_back(inverse ? s.inv() : s);
    }
    return std::make_shared<const LocalMapProtocol>(
        params.K, [scale = std::move(scale)](ProcId k, Fe v) { return scale[k] * v; });
}

} // namespace

std::shared_ptr<const Protocol> draw_phase(const VdmParams& params, Direction direction) {
    if (direction == Direction::Forward) {
        return std::make_shared<const SequentialProtocol>(
            std::vector<std::shared_ptr<const Protocol>>{column_encode(params, draw_matrix(params)),
                                                         scale_stage(params, false)});
    }
    return std::make_shared<const SequentialProtocol>(std::vector<std::shared_ptr<const Protocol>>{
        scale_stage(params, true), column_encode(params, invert(draw_matrix(params)))});
}

std::shared_ptr<const Protocol> loose_phase(const VdmParams& params, Direction direction) {
    if (params.H == 0) {
        return std::make_shared<const LocalMapProtocol>(params.K, [](ProcId, Fe v) { return v; });
    }
    const auto dft = butterfly::dft_params(params.field, params.Z, params.p);
    auto inner = std::make_shared<const butterfly::Butterfly>(params.field, dft, direction);
    std::vector<GroupedProtocol::Group> groups;
    for (std::size_t i = 0; i < params.M; ++i) {
        GroupedProtocol::Group g{{}, inner};
        for (std::size_t c = 0; c < params.Z; ++c) g.members.push_back(c + params.Z * i);
        groups.push_back(std::move(g));
    }
    return std::make_shared<const GroupedProtocol>(params.K, std::move(groups));
}

std::shared_ptr<const Protocol> vandermonde_protocol(const VdmParams& params, Direction direction) {
    std::vector<std::shared_ptr<const Protocol>> stages;
    if (direction == Direction::Forward) {
        stages = {draw_phase(params, direction), loose_phase(params, direction)};
    } else {
        stages = {loose_phase(params, direction), draw_phase(params, direction)};
    }
    return std::make_shared<const SequentialProtocol>(std::move(stages));
}

namespace {

VdmResult finish(RunResult r, const VdmParams& params) {
    return VdmResult{std::move(r.outputs), std::move(r.report), params.exponent};
}

void require_matching(const SystemConfig& config, const VdmParams& params) {
    if (config.K != params.K || config.p != params.p || !(config.field == params.field)) {
        throw Error(Errc::DimensionError, "parameters were built for a different system");
    }
}

} // namespace

VdmResult run_draw_phase(const SystemConfig& config, const VdmParams& params,
                         std::span<const Fe> x, const RunOptions& options) {
    require_matching(config, params);
    return finish(run(config, *draw_phase(params, Direction::Forward), x, options), params);
}

VdmResult run_loose_phase(const SystemConfig& config, const VdmParams& params,
                          std::span<const Fe> f_values, const RunOptions& options) {
    require_matching(config, params);
    return finish(run(config, *loose_phase(params, Direction::Forward), f_values, options), params);
}

VdmResult run_vandermonde(const SystemConfig& config, const VdmParams& params,
                          std::span<const Fe> x, Direction direction, const RunOptions& options) {
    require_matching(config, params);
    return finish(run(config, *vandermonde_protocol(params, direction), x, options), params);
}

VdmResult run_lagrange(const SystemConfig& config, std::vector<std::size_t> phi_omega,
                       std::vector<std::size_t> phi_alpha, std::span<const Fe> x,
                       const RunOptions& options) {
    const VdmParams omega = vdm_params(config, std::move(phi_omega));
    const VdmParams alpha = vdm_params(config, std::move(phi_alpha));
    const SequentialProtocol protocol({vandermonde_protocol(omega, Direction::Inverse),
                                       vandermonde_protocol(alpha, Direction::Forward)});
    RunResult r = run(config, protocol, x, options);
    // The exponent permutation cancels between the two stages.
    std::vector<std::size_t> identity(config.K);
    std::iota(identity.begin(), identity.end(), std::size_t{0});
    return VdmResult{std::move(r.outputs), std::move(r.report), std::move(identity)};
}

} // namespace a2a::draw_loose
