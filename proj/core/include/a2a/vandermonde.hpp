#pragma once

#include "a2a/dft.hpp"
#include "a2a/linalg.hpp"
#include "a2a/netsim.hpp"

#include <memory>
#include <vector>

/// Draw-and-loose for structured Vandermonde matrices and its inverse, plus
/// the Lagrange composition (inverse Vandermonde on omega, then forward
/// Vandermonde on alpha).
///
/// Processors form an M x Z grid: processor P(i, c) = c + Z*i. Its evaluation
/// point is alpha_i * beta_c with alpha_i = g^phi(i) and beta_c = g^(c(q-1)/Z).
/// The draw phase runs prepare-and-shoot down each of the Z columns; the loose
/// phase runs the butterfly DFT along each of the M rows.
namespace a2a::draw_loose {

using butterfly::Direction;

struct VdmParams {
    PrimeField field;
    std::size_t K = 0;
    std::size_t p = 0;
    /// (p+1)^H is the largest power of p+1 dividing gcd(K, q-1).
    std::size_t H = 0;
    std::size_t Z = 1;
    std::size_t M = 0;
    std::vector<std::size_t> phi{};
    std::vector<Fe> alphas{};
    std::vector<Fe> betas{};
    /// e(Z*w + c) = rev_H(c) + Z*w; an involution.
    std::vector<std::size_t> exponent{};

    /// Evaluation point of processor k.
    Fe point(std::size_t k) const { return alphas[k / Z] * betas[k % Z]; }
    std::vector<Fe> points() const;
};

/// Empty phi means the identity map. Throws TooManyProcessors if K > q-1
/// and BadPhi if phi is not an injection into [0, (q-1)/Z).
VdmParams vdm_params(const SystemConfig& config, std::vector<std::size_t> phi = {});

/// The matrix computed by the forward protocol:
/// A[k'][k] = point(k)^e(k'). Equals P_e * vandermonde(points()).
MatrixFq target_matrix(const VdmParams& params);

/// The M x M matrix each column group encodes in the draw phase:
/// entry (w, i) = alpha_i^(Z w).
MatrixFq draw_matrix(const VdmParams& params);

/// C2 of prepare-and-shoot on an M x M matrix with p ports (0 for M = 1).
std::size_t psi(std::size_t M, std::size_t p);

std::shared_ptr<const Protocol> draw_phase(const VdmParams& params, Direction direction);
std::shared_ptr<const Protocol> loose_phase(const VdmParams& params, Direction direction);
/// Forward: draw then loose. Inverse: inverse loose then inverse draw.
std::shared_ptr<const Protocol> vandermonde_protocol(const VdmParams& params, Direction direction);

struct VdmResult {
    std::vector<Fe> outputs;
    CostReport report;
    /// The exponent permutation e applied to the target's rows.
    std::vector<std::size_t> permutation;
};

/// Forward draw phase alone: processor P(i, c) ends with f_rev(c)(alpha_i).
VdmResult run_draw_phase(const SystemConfig& config, const VdmParams& params,
                         std::span<const Fe> x, const RunOptions& options = {});
/// Forward loose phase alone, fed with draw-phase outputs.
VdmResult run_loose_phase(const SystemConfig& config, const VdmParams& params,
                          std::span<const Fe> f_values, const RunOptions& options = {});

VdmResult run_vandermonde(const SystemConfig& config, const VdmParams& params,
                          std::span<const Fe> x, Direction direction,
                          const RunOptions& options = {});

/// x * lagrange_matrix(omega points, alpha points), both in processor order.
VdmResult run_lagrange(const SystemConfig& config, std::vector<std::size_t> phi_omega,
                       std::vector<std::size_t> phi_alpha, std::span<const Fe> x,
                       const RunOptions& options = {});

} // namespace a2a::draw_loose
