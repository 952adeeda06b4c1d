#pragma once

#include "a2a/linalg.hpp"
#include "a2a/netsim.hpp"

#include <memory>
#include <vector>

/// Draw-and-loose DFT primitive: a (p+1)-ary butterfly network on
/// K = (p+1)^H processors. Every round each processor exchanges one element
/// with the p processors that differ from it in a single base-(p+1) digit.
///
/// Processor k starts with Q(k,0) = x_k and ends with
///   Q(k,H) = sum_i x_i * beta^(rev(i) * k),
/// i.e. the protocol computes A_rev with A_rev[i][j] = beta^(rev(i) j), the
/// DFT matrix with its rows permuted by base-(p+1) digit reversal.
namespace a2a::butterfly {

enum class Direction { Forward, Inverse };

struct DftParams {
    std::size_t K = 0;
    std::size_t H = 0;
    std::size_t base = 0;
    /// Primitive K-th root of unity.
    Fe beta;
};

/// Throws NotAPower unless K = (p+1)^H with H >= 1, NoSuchRoot unless K | q-1.
DftParams dft_params(const SystemConfig& config);
/// Same checks for an explicit (K, p) over `field`; H = 0 is allowed when
/// allow_trivial is set (used by the loose phase when Z = 1).
DftParams dft_params(const PrimeField& field, std::size_t K, std::size_t p,
                     bool allow_trivial = false);

/// gamma of the node whose digits are given most significant first:
/// (beta^(sum_i k_i (p+1)^i))^((p+1)^(H-h)) for h = digits.size().
/// Throws BadDigit for digits > p or more than H digits.
Fe gamma(std::span<const std::size_t> digits_msb_first, const DftParams& params);

/// (p+1)x(p+1) matrix for the group of processor k in round t+1 (0-based t):
/// entry (rho, e) = gamma(rho k_{t-1} ... k_0)^e.
MatrixFq butterfly_matrix(std::size_t k, std::size_t t, const DftParams& params,
                          const PrimeField& field);

/// A_rev[i][j] = beta^(rev_H(i) * j).
MatrixFq reversed_dft_matrix(const DftParams& params, const PrimeField& field);

/// Digit-reversal permutation on [0, K): entry i is rev_H(i).
std::vector<std::size_t> reversal_permutation(const DftParams& params);

class Butterfly : public Protocol {
public:
    Butterfly(const PrimeField& field, const DftParams& params, Direction direction);

    std::size_t processors() const override { return params_.K; }
    std::size_t rounds() const override { return params_.H; }
    std::unique_ptr<Node> spawn(ProcId k, Fe input) const override;

    const DftParams& params() const { return params_; }

    /// Combination row for processor k at digit position t: forward uses
    /// row k_t of the butterfly matrix, inverse uses row k_t of its inverse.
    /// Entry rho multiplies Q of the group member with digit t equal to rho.
    const std::vector<Fe>& coefficients(std::size_t k, std::size_t t) const;

private:
    PrimeField field_;
    DftParams params_;
    Direction direction_;
    // coeffs_[t][k]
    std::vector<std::vector<std::vector<Fe>>> coeffs_;
};

struct DftResult {
    std::vector<Fe> outputs;
    CostReport report;
    /// Row permutation relating the computed matrix to the plain DFT matrix:
    /// A_rev = P * D_K with P sending row i to rev(i).
    std::vector<std::size_t> permutation;
};

DftResult run_dft(const SystemConfig& config, std::span<const Fe> x, Direction direction,
                  const RunOptions& options = {});

} // namespace a2a::butterfly
