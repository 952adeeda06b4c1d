#pragma once

#include "a2a/linalg.hpp"
#include "a2a/netsim.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <vector>

/// Prepare-and-shoot: a universal all-to-all encode whose schedule depends
/// only on (K, p). The prepare phase is K parallel one-to-m broadcasts; the
/// shoot phase is K parallel n-to-one reductions of partial inner products.
namespace a2a::ps {

struct PSParams {
    std::size_t K = 0;
    /// Ports actually used, min(p, K-1).
    std::size_t ports = 0;
    std::size_t L = 0;
    std::size_t Tp = 0;
    std::size_t Ts = 0;
    std::size_t m = 0;
    std::size_t n = 0;

    std::size_t base() const { return ports + 1; }
    std::size_t rounds() const { return Tp + Ts; }
    /// Whether (n-1)m < K holds, i.e. the arc covers every residue at most
    /// twice with the whole prepare window usable.
    bool tight() const { return (n - 1) * m < K; }
    /// Accumulated offsets from a destination are restricted to [0, window).
    std::size_t window() const { return std::min(n * m, K + m); }
    /// Number of residues counted twice, |O_k|.
    std::size_t overlap() const { return window() - K; }
    std::size_t prepare_c2() const;
    std::size_t shoot_c2() const;
    std::size_t c2() const { return prepare_c2() + shoot_c2(); }
};

/// L is the largest integer with (p+1)^L < K; L even gives T_p = L/2+1,
/// T_s = L/2, L odd gives T_p = T_s = (L+1)/2. Ports are clamped to K-1.
/// Throws Degenerate for K < 2 and BadConfig for p = 0.
PSParams ps_params(std::size_t K, std::size_t p);

/// Packets held after the prepare rounds so far: slot o holds x_{k-o}.
struct PrepareStore {
    std::vector<std::optional<Fe>> by_offset;

    std::size_t held() const;
};

PrepareStore prepare_init(Fe x_k, const PSParams& params);

/// Round t (1..T_p): forward every held packet to k + rho * m/(p+1)^t on
/// port rho. Payloads are ordered by ascending offset.
std::vector<Message> prepare_round(ProcId k, std::size_t t, const PrepareStore& store,
                                   const PSParams& params);

void prepare_absorb(PrepareStore& store, std::size_t t, std::span<const Message> inbound,
                    const PSParams& params);

/// Accumulators w_{k, k + slot*m} for slot in [0, n).
struct ShootStore {
    ProcId k = 0;
    std::vector<Fe> w;

    ProcId destination(std::size_t slot, const PSParams& params) const {
        return (k + slot * params.m) % params.K;
    }
};

/// w[slot] = sum over j in [0, m) with slot*m + j < window of
/// x_{k-j} * A[k-j][k + slot*m]. Throws IncompletePrepare if a packet in
/// R_k^- is missing.
ShootStore shoot_init(ProcId k, const MatrixFq& A, const PrepareStore& received,
                      const PSParams& params);

/// Round t (1..T_s): on port rho send the slots whose digit t-1 is rho and
/// whose lower digits are zero to k + rho * m * (p+1)^(t-1). A destination
/// equal to k is reduced locally.
std::vector<Message> shoot_round(ProcId k, std::size_t t, ShootStore& store,
                                 const PSParams& params);

void shoot_absorb(ShootStore& store, std::size_t t, std::span<const Message> inbound,
                  const PSParams& params);

/// O_k = { k - j : j in [0, overlap) }, the residues counted twice in y_k.
std::vector<ProcId> overlap_set(ProcId k, const PSParams& params);

/// x^_k = y_k - sum_{r in O_k} A[r][k] * x_r using locally held packets.
Fe overlap_correct(ProcId k, Fe y_k, const PrepareStore& local, const MatrixFq& A,
                   const PSParams& params);

class PrepareAndShoot : public Protocol {
public:
    /// K is A.rows(). K = 1 runs zero rounds.
    PrepareAndShoot(std::shared_ptr<const MatrixFq> A, std::size_t p);

    std::size_t processors() const override { return K_; }
    std::size_t rounds() const override { return params_ ? params_->rounds() : 0; }
    std::unique_ptr<Node> spawn(ProcId k, Fe input) const override;

    const std::optional<PSParams>& params() const { return params_; }

private:
    std::shared_ptr<const MatrixFq> A_;
    std::size_t K_;
    std::optional<PSParams> params_;
};

/// Computes x * A on config.K processors. Throws DimensionError if A is not
/// K x K over config.field.
RunResult run_universal(const SystemConfig& config, const MatrixFq& A, std::span<const Fe> x,
                        const RunOptions& options = {});

} // namespace a2a::ps
