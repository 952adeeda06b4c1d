#pragma once

#include "a2a/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>

namespace a2a::bounds {

enum class Algorithm { Universal, Dft, Vandermonde };

struct CostPair {
    std::size_t c1 = 0;
    std::size_t c2 = 0;

    friend bool operator==(const CostPair&, const CostPair&) = default;
};

struct BoundReport {
    std::size_t K = 0;
    std::size_t p = 0;
    std::size_t c1_lower = 0;
    double c2_lower_real = 0.0;
    std::size_t c2_lower = 0;
    CostPair universal;
    /// Present when a field is supplied and the algorithm's preconditions hold.
    std::optional<CostPair> dft;
    std::optional<CostPair> vandermonde;
};

/// ceil(log_{p+1} K) as the smallest T with (p+1)^T >= K.
std::size_t c1_lower_universal(std::size_t K, std::size_t p);

struct C2Bound {
    double real = 0.0;
    std::size_t ceiling = 0;
};

/// Larger root of p^2 T^2 - p(p-2) T + 2(1-K) = 0; the ceiling is the
/// smallest nonnegative integer T at which the quadratic is >= 0, found with
/// integer arithmetic.
C2Bound c2_lower_universal(std::size_t K, std::size_t p);

/// Universal: the prepare and shoot phase sums. DFT: (H, H). Vandermonde:
/// (ceil(log_{p+1} M) + H, H + psi(M)). Specific algorithms need the field and
/// throw the protocol module's errors on invalid combinations.
CostPair predict_costs(std::size_t K, std::size_t p, Algorithm algorithm,
                       const PrimeField* field = nullptr);

/// ceil(log_{p+1} K) if some row of A has no zero entry, else 0.
std::size_t specific_c1_lower(const MatrixFq& A, std::size_t K, std::size_t p);

BoundReport bound_report(std::size_t K, std::size_t p, const PrimeField* field = nullptr);

} // namespace a2a::bounds
