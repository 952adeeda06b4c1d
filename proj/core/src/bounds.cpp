#include "a2a/bounds.hpp"

#include "a2a/dft.hpp"
#include "a2a/error.hpp"
#include "a2a/universal.hpp"
#include "a2a/vandermonde.hpp"

#include <cmath>
#include <string>

namespace a2a::bounds {

std::size_t c1_lower_universal(std::size_t K, std::size_t p) {
    std::size_t t = 0;
    std::size_t reach = 1;
    while (reach < K) {
        reach *= p + 1;
        ++t;
    }
    return t;
}

C2Bound c2_lower_universal(std::size_t K, std::size_t p) {
    if (K < 2 || p == 0) throw Error(Errc::Degenerate, "bound needs K >= 2 and p >= 1");
    const double pd = static_cast<double>(p);
    const double disc = (pd - 2) * (pd - 2) + 8.0 * (static_cast<double>(K) - 1);
    C2Bound out;
    out.real = (pd - 2) / (2 * pd) + std::sqrt(disc) / (2 * pd);

    const auto f = [&](std::int64_t T) {
        const auto P = static_cast<std::int64_t>(p);
        return P * P * T * T - P * (P - 2) * T + 2 * (1 - static_cast<std::int64_t>(K));
    };
    std::int64_t T = 0;
    while (f(T) < 0) ++T;
    out.ceiling = static_cast<std::size_t>(T);
    return out;
}

CostPair predict_costs(std::size_t K, std::size_t p, Algorithm algorithm, const PrimeField* field) {
    switch (algorithm) {
    case Algorithm::Universal: {
        if (K < 2) return {0, 0};
        const auto params = ps::ps_params(K, p);
        return {params.rounds(), params.c2()};
    }
    case Algorithm::Dft: {
        if (!field) throw Error(Errc::NoSuchRoot, "DFT prediction needs a field");
        const auto params = butterfly::dft_params(*field, K, p);
        return {params.H, params.H};
    }
    case Algorithm::Vandermonde: {
        if (!field) throw Error(Errc::TooManyProcessors, "Vandermonde prediction needs a field");
        const auto params = draw_loose::vdm_params(SystemConfig(K, p, *field));
        return {c1_lower_universal(params.M, p) + params.H, params.H + draw_loose::psi(params.M, p)};
    }
    }
    return {};
}

std::size_t specific_c1_lower(const MatrixFq& A, std::size_t K, std::size_t p) {
    if (!A.square() || A.rows() != K) {
        throw Error(Errc::DimensionError, "matrix is not " + std::to_string(K) + "x" + std::to_string(K));
    }
    for (std::size_t i = 0; i < K; ++i) {
        bool full = true;
        for (const Fe& v : A.row(i)) full = full && !v.is_zero();
        if (full) return c1_lower_universal(K, p);
    }
    return 0;
}

BoundReport bound_report(std::size_t K, std::size_t p, const PrimeField* field) {
    BoundReport r;
    r.K = K;
    r.p = p;
    r.c1_lower = c1_lower_universal(K, p);
    if (K >= 2) {
        const C2Bound c2 = c2_lower_universal(K, p);
        r.c2_lower_real = c2.real;
        r.c2_lower = c2.ceiling;
    }
    r.universal = predict_costs(K, p, Algorithm::Universal);
    if (field) {
        try {
            r.dft = predict_costs(K, p, Algorithm::Dft, field);
        } catch (const Error&) {
        }
        try {
            r.vandermonde = predict_costs(K, p, Algorithm::Vandermonde, field);
        } catch (const Error&) {
        }
    }
    return r;
}

} // namespace a2a::bounds
