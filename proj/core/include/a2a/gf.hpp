#pragma once

#include <cstdint>
#include <vector>

namespace a2a {

class PrimeField;

/// Element of a prime field F_q, stored as its canonical residue.
///
/// An element carries its modulus so that mixing elements of different
/// fields is caught at the operation site. A default-constructed Fe has
/// modulus 0 and is only a placeholder; any arithmetic on it throws.
class Fe {
public:
    Fe() = default;
    /// Reduces `value` modulo `q`.
    Fe(std::uint64_t value, std::uint32_t q);

    std::uint32_t value() const noexcept { return value_; }
    std::uint32_t modulus() const noexcept { return q_; }
    bool is_zero() const noexcept { return value_ == 0; }

    Fe& operator+=(const Fe& rhs);
    Fe& operator-=(const Fe& rhs);
    Fe& operator*=(const Fe& rhs);

    friend Fe operator+(Fe lhs, const Fe& rhs) { return lhs += rhs; }
    friend Fe operator-(Fe lhs, const Fe& rhs) { return lhs -= rhs; }
    friend Fe operator*(Fe lhs, const Fe& rhs) { return lhs *= rhs; }
    Fe operator-() const;

    /// Multiplicative inverse; throws DivisionByZero for 0.
    Fe inv() const;
    /// Square-and-multiply; pow(0, 0) is 1.
    Fe pow(std::uint64_t e) const;

    friend bool operator==(const Fe&, const Fe&) = default;

private:
    std::uint32_t value_ = 0;
    std::uint32_t q_ = 0;
};

/// Prime field F_q with 2 < q < 2^31 together with its smallest generator.
///
/// Immutable after construction. Two fields compare equal iff their moduli
/// match; the generator and factorization are derived from q.
class PrimeField {
public:
    /// Validates primality of q and finds the smallest generator.
    /// Throws NotPrime if q is not an odd prime below 2^31.
    explicit PrimeField(std::uint32_t q);

    std::uint32_t modulus() const noexcept { return q_; }
    Fe generator() const noexcept { return Fe(g_, q_); }
    /// Prime factors of q-1 with multiplicity, ascending.
    const std::vector<std::uint32_t>& factors() const noexcept { return factors_; }

    Fe element(std::uint64_t v) const { return Fe(v, q_); }
    Fe zero() const { return Fe(0, q_); }
    Fe one() const { return Fe(1, q_); }

    friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept {
        return a.q_ == b.q_;
    }

private:
    std::uint32_t q_;
    std::uint32_t g_;
    std::vector<std::uint32_t> factors_;
};

bool is_prime(std::uint64_t n);

/// Prime factors of n with multiplicity, ascending (trial division).
std::vector<std::uint32_t> factorize(std::uint32_t n);

/// Builds the field for q; the generator is the smallest residue >= 2 of
/// order q-1.
PrimeField find_generator(std::uint32_t q);

/// Multiplicative order check via the prime-factor criterion.
bool is_generator(const Fe& g, const std::vector<std::uint32_t>& factors_of_q_minus_1);

/// beta = g^((q-1)/K), a primitive K-th root of unity. Throws NoSuchRoot if
/// K does not divide q-1.
Fe root_of_unity(const PrimeField& field, std::uint64_t K);

} // namespace a2a
