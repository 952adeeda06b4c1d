#pragma once

#include "a2a/gf.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace a2a {

/// Dense row-major matrix over a prime field.
class MatrixFq {
public:
    MatrixFq(const PrimeField& field, std::size_t rows, std::size_t cols);

    static MatrixFq identity(const PrimeField& field, std::size_t n);
    /// Builds from residues given row-major; each is reduced mod q.
    static MatrixFq from_values(const PrimeField& field, std::size_t rows, std::size_t cols,
                                std::span<const std::uint64_t> values);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    const Fe& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    Fe& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

    std::span<const Fe> row(std::size_t i) const {
        return {entries_.data() + i * cols_, cols_};
    }

    MatrixFq operator*(const MatrixFq& rhs) const;
    MatrixFq transpose() const;
    /// Copy of the column block [first, first + count).
    MatrixFq columns(std::size_t first, std::size_t count) const;

    bool is_identity() const;

    friend bool operator==(const MatrixFq&, const MatrixFq&) = default;

private:
    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Fe> entries_;
};

/// Row vector times matrix, x * A. The reference oracle for every protocol.
std::vector<Fe> mat_vec_mul(std::span<const Fe> x, const MatrixFq& A);

/// Gauss-Jordan inverse; pivots on the first nonzero entry of each column.
MatrixFq invert(const MatrixFq& A);

/// Entry (i, j) = points[j]^i.
MatrixFq vandermonde(const PrimeField& field, std::span<const Fe> points);

/// Entry (i, j) = beta^(i*j) with beta = root_of_unity(field, K).
MatrixFq dft_matrix(const PrimeField& field, std::size_t K);

/// Entry (i, j) = Phi_i(alpha_j) where Phi_i is the Lagrange basis
/// polynomial on omega. Evaluated from the product formula.
MatrixFq lagrange_matrix(const PrimeField& field, std::span<const Fe> omega,
                         std::span<const Fe> alpha);

/// Reverses the H base-`base` digits of k.
std::size_t digit_reverse(std::size_t k, std::size_t H, std::size_t base);

/// Base-`base` digits of k, least significant first, padded to `count`.
std::vector<std::size_t> digits_of(std::size_t k, std::size_t count, std::size_t base);

/// SplitMix64 stream with uniform reduction mod q by rejection sampling.
class FieldSampler {
public:
    FieldSampler(const PrimeField& field, std::uint64_t seed);

    std::uint64_t next_u64();
    Fe next();

private:
    std::uint32_t q_;
    std::uint64_t state_;
};

MatrixFq random_matrix(const PrimeField& field, std::size_t rows, std::size_t cols,
                       std::uint64_t seed);
std::vector<Fe> random_vector(const PrimeField& field, std::size_t n, std::uint64_t seed);

/// Text format: "q rows cols\n" followed by one line per row of
/// space-separated residues.
void write_matrix(std::ostream& out, const MatrixFq& A);
MatrixFq read_matrix(std::istream& in);

} // namespace a2a
