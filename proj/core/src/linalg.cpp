#include "a2a/linalg.hpp"

#include "a2a/error.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace a2a {

namespace {

std::string dims(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

void require_distinct(std::span<const Fe> points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i] == points[j]) {
                throw Error(Errc::DuplicatePoints,
                            "points " + std::to_string(i) + " and " + std::to_string(j) +
                                " are both " + std::to_string(points[i].value()));
            }
        }
    }
}

} // namespace

MatrixFq::MatrixFq(const PrimeField& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, field.zero()) {}

MatrixFq MatrixFq::identity(const PrimeField& field, std::size_t n) {
    MatrixFq I(field, n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = field.one();
    return I;
}

MatrixFq MatrixFq::from_values(const PrimeField& field, std::size_t rows, std::size_t cols,
                               std::span<const std::uint64_t> values) {
    if (values.size() != rows * cols) {
        throw Error(Errc::DimensionError, std::to_string(values.size()) +
                                              " values for a " + dims(rows, cols) + " matrix");
    }
    MatrixFq A(field, rows, cols);
    for (std::size_t i = 0; i < values.size(); ++i) A.entries_[i] = field.element(values[i]);
    return A;
}

MatrixFq MatrixFq::operator*(const MatrixFq& rhs) const {
    if (cols_ != rhs.rows_ || !(field_ == rhs.field_)) {
        throw Error(Errc::DimensionError, dims(rows_, cols_) + " times " + dims(rhs.rows_, rhs.cols_));
    }
    MatrixFq out(field_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Fe a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

MatrixFq MatrixFq::transpose() const {
    MatrixFq out(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

MatrixFq MatrixFq::columns(std::size_t first, std::size_t count) const {
    if (first + count > cols_) {
        throw Error(Errc::DimensionError, "column block out of range");
    }
    MatrixFq out(field_, rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
    return out;
}

bool MatrixFq::is_identity() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j).value() != (i == j ? 1U : 0U)) return false;
    return true;
}

std::vector<Fe> mat_vec_mul(std::span<const Fe> x, const MatrixFq& A) {
    if (x.size() != A.rows()) {
        throw Error(Errc::DimensionError, "vector of length " + std::to_string(x.size()) +
                                              " times " + dims(A.rows(), A.cols()));
    }
    std::vector<Fe> out(A.cols(), A.field().zero());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        if (x[i].is_zero()) continue;
        const auto row = A.row(i);
        for (std::size_t j = 0; j < A.cols(); ++j) out[j] += x[i] * row[j];
    }
    return out;
}

MatrixFq invert(const MatrixFq& A) {
    if (!A.square()) throw Error(Errc::DimensionError, "cannot invert " + dims(A.rows(), A.cols()));
    const std::size_t n = A.rows();
    MatrixFq work = A;
    MatrixFq inv = MatrixFq::identity(A.field(), n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && work(pivot, col).is_zero()) ++pivot;
        if (pivot == n) {
            throw Error(Errc::SingularMatrix, "no pivot in column " + std::to_string(col));
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(work(pivot, j), work(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        const Fe scale = work(col, col).inv();
        for (std::size_t j = 0; j < n; ++j) {
            work(col, j) *= scale;
            inv(col, j) *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || work(r, col).is_zero()) continue;
            const Fe f = work(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                work(r, j) -= f * work(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

MatrixFq vandermonde(const PrimeField& field, std::span<const Fe> points) {
    require_distinct(points);
    const std::size_t K = points.size();
    MatrixFq V(field, K, K);
    for (std::size_t j = 0; j < K; ++j) {
        Fe acc = field.one();
        for (std::size_t i = 0; i < K; ++i) {
            V(i, j) = acc;
            acc *= points[j];
        }
    }
    return V;
}

MatrixFq dft_matrix(const PrimeField& field, std::size_t K) {
    const Fe beta = root_of_unity(field, K);
    MatrixFq D(field, K, K);
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = 0; j < K; ++j) D(i, j) = beta.pow(std::uint64_t{i} * j);
    return D;
}

MatrixFq lagrange_matrix(const PrimeField& field, std::span<const Fe> omega,
                         std::span<const Fe> alpha) {
    if (omega.size() != alpha.size()) {
        throw Error(Errc::DimensionError, std::to_string(omega.size()) + " omega points vs " +
                                              std::to_string(alpha.size()) + " alpha points");
    }
    require_distinct(omega);
    const std::size_t K = omega.size();
    // Denominators prod_{m != i} (omega_i - omega_m), inverted once per row.
    std::vector<Fe> denom_inv(K, field.one());
    for (std::size_t i = 0; i < K; ++i) {
        Fe d = field.one();
        for (std::size_t m = 0; m < K; ++m)
            if (m != i) d *= omega[i] - omega[m];
        denom_inv[i] = d.inv();
    }
    MatrixFq A(field, K, K);
    for (std::size_t j = 0; j < K; ++j) {
        for (std::size_t i = 0; i < K; ++i) {
            Fe num = field.one();
            for (std::size_t m = 0; m < K; ++m)
                if (m != i) num *= alpha[j] - omega[m];
            A(i, j) = num * denom_inv[i];
        }
    }
    return A;
}

std::vector<std::size_t> digits_of(std::size_t k, std::size_t count, std::size_t base) {
    std::vector<std::size_t> out(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = k % base;
        k /= base;
    }
    return out;
}

std::size_t digit_reverse(std::size_t k, std::size_t H, std::size_t base) {
    std::size_t limit = 1;
    for (std::size_t i = 0; i < H; ++i) limit *= base;
    if (k >= limit) {
        throw Error(Errc::OutOfRange, std::to_string(k) + " has more than " + std::to_string(H) +
                                          " base-" + std::to_string(base) + " digits");
    }
    std::size_t out = 0;
    for (std::size_t i = 0; i < H; ++i) {
        out = out * base + k % base;
        k /= base;
    }
    return out;
}

FieldSampler::FieldSampler(const PrimeField& field, std::uint64_t seed)
    : q_(field.modulus()), state_(seed) {}

std::uint64_t FieldSampler::next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Fe FieldSampler::next() {
    // Largest multiple of q representable in 64 bits bounds the accept region.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % q_;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return Fe(v % q_, q_);
}

MatrixFq random_matrix(const PrimeField& field, std::size_t rows, std::size_t cols,
                       std::uint64_t seed) {
    FieldSampler rng(field, seed);
    MatrixFq A(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) A(i, j) = rng.next();
    return A;
}

std::vector<Fe> random_vector(const PrimeField& field, std::size_t n, std::uint64_t seed) {
    FieldSampler rng(field, seed);
    std::vector<Fe> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(rng.next());
    return out;
}

void write_matrix(std::ostream& out, const MatrixFq& A) {
    out << A.field().modulus() << ' ' << A.rows() << ' ' << A.cols() << '\n';
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) {
            if (j) out << ' ';
            out << A(i, j).value();
        }
        out << '\n';
    }
}

MatrixFq read_matrix(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(Errc::ParseError, "missing matrix header");
    std::istringstream header(line);
    std::uint64_t q = 0, rows = 0, cols = 0;
    if (!(header >> q >> rows >> cols) || q >= (1ULL << 31)) {
        throw Error(Errc::ParseError, "bad matrix header '" + line + "'");
    }
    PrimeField field(static_cast<std::uint32_t>(q));
    MatrixFq A(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!std::getline(in, line)) {
            throw Error(Errc::ParseError, "expected " + std::to_string(rows) + " rows, got " +
                                              std::to_string(i));
        }
        std::istringstream row(line);
        for (std::size_t j = 0; j < cols; ++j) {
            std::uint64_t v = 0;
            if (!(row >> v)) throw Error(Errc::ParseError, "row " + std::to_string(i) + " too short");
            if (v >= q) {
                throw Error(Errc::ParseError, "entry " + std::to_string(v) + " is not a residue mod " +
                                                  std::to_string(q));
            }
            A(i, j) = field.element(v);
        }
        std::string extra;
        if (row >> extra) throw Error(Errc::ParseError, "row " + std::to_string(i) + " too long");
    }
    return A;
}

} // namespace a2a
