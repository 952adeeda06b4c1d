#include "a2a/gf.hpp"

#include "a2a/error.hpp"

#include <string>

namespace a2a {

namespace {

void require_same(const Fe& a, const Fe& b) {
    if (a.modulus() != b.modulus() || a.modulus() == 0) {
        throw Error(Errc::FieldMismatch, "operands in F_" + std::to_string(a.modulus()) +
                                             " and F_" + std::to_string(b.modulus()));
    }
}

} // namespace

Fe::Fe(std::uint64_t value, std::uint32_t q)
    : value_(q == 0 ? 0 : static_cast<std::uint32_t>(value % q)), q_(q) {}

Fe& Fe::operator+=(const Fe& rhs) {
    require_same(*this, rhs);
    std::uint64_t s = std::uint64_t{value_} + rhs.value_;
    value_ = static_cast<std::uint32_t>(s >= q_ ? s - q_ : s);
    return *this;
}

Fe& Fe::operator-=(const Fe& rhs) {
    require_same(*this, rhs);
    value_ = value_ >= rhs.value_ ? value_ - rhs.value_ : value_ + (q_ - rhs.value_);
    return *this;
}

Fe& Fe::operator*=(const Fe& rhs) {
    require_same(*this, rhs);
    value_ = static_cast<std::uint32_t>((std::uint64_t{value_} * rhs.value_) % q_);
    return *this;
}

Fe Fe::operator-() const {
    if (q_ == 0) throw Error(Errc::FieldMismatch, "negation of an unset element");
    return Fe(value_ == 0 ? 0 : q_ - value_, q_);
}

Fe Fe::pow(std::uint64_t e) const {
    if (q_ == 0) throw Error(Errc::FieldMismatch, "power of an unset element");
    std::uint64_t base = value_;
    std::uint64_t acc = 1 % q_;
    while (e > 0) {
        if (e & 1U) acc = acc * base % q_;
        base = base * base % q_;
        e >>= 1U;
    }
    return Fe(acc, q_);
}

Fe Fe::inv() const {
    if (q_ == 0) throw Error(Errc::FieldMismatch, "inverse of an unset element");
    if (value_ == 0) throw Error(Errc::DivisionByZero, "inverse of 0 in F_" + std::to_string(q_));
    // Extended Euclid on (value, q).
    std::int64_t r0 = q_, r1 = value_, t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t quot = r0 / r1;
        std::int64_t tmp = r0 - quot * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - quot * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (t0 < 0) t0 += q_;
    return Fe(static_cast<std::uint64_t>(t0), q_);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::vector<std::uint32_t> factorize(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t d = 2; std::uint64_t{d} * d <= n; ++d) {
        while (n % d == 0) {
            out.push_back(d);
            n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_generator(const Fe& g, const std::vector<std::uint32_t>& factors) {
    const std::uint32_t q = g.modulus();
    if (g.is_zero()) return false;
    std::uint32_t last = 0;
    for (std::uint32_t r : factors) {
        if (r == last) continue;
        last = r;
        if (g.pow((q - 1) / r).value() == 1) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q), g_(0) {
    if (q <= 2 || q >= (1U << 31) || !is_prime(q)) {
        throw Error(Errc::NotPrime, std::to_string(q) + " is not an odd prime below 2^31");
    }
    factors_ = factorize(q - 1);
    for (std::uint32_t c = 2; c < q; ++c) {
        if (is_generator(Fe(c, q), factors_)) {
            g_ = c;
            break;
        }
    }
}

PrimeField find_generator(std::uint32_t q) { return PrimeField(q); }

Fe root_of_unity(const PrimeField& field, std::uint64_t K) {
    const std::uint32_t q = field.modulus();
    if (K == 0 || (q - 1) % K != 0) {
        throw Error(Errc::NoSuchRoot,
                    std::to_string(K) + " does not divide q-1 = " + std::to_string(q - 1));
    }
    return field.generator().pow((q - 1) / K);
}

} // namespace a2a
