#pragma once

// Exact arithmetic in GF(p^f).
//
// Elements are stored as their coefficient vector in the polynomial basis
// {1, x, ..., x^(f-1)} of GF(p)[x]/(c(x)), packed little-endian in base p into
// a single integer code:  code = c_0 + c_1 p + ... + c_{f-1} p^(f-1).
// The defining polynomial c(x) is the Conway polynomial for (p, f), so the
// class of x is a primitive element and subfield embeddings are compatible:
// the generator of GF(p^m) maps to x^((p^f-1)/(p^m-1)) inside GF(p^f).
//
// Fields with q <= 2^16 carry log/antilog/Zech tables, and fields with
// q <= 256 additionally carry full addition and multiplication tables.
// Larger fields (up to 2^20) fall back to polynomial arithmetic.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "polarkit/error.hpp"

namespace polarkit {

class FieldElement {
public:
    constexpr FieldElement() noexcept = default;
    constexpr explicit FieldElement(std::uint32_t code) noexcept : code_(code) {}

    constexpr std::uint32_t code() const noexcept { return code_; }
    constexpr bool is_zero() const noexcept { return code_ == 0; }

    friend constexpr bool operator==(FieldElement, FieldElement) noexcept = default;
    friend constexpr auto operator<=>(FieldElement, FieldElement) noexcept = default;

private:
    std::uint32_t code_ = 0;
};

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

/// Largest field order supported.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

class FiniteField {
public:
    /// Returns the (cached, shared) field GF(p^f).  Throws InvalidArgument if p is
    /// not prime or p^f exceeds kMaxFieldOrder.
    static FieldPtr get(std::uint32_t p, std::uint32_t f);
    /// Returns GF(q); q must be a prime power.
    static FieldPtr of_order(std::uint64_t q);

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t f() const noexcept { return f_; }
    std::uint32_t q() const noexcept { return q_; }

    /// Monic defining polynomial, coefficients low to high (size f + 1).
    const std::vector<std::uint32_t>& defining_polynomial() const noexcept { return poly_; }
    /// The class of x; a primitive element.
    FieldElement generator() const noexcept { return gen_; }

    FieldElement zero() const noexcept { return FieldElement{0}; }
    FieldElement one() const noexcept { return FieldElement{1}; }
    /// Image of an integer in the prime field.
    FieldElement from_int(std::int64_t n) const noexcept;
    FieldElement element(std::uint32_t code) const;

    FieldElement add(FieldElement a, FieldElement b) const noexcept {
        if (small_) return FieldElement{add_[a.code() * q_ + b.code()]};
        if (p_ == 2) return FieldElement{a.code() ^ b.code()};
        if (f_ == 1) return FieldElement{(a.code() + b.code()) % p_};
        return add_slow(a, b);
    }
    FieldElement neg(FieldElement a) const noexcept {
        if (p_ == 2 || a.is_zero()) return a;
        if (small_) return FieldElement{neg_[a.code()]};
        if (f_ == 1) return FieldElement{p_ - a.code()};
        return neg_slow(a);
    }
    FieldElement sub(FieldElement a, FieldElement b) const noexcept { return add(a, neg(b)); }
    FieldElement mul(FieldElement a, FieldElement b) const noexcept {
        if (small_) return FieldElement{mul_[a.code() * q_ + b.code()]};
        if (a.is_zero() || b.is_zero()) return zero();
        if (has_logs_) return FieldElement{exp_[log_[a.code()] + log_[b.code()]]};
        return mul_poly(a, b);
    }
    /// Throws InvalidArgument on zero.
    FieldElement inv(FieldElement a) const;
    FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
    FieldElement pow(FieldElement a, std::uint64_t e) const noexcept;

    /// x -> x^(p^k); k is reduced mod f.
    FieldElement frobenius(FieldElement a, std::uint32_t k) const noexcept;
    /// Square order only: x -> x^sqrt(q), the involution used by Hermitian forms.
    FieldElement conjugate(FieldElement a) const;
    bool has_square_order() const noexcept { return f_ % 2 == 0; }
    std::uint32_t sqrt_order() const;

    /// Discrete log base generator(); throws on zero.
    std::uint32_t log(FieldElement a) const;
    /// generator()^k.
    FieldElement exp(std::uint64_t k) const noexcept;
    /// Multiplicative order of a nonzero element.
    std::uint64_t order(FieldElement a) const;
    bool is_square(FieldElement a) const noexcept;

    /// Reference multiplication through polynomial arithmetic (no tables).
    FieldElement mul_poly(FieldElement a, FieldElement b) const noexcept;

    std::vector<std::uint32_t> coefficients(FieldElement a) const;
    FieldElement from_coefficients(std::span<const std::uint32_t> coeffs) const;

    /// All elements in code order.
    std::vector<FieldElement> elements() const;

    /// Checks irreducibility of the defining polynomial over GF(p) (Ben-Or).
    bool defining_polynomial_is_irreducible() const;

    FiniteField(std::uint32_t p, std::uint32_t f);  // use get()

private:
    FieldElement add_slow(FieldElement a, FieldElement b) const noexcept;
    FieldElement neg_slow(FieldElement a) const noexcept;
    void build_tables();

    std::uint32_t p_, f_, q_;
    std::vector<std::uint32_t> poly_;
    FieldElement gen_;
    bool has_logs_ = false;
    bool small_ = false;
    std::vector<std::uint32_t> log_;  // size q, log_[0] unused
    std::vector<std::uint32_t> exp_;  // size 2(q-1), so sums of two logs need no reduction
    std::vector<std::int32_t> zech_;  // zech_[n] = log(1 + g^n), -1 when 1 + g^n = 0
    std::vector<std::uint8_t> add_, mul_, neg_;  // q <= 256 only
};

/// Conway polynomial for GF(p^f), coefficients low to high.
std::vector<std::uint32_t> conway_polynomial(std::uint32_t p, std::uint32_t f);

/// Embedding GF(q) -> GF(q^b) compatible with the Conway tower.
class SubfieldEmbedding {
public:
    /// Throws IncompatibleFields unless small is a subfield of large.
    SubfieldEmbedding(FieldPtr small, FieldPtr large);

    const FieldPtr& small() const noexcept { return small_; }
    const FieldPtr& large() const noexcept { return large_; }
    std::uint32_t index() const noexcept { return b_; }
    FieldElement image_of_generator() const noexcept { return image_gen_; }

    FieldElement embed(FieldElement x) const;
    /// Preimage of y if y lies in the subfield (y^q = y).
    std::optional<FieldElement> restrict(FieldElement y) const;
    FieldElement restrict_or_throw(FieldElement y) const;

    /// Relative trace  sum_{i<b} y^(q^i), as an element of the small field.
    FieldElement trace(FieldElement y) const;
    /// Relative norm  y^((q^b - 1)/(q - 1)), as an element of the small field.
    FieldElement norm(FieldElement y) const;

private:
    FieldPtr small_, large_;
    std::uint32_t b_;
    std::uint64_t step_;  // (Q - 1)/(q - 1)
    FieldElement image_gen_;
};

/// Cached embedding between two fields; throws IncompatibleFields.
const SubfieldEmbedding& embedding(const FieldPtr& small, const FieldPtr& large);

FieldElement frobenius(const FiniteField& field, FieldElement x, std::uint32_t k);
FieldElement rel_trace(const FieldPtr& large, FieldElement x, const FieldPtr& to);
FieldElement rel_norm(const FieldPtr& large, FieldElement x, const FieldPtr& to);

/// Trace from the intermediate field GF(q^c) (which must contain y) down to GF(q),
/// computed inside GF(q^b):  sum_{i<c} y^(q^i).
FieldElement partial_trace(const SubfieldEmbedding& emb, FieldElement y, std::uint32_t c);

// Small number-theory helpers shared by the library.
bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);  // distinct, ascending
std::uint64_t ipow(std::uint64_t base, std::uint32_t exp);
/// Decomposes q = p^f; returns nullopt if q is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);

}  // namespace polarkit
