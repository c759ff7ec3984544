#pragma once

// Nondegenerate symplectic, quadratic and Hermitian forms.
//
// Quadratic forms are stored by an upper-triangular coefficient matrix C with
// Q(v) = sum_{i<=j} C_ij v_i v_j; the polar form is B(u,v) = u (C + C^T) v^T.
// Sesquilinear forms are stored by their Gram matrix G with
// k(u,v) = u G (v^s)^T, where s is x -> x^sqrt(q) for Hermitian forms and the
// identity otherwise.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "polarkit/linalg.hpp"

namespace polarkit {

enum class FormKind { Symplectic, QuadraticPlus, QuadraticMinus, QuadraticParabolic, Hermitian };

constexpr bool is_quadratic(FormKind k) noexcept {
    return k == FormKind::QuadraticPlus || k == FormKind::QuadraticMinus || k == FormKind::QuadraticParabolic;
}

/// Short geometric names: W, Q+, Q-, Q, H.
std::string_view short_name(FormKind k) noexcept;
/// Long names: symplectic, quadratic_plus, quadratic_minus, quadratic_parabolic, hermitian.
std::string_view long_name(FormKind k) noexcept;
/// Accepts either naming; case-sensitive.
std::optional<FormKind> parse_kind(std::string_view s) noexcept;

class Form {
public:
    /// The fixed standard model of each kind.  Throws InvalidArgument for an
    /// incompatible (kind, d, q).
    static Form standard(FormKind kind, std::size_t d, FieldPtr field);

    /// Alternating nonsingular Gram matrix.
    static Form symplectic(FieldPtr field, Matrix gram);
    /// Nonsingular G with G = (G^s)^T over a field of square order.
    static Form hermitian(FieldPtr field, Matrix gram);
    /// Any square coefficient matrix (entries below the diagonal are folded
    /// upward); the kind is detected.  Throws if degenerate or if the form is
    /// parabolic in characteristic 2.
    static Form quadratic(FieldPtr field, const Matrix& coeffs);
    /// Sum of a_i x_i^2.
    static Form diagonal_quadratic(FieldPtr field, std::span<const FieldElement> coeffs);
    /// Builds a form of the stated kind and checks that the detected kind agrees.
    static Form from_matrix(FormKind kind, FieldPtr field, const Matrix& data);

    FormKind kind() const noexcept { return kind_; }
    const FieldPtr& field() const noexcept { return field_; }
    std::size_t dim() const noexcept { return d_; }
    /// Gram matrix (sesquilinear kinds) or upper-triangular coefficients (quadratic kinds).
    const Matrix& matrix() const noexcept { return data_; }
    /// Gram matrix of the polar (sesqui)linear form.
    const Matrix& polar_gram() const noexcept { return polar_; }
    /// Frobenius power applied to the second argument of the polar form.
    std::uint32_t sigma_power() const noexcept { return sigma_; }
    /// 2*epsilon: 0 symplectic, 1 unitary, 2 orthogonal.
    int epsilon2() const noexcept;

    /// Q(v) for quadratic kinds, k(v,v) otherwise.
    FieldElement evaluate(std::span<const FieldElement> v) const;
    /// Polar form B(u,v) for quadratic kinds, k(u,v) otherwise.
    FieldElement evaluate_pair(std::span<const FieldElement> u, std::span<const FieldElement> v) const;
    bool is_singular(std::span<const FieldElement> v) const { return evaluate(v).is_zero(); }
    /// w with evaluate_pair(u, v) = u . w for every u.
    Vec polar_image(std::span<const FieldElement> v) const;

private:
    Form(FormKind kind, FieldPtr field, Matrix data);

    FormKind kind_;
    FieldPtr field_;
    std::size_t d_;
    Matrix data_;
    Matrix polar_;
    std::uint32_t sigma_ = 0;
};

/// {x : B(x,s) = 0 for all s in S}.
Subspace perp(const Form& form, const Subspace& s);

enum class RestrictionType { Nondegenerate, TotallySingular, Degenerate };

struct RestrictionInfo {
    RestrictionType type;
    /// Kind of the nondegenerate quotient S/rad(S); empty when that quotient is zero.
    std::optional<FormKind> kind;
    /// Largest dimension of a totally singular subspace of S.
    std::size_t rank;
    /// Dimension of the (singular) radical of S.
    std::size_t radical_dim;
    std::size_t dim;
};

RestrictionInfo classify_restriction(const Form& form, const Subspace& s);

/// Matrix of the form restricted to the rows of `basis` (coefficients or Gram,
/// following the form's convention).
Matrix restrict_matrix(const Form& form, const Matrix& basis);

}  // namespace polarkit
