#include "polarkit/forms.hpp"

#include <utility>

namespace polarkit {

std::string_view short_name(FormKind k) noexcept {
    switch (k) {
        case FormKind::Symplectic: return "W";
        case FormKind::QuadraticPlus: return "Q+";
        case FormKind::QuadraticMinus: return "Q-";
        case FormKind::QuadraticParabolic: return "Q";
        case FormKind::Hermitian: return "H";
    }
    return "?";
}

std::string_view long_name(FormKind k) noexcept {
    switch (k) {
        case FormKind::Symplectic: return "symplectic";
        case FormKind::QuadraticPlus: return "quadratic_plus";
        case FormKind::QuadraticMinus: return "quadratic_minus";
        case FormKind::QuadraticParabolic: return "quadratic_parabolic";
        case FormKind::Hermitian: return "hermitian";
    }
    return "?";
}

std::optional<FormKind> parse_kind(std::string_view s) noexcept {
    for (auto k : {FormKind::Symplectic, FormKind::QuadraticPlus, FormKind::QuadraticMinus,
                   FormKind::QuadraticParabolic, FormKind::Hermitian})
        if (s == short_name(k) || s == long_name(k)) return k;
    return std::nullopt;
}

namespace {

enum class Family { Alternating, Hermitian, Quadratic };

Family family_of(FormKind k) {
    if (k == FormKind::Symplectic) return Family::Alternating;
    if (k == FormKind::Hermitian) return Family::Hermitian;
    return Family::Quadratic;
}

Matrix polar_of(Family fam, const FiniteField& F, const Matrix& m) {
    if (fam != Family::Quadratic) return m;
    Matrix p(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) p(i, j) = F.add(m(i, j), m(j, i));
    return p;
}

FieldElement eval_quadratic(const FiniteField& F, const Matrix& c, std::span<const FieldElement> v) {
    FieldElement s = F.zero();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        FieldElement row = F.zero();
        for (std::size_t j = i; j < v.size(); ++j) row = F.add(row, F.mul(c(i, j), v[j]));
        s = F.add(s, F.mul(v[i], row));
    }
    return s;
}

FieldElement eval_polar(const FiniteField& F, const Matrix& p, std::uint32_t sigma, std::span<const FieldElement> u,
                        std::span<const FieldElement> v) {
    FieldElement s = F.zero();
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j].is_zero()) continue;
        FieldElement col = F.zero();
        for (std::size_t i = 0; i < u.size(); ++i) col = F.add(col, F.mul(u[i], p(i, j)));
        s = F.add(s, F.mul(col, sigma ? F.frobenius(v[j], sigma) : v[j]));
    }
    return s;
}

Matrix restrict_raw(Family fam, const FiniteField& F, const Matrix& m, const Matrix& polar, std::uint32_t sigma,
                    const Matrix& basis) {
    const std::size_t k = basis.rows();
    Matrix out(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (fam == Family::Quadratic) {
                if (j < i) continue;
                out(i, j) = i == j ? eval_quadratic(F, m, basis.row(i))
                                   : eval_polar(F, polar, 0, basis.row(i), basis.row(j));
            } else {
                out(i, j) = eval_polar(F, polar, sigma, basis.row(i), basis.row(j));
            }
        }
    return out;
}

bool all_zero(const Matrix& m) {
    for (auto x : m.data())
        if (!x.is_zero()) return false;
    return true;
}

std::uint64_t upow(std::uint64_t b, std::size_t e) { return ipow(b, static_cast<std::uint32_t>(e)); }

FormKind sign_by_counting(const FiniteField& F, const Matrix& c);

// Sign of a nondegenerate even-dimensional quadratic form in characteristic 2.
// Hyperbolic pairs are split off until the space is small enough to count.
FormKind sign_char2(const FiniteField& F, Matrix c) {
    while (c.rows() > 2 && upow(F.q(), c.rows()) > (1u << 18)) {
        const std::size_t m = c.rows();
        const Matrix p = polar_of(Family::Quadratic, F, c);
        // Any three coordinates carry a nonzero singular vector.
        Vec u;
        const std::uint32_t q = F.q();
        for (std::uint64_t code = 1; code < std::uint64_t{q} * q * q && u.empty(); ++code) {
            Vec v(m);
            v[0] = FieldElement{static_cast<std::uint32_t>(code % q)};
            v[1] = FieldElement{static_cast<std::uint32_t>(code / q % q)};
            v[2] = FieldElement{static_cast<std::uint32_t>(code / q / q)};
            if (eval_quadratic(F, c, v).is_zero()) u = v;
        }
        if (u.empty()) throw Error("no singular vector among three coordinates");
        Vec w;
        for (std::size_t j = 0; j < m && w.empty(); ++j) {
            Vec e(m);
            e[j] = F.one();
            const FieldElement b = eval_polar(F, p, 0, u, e);
            if (!b.is_zero()) w = scale(F, F.inv(b), e);
        }
        w = add(F, w, scale(F, F.neg(eval_quadratic(F, c, w)), u));
        Matrix cond(0, m);
        cond.append_row(vec_mat(F, u, p));
        cond.append_row(vec_mat(F, w, p));
        const Matrix rest = right_kernel(F, cond);
        c = restrict_raw(Family::Quadratic, F, c, p, 0, rest);
    }
    return sign_by_counting(F, c);
}

FormKind sign_by_counting(const FiniteField& F, const Matrix& c) {
    const std::size_t m = c.rows();
    const std::uint64_t q = F.q();
    const std::uint64_t total = upow(q, m);
    std::uint64_t singular = 0;
    Vec v(m);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t x = code;
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = FieldElement{static_cast<std::uint32_t>(x % q)};
            x /= q;
        }
        if (eval_quadratic(F, c, v).is_zero()) ++singular;
    }
    const std::size_t k = m / 2;
    const std::uint64_t big = upow(q, 2 * k - 1), mid = upow(q, k), small = upow(q, k - 1);
    if (singular == big + mid - small) return FormKind::QuadraticPlus;
    if (singular == big - mid + small) return FormKind::QuadraticMinus;
    throw Error("singular-vector count matches neither quadric type");
}

FormKind quadratic_sign(const FiniteField& F, const Matrix& c) {
    if (F.p() == 2) return sign_char2(F, c);
    const Matrix p = polar_of(Family::Quadratic, F, c);
    FieldElement d = det(F, p);
    if ((c.rows() / 2) % 2 == 1) d = F.neg(d);
    return F.is_square(d) ? FormKind::QuadraticPlus : FormKind::QuadraticMinus;
}

struct Analysis {
    Matrix radical;  // singular radical, rows
    std::size_t polar_radical_dim = 0;
    std::optional<FormKind> kind;
    std::size_t witt = 0;
    bool zero = false;
};

Analysis analyze(Family fam, const FiniteField& F, std::uint32_t sigma, const Matrix& m) {
    Analysis a;
    const std::size_t k = m.rows();
    a.zero = all_zero(m);
    const Matrix p = polar_of(fam, F, m);
    Matrix r0 = right_kernel(F, p.transpose());
    a.polar_radical_dim = r0.rows();
    a.radical = r0;
    if (fam == Family::Quadratic && F.p() == 2 && r0.rows() > 0) {
        // On the polar radical Q(sum c_i r_i) = sum c_i^2 Q(r_i): a linear condition on sqrt coefficients.
        Matrix functional(1, r0.rows());
        for (std::size_t i = 0; i < r0.rows(); ++i)
            functional(0, i) = F.frobenius(eval_quadratic(F, m, r0.row(i)), F.f() - 1);
        const Matrix coeffs = right_kernel(F, functional);
        a.radical = mul(F, coeffs, r0);
        rref(F, a.radical);
    }
    const std::size_t mdim = k - a.radical.rows();
    if (mdim == 0) return a;

    Matrix comp(0, k);
    {
        Matrix span = a.radical;
        std::size_t have = rank(F, span);
        for (std::size_t j = 0; j < k && comp.rows() < mdim; ++j) {
            Vec e(k);
            e[j] = F.one();
            Matrix trial = span;
            trial.append_row(e);
            if (rank(F, trial) > have) {
                span = std::move(trial);
                ++have;
                comp.append_row(e);
            }
        }
    }
    const Matrix restricted = restrict_raw(fam, F, m, p, sigma, comp);
    switch (fam) {
        case Family::Alternating:
            a.kind = FormKind::Symplectic;
            a.witt = mdim / 2;
            break;
        case Family::Hermitian:
            a.kind = FormKind::Hermitian;
            a.witt = mdim / 2;
            break;
        case Family::Quadratic:
            if (mdim % 2 == 1) {
                a.kind = FormKind::QuadraticParabolic;
                a.witt = (mdim - 1) / 2;
            } else {
                a.kind = quadratic_sign(F, restricted);
                a.witt = a.kind == FormKind::QuadraticPlus ? mdim / 2 : mdim / 2 - 1;
            }
            break;
    }
    return a;
}

}  // namespace

Form::Form(FormKind kind, FieldPtr field, Matrix data)
    : kind_(kind), field_(std::move(field)), d_(data.rows()), data_(std::move(data)) {
    if (kind_ == FormKind::Hermitian) sigma_ = field_->f() / 2;
    polar_ = polar_of(family_of(kind_), *field_, data_);
}

int Form::epsilon2() const noexcept {
    if (kind_ == FormKind::Symplectic) return 0;
    if (kind_ == FormKind::Hermitian) return 1;
    return 2;
}

Form Form::standard(FormKind kind, std::size_t d, FieldPtr field) {
    if (!field) throw InvalidArgument("missing field");
    const auto& F = *field;
    if (d == 0) throw InvalidArgument("dimension must be positive");
    Matrix m(d, d);
    switch (kind) {
        case FormKind::Symplectic: {
            if (d % 2) throw InvalidArgument("symplectic forms need even dimension");
            const std::size_t h = d / 2;
            for (std::size_t i = 0; i < h; ++i) {
                m(i, i + h) = F.one();
                m(i + h, i) = F.neg(F.one());
            }
            return Form(kind, field, std::move(m));
        }
        case FormKind::QuadraticPlus:
            if (d % 2) throw InvalidArgument("hyperbolic quadrics need even dimension");
            for (std::size_t i = 0; i + 1 < d; i += 2) m(i, i + 1) = F.one();
            return Form(kind, field, std::move(m));
        case FormKind::QuadraticMinus: {
            if (d % 2) throw InvalidArgument("elliptic quadrics need even dimension");
            for (std::size_t i = 0; i + 3 < d; i += 2) m(i, i + 1) = F.one();
            // Norm form of GF(q^2)/GF(q): N(x + y g) = x^2 + Tr(g) xy + N(g) y^2.
            auto big = FiniteField::get(F.p(), 2 * F.f());
            const auto& emb = embedding(field, big);
            const FieldElement g = big->generator();
            m(d - 2, d - 2) = F.one();
            m(d - 2, d - 1) = emb.trace(g);
            m(d - 1, d - 1) = emb.norm(g);
            return Form(kind, field, std::move(m));
        }
        case FormKind::QuadraticParabolic:
            if (d % 2 == 0) throw InvalidArgument("parabolic quadrics need odd dimension");
            if (F.p() == 2) throw InvalidArgument("parabolic quadrics need odd q");
            m(0, 0) = F.one();
            for (std::size_t i = 1; i + 1 < d; i += 2) m(i, i + 1) = F.one();
            return Form(kind, field, std::move(m));
        case FormKind::Hermitian:
            if (!F.has_square_order()) throw InvalidArgument("Hermitian forms need a field of square order");
            return Form(kind, field, Matrix::identity(d));
    }
    throw InvalidArgument("unknown form kind");
}

Form Form::symplectic(FieldPtr field, Matrix gram) {
    const auto& F = *field;
    if (gram.rows() != gram.cols() || gram.rows() == 0) throw InvalidArgument("Gram matrix must be square");
    for (std::size_t i = 0; i < gram.rows(); ++i) {
        if (!gram(i, i).is_zero()) throw InvalidArgument("symplectic Gram matrix must have zero diagonal");
        for (std::size_t j = 0; j < i; ++j)
            if (gram(j, i) != F.neg(gram(i, j))) throw InvalidArgument("symplectic Gram matrix must be alternating");
    }
    if (det(F, gram).is_zero()) throw InvalidArgument("form is degenerate");
    return Form(FormKind::Symplectic, std::move(field), std::move(gram));
}

Form Form::hermitian(FieldPtr field, Matrix gram) {
    const auto& F = *field;
    if (!F.has_square_order()) throw InvalidArgument("Hermitian forms need a field of square order");
    if (gram.rows() != gram.cols() || gram.rows() == 0) throw InvalidArgument("Gram matrix must be square");
    for (std::size_t i = 0; i < gram.rows(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (gram(j, i) != F.conjugate(gram(i, j))) throw InvalidArgument("Gram matrix is not Hermitian");
    if (det(F, gram).is_zero()) throw InvalidArgument("form is degenerate");
    return Form(FormKind::Hermitian, std::move(field), std::move(gram));
}

Form Form::quadratic(FieldPtr field, const Matrix& coeffs) {
    const auto& F = *field;
    if (coeffs.rows() != coeffs.cols() || coeffs.rows() == 0) throw InvalidArgument("coefficient matrix must be square");
    const std::size_t d = coeffs.rows();
    Matrix c(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        c(i, i) = coeffs(i, i);
        for (std::size_t j = i + 1; j < d; ++j) c(i, j) = F.add(coeffs(i, j), coeffs(j, i));
    }
    const Analysis a = analyze(Family::Quadratic, F, 0, c);
    if (a.radical.rows() != 0) throw InvalidArgument("form is degenerate");
    if (*a.kind == FormKind::QuadraticParabolic && F.p() == 2)
        throw InvalidArgument("parabolic quadrics need odd q");
    return Form(*a.kind, std::move(field), std::move(c));
}

Form Form::diagonal_quadratic(FieldPtr field, std::span<const FieldElement> coeffs) {
    Matrix c(coeffs.size(), coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) c(i, i) = coeffs[i];
    return quadratic(std::move(field), c);
}

Form Form::from_matrix(FormKind kind, FieldPtr field, const Matrix& data) {
    Form f = kind == FormKind::Symplectic  ? symplectic(std::move(field), data)
             : kind == FormKind::Hermitian ? hermitian(std::move(field), data)
                                           : quadratic(std::move(field), data);
    if (f.kind() != kind)
        throw InvalidArgument("matrix defines a " + std::string(long_name(f.kind())) + " form, not " +
                              std::string(long_name(kind)));
    return f;
}

FieldElement Form::evaluate(std::span<const FieldElement> v) const {
    if (v.size() != d_) throw InvalidArgument("vector length does not match form dimension");
    if (is_quadratic(kind_)) return eval_quadratic(*field_, data_, v);
    if (kind_ == FormKind::Symplectic) return field_->zero();
    return eval_polar(*field_, polar_, sigma_, v, v);
}

FieldElement Form::evaluate_pair(std::span<const FieldElement> u, std::span<const FieldElement> v) const {
    if (u.size() != d_ || v.size() != d_) throw InvalidArgument("vector length does not match form dimension");
    return eval_polar(*field_, polar_, sigma_, u, v);
}

Vec Form::polar_image(std::span<const FieldElement> v) const {
    if (v.size() != d_) throw InvalidArgument("vector length does not match form dimension");
    const auto& F = *field_;
    Vec w(d_);
    for (std::size_t j = 0; j < d_; ++j) {
        if (v[j].is_zero()) continue;
        const FieldElement vj = sigma_ ? F.frobenius(v[j], sigma_) : v[j];
        for (std::size_t i = 0; i < d_; ++i) w[i] = F.add(w[i], F.mul(polar_(i, j), vj));
    }
    return w;
}

Subspace perp(const Form& form, const Subspace& s) {
    if (s.ambient_dim() != form.dim()) throw InvalidArgument("subspace does not live in the form's space");
    Matrix cond(0, form.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) cond.append_row(form.polar_image(s.basis().row(i)));
    return Subspace::from_matrix(form.field(), right_kernel(*form.field(), cond));
}

Matrix restrict_matrix(const Form& form, const Matrix& basis) {
    return restrict_raw(family_of(form.kind()), *form.field(), form.matrix(), form.polar_gram(), form.sigma_power(),
                        basis);
}

RestrictionInfo classify_restriction(const Form& form, const Subspace& s) {
    if (s.ambient_dim() != form.dim()) throw InvalidArgument("subspace does not live in the form's space");
    const auto fam = family_of(form.kind());
    const Matrix m = restrict_matrix(form, s.basis());
    const Analysis a = analyze(fam, *form.field(), form.sigma_power(), m);
    RestrictionInfo info;
    info.dim = s.dim();
    info.radical_dim = a.radical.rows();
    info.kind = a.kind;
    info.rank = a.witt + info.radical_dim;
    if (a.zero)
        info.type = RestrictionType::TotallySingular;
    else if (info.radical_dim == 0)
        info.type = RestrictionType::Nondegenerate;
    else
        info.type = RestrictionType::Degenerate;
    return info;
}

}  // namespace polarkit
