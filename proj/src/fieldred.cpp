#include "polarkit/fieldred.hpp"

#include <string>

namespace polarkit {

namespace {

struct RowSpec {
    FormKind large, small;
};

RowSpec row_spec(int row) {
    switch (row) {
        case 1: return {FormKind::Symplectic, FormKind::Symplectic};
        case 2: return {FormKind::QuadraticPlus, FormKind::QuadraticPlus};
        case 3: return {FormKind::QuadraticMinus, FormKind::QuadraticMinus};
        case 4: return {FormKind::QuadraticParabolic, FormKind::QuadraticParabolic};
        case 5:
        case 6: return {FormKind::Hermitian, FormKind::Hermitian};
        case 7:
        case 8: return {FormKind::Hermitian, FormKind::Symplectic};
        case 9: return {FormKind::Hermitian, FormKind::QuadraticMinus};
        case 10: return {FormKind::Hermitian, FormKind::QuadraticPlus};
        default: throw InvalidArgument("reduction row " + std::to_string(row) + " is not supported (rows 1-10)");
    }
}

void check_condition(int row, std::size_t n, std::uint32_t b, std::uint32_t q) {
    const std::size_t d = n * b;
    bool ok = true;
    switch (row) {
        case 1:
        case 2:
        case 3: ok = n % 2 == 0; break;
        case 4: ok = d % 2 == 1 && q % 2 == 1; break;
        case 5: ok = d % 2 == 1; break;
        case 6: ok = n % 2 == 0 && b % 2 == 1; break;
        case 7:
        case 9: ok = n % 2 == 1 && b % 2 == 0; break;
        case 8:
        case 10: ok = n % 2 == 0 && b % 2 == 0; break;
        default: break;
    }
    if (!ok)
        throw InvalidArgument("condition of reduction row " + std::to_string(row) + " fails for d=" + std::to_string(d) +
                              ", b=" + std::to_string(b) + ", q=" + std::to_string(q));
}

// q^(e/2) for an exponent given in halves; q must be a square when e is odd.
std::uint64_t qhalf(std::uint32_t q, std::int64_t twice) {
    if (twice < 0) throw InvalidArgument("negative exponent");
    if (twice % 2 == 0) return ipow(q, static_cast<std::uint32_t>(twice / 2));
    const auto pf = prime_power(q);
    if (pf->second % 2) throw InvalidArgument("half exponent needs a square field order");
    return ipow(ipow(pf->first, pf->second / 2), static_cast<std::uint32_t>(twice));
}

FieldElement first_alpha(const FiniteField& L) {
    for (std::uint32_t c = 1; c < L.q(); ++c) {
        const FieldElement a{c};
        if (L.add(a, L.conjugate(a)).is_zero()) return a;
    }
    throw Error("no alpha with alpha + alpha^s = 0");
}

}  // namespace

FieldReduction::FieldReduction(int row, std::uint32_t b, FieldElement alpha, const SubfieldEmbedding* emb)
    : row_(row), b_(b), alpha_(alpha), emb_(emb) {
    const auto& L = *emb_->large();
    const auto& S = *emb_->small();
    for (std::uint32_t k = 0; k < b_; ++k) basis_.push_back(L.pow(L.generator(), k));
    coeffs_.assign(std::size_t{L.q()} * b_, 0);
    const std::uint64_t combos = ipow(S.q(), b_);
    for (std::uint64_t t = 0; t < combos; ++t) {
        FieldElement x = L.zero();
        std::uint64_t r = t;
        std::vector<std::uint32_t> c(b_);
        for (std::uint32_t k = 0; k < b_; ++k) {
            c[k] = static_cast<std::uint32_t>(r % S.q());
            r /= S.q();
            x = L.add(x, L.mul(emb_->embed(FieldElement{c[k]}), basis_[k]));
        }
        for (std::uint32_t k = 0; k < b_; ++k) coeffs_[std::size_t{x.code()} * b_ + k] = c[k];
    }
}

Vec FieldReduction::flatten(std::span<const FieldElement> x) const {
    Vec out(x.size() * b_);
    for (std::size_t j = 0; j < x.size(); ++j)
        for (std::uint32_t k = 0; k < b_; ++k) out[j * b_ + k] = FieldElement{coeffs_[std::size_t{x[j].code()} * b_ + k]};
    return out;
}

Vec FieldReduction::unflatten(std::span<const FieldElement> v) const {
    if (v.size() % b_) throw InvalidArgument("vector length is not a multiple of b");
    const auto& L = *emb_->large();
    Vec out(v.size() / b_);
    for (std::size_t j = 0; j < out.size(); ++j) {
        FieldElement x = L.zero();
        for (std::uint32_t k = 0; k < b_; ++k) x = L.add(x, L.mul(emb_->embed(v[j * b_ + k]), basis_[k]));
        out[j] = x;
    }
    return out;
}

Semisimilarity FieldReduction::flatten(const Semisimilarity& g) const {
    if (g.sigma_power() != 0) throw InvalidArgument("only GF(q^b)-linear maps can be flattened");
    const auto& L = *emb_->large();
    const std::size_t n = g.dim();
    Matrix m(0, n * b_);
    for (std::size_t j = 0; j < n; ++j)
        for (std::uint32_t k = 0; k < b_; ++k) m.append_row(flatten(scale(L, basis_[k], g.matrix().row(j))));
    return Semisimilarity(emb_->small(), std::move(m), 0);
}

std::uint64_t FieldReduction::expected_large_points() const {
    const std::uint32_t q = emb_->small()->q();
    const std::int64_t d = static_cast<std::int64_t>(large_->dim()) * b_, b = b_;
    const std::uint64_t qb1 = ipow(q, b_) - 1;
    switch (row_) {
        case 1: return (qhalf(q, 2 * d) - 1) / qb1;
        case 2: return (qhalf(q, d - 2 * b) + 1) * (qhalf(q, d) - 1) / qb1;
        case 3: return (qhalf(q, d) + 1) * (qhalf(q, d - 2 * b) - 1) / qb1;
        case 4: return (qhalf(q, 2 * (d - b)) - 1) / qb1;
        case 5:
        case 7:
        case 9: return (qhalf(q, d) + 1) * (qhalf(q, d - b) - 1) / qb1;
        default: return (qhalf(q, d - b) + 1) * (qhalf(q, d) - 1) / qb1;
    }
}

std::uint64_t FieldReduction::expected_small_points() const {
    const std::uint32_t q = emb_->small()->q();
    const std::int64_t d = static_cast<std::int64_t>(large_->dim()) * b_;
    switch (row_) {
        case 1:
        case 7:
        case 8: return (qhalf(q, 2 * d) - 1) / (q - 1);
        case 2:
        case 10: return (qhalf(q, d - 2) + 1) * (qhalf(q, d) - 1) / (q - 1);
        case 3:
        case 9: return (qhalf(q, d) + 1) * (qhalf(q, d - 2) - 1) / (q - 1);
        case 4: return (qhalf(q, 2 * (d - 1)) - 1) / (q - 1);
        case 5: return (qhalf(q, d) + 1) * (qhalf(q, d - 1) - 1) / (q - 1);
        default: return (qhalf(q, d - 1) + 1) * (qhalf(q, d) - 1) / (q - 1);
    }
}

Form reduced_form(int row, const Form& large_form, FieldPtr small_field) {
    const RowSpec spec = row_spec(row);
    if (large_form.kind() != spec.large)
        throw InvalidArgument("reduction row " + std::to_string(row) + " needs a " +
                              std::string(long_name(spec.large)) + " form");
    const auto& emb = embedding(small_field, large_form.field());
    const std::uint32_t b = emb.index();
    if (b < 2) throw InvalidArgument("field reduction needs a proper subfield");
    const std::size_t n = large_form.dim();
    check_condition(row, n, b, small_field->q());

    const auto& L = *large_form.field();
    const FieldElement alpha = (row == 7 || row == 8) ? first_alpha(L) : L.one();
    const std::size_t d = n * b;
    std::vector<Vec> basis;  // small basis vectors as large vectors: g^k e_j
    for (std::size_t j = 0; j < n; ++j)
        for (std::uint32_t k = 0; k < b; ++k) {
            Vec v(n);
            v[j] = L.pow(L.generator(), k);
            basis.push_back(std::move(v));
        }
    Matrix m(d, d);
    const bool quadratic_target = is_quadratic(spec.small);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t c = 0; c < d; ++c) {
            if (quadratic_target && c < a) continue;
            if (quadratic_target && c == a) {
                if (row <= 4)
                    m(a, a) = emb.trace(large_form.evaluate(basis[a]));
                else
                    m(a, a) = partial_trace(emb, large_form.evaluate_pair(basis[a], basis[a]), b / 2);
                continue;
            }
            m(a, c) = emb.trace(L.mul(alpha, large_form.evaluate_pair(basis[a], basis[c])));
        }
    return Form::from_matrix(spec.small, small_field, m);
}

ReductionPtr reduce(int row, const Form& large_form, FieldPtr small_field, const BuildOptions& opts) {
    Form small_form = reduced_form(row, large_form, small_field);
    const auto& emb = embedding(small_field, large_form.field());
    const auto& L = *large_form.field();
    const FieldElement alpha = (row == 7 || row == 8) ? first_alpha(L) : L.one();
    auto fr = std::make_shared<FieldReduction>(row, emb.index(), alpha, &emb);
    BuildOptions large_opts = opts;
    large_opts.allow_hyperbolic_3 = true;
    fr->large_ = PolarSpace::build(large_form, large_opts);
    fr->small_ = PolarSpace::build(std::move(small_form), large_opts);
    if (fr->large_->size() != fr->expected_large_points() || fr->small_->size() != fr->expected_small_points())
        throw Error("reduction row " + std::to_string(row) + ": point counts disagree with the table");
    return fr;
}

PointSet push_down(const FieldReduction& fr, const PointSet& o) {
    if (o.space() != fr.large_space()) throw InvalidArgument("point set does not live in the large space");
    const auto& emb = fr.embedding();
    const auto& L = *emb.large();
    const std::uint64_t classes = (std::uint64_t{L.q()} - 1) / (emb.small()->q() - 1);
    std::vector<std::uint32_t> out;
    out.reserve(o.size() * classes);
    for (auto i : o.members()) {
        const Vec v = fr.large_space()->point(i);
        for (std::uint64_t e = 0; e < classes; ++e) {
            const auto idx = fr.small_space()->index_of(fr.flatten(scale(L, L.exp(e), v)));
            if (!idx) throw Error("flattened singular vector is not a point of the small space");
            out.push_back(*idx);
        }
    }
    return PointSet::from_unsorted(fr.small_space(), std::move(out));
}

PointSet blow_up(const FieldReduction& fr) { return push_down(fr, PointSet::all(fr.large_space())); }

PointSet lift_up(const FieldReduction& fr, const PointSet& o) {
    if (o.space() != fr.small_space()) throw InvalidArgument("point set does not live in the small space");
    const auto& emb = fr.embedding();
    const auto& L = *emb.large();
    const std::uint64_t classes = (std::uint64_t{L.q()} - 1) / (emb.small()->q() - 1);
    std::vector<std::uint32_t> out;
    for (auto i : o.members()) {
        const Vec x = fr.unflatten(fr.small_space()->point(i));
        const auto big = fr.large_space()->index_of(x);
        if (!big) throw InvalidArgument("point " + std::to_string(i) + " is not on a singular point of the large space");
        for (std::uint64_t e = 1; e < classes; ++e) {
            const auto j = fr.small_space()->index_of(fr.flatten(scale(L, L.exp(e), x)));
            if (!j || !o.contains(*j))
                throw InvalidArgument("set is not closed under GF(q^b)* scalars: point " + std::to_string(i) +
                                      " is in the set but its multiple " + (j ? "point " + std::to_string(*j) : "?") +
                                      " is not");
        }
        out.push_back(*big);
    }
    return PointSet::from_unsorted(fr.large_space(), std::move(out));
}

}  // namespace polarkit
