#include "polarkit/constructions.hpp"

#include "polarkit/intriguing.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace polarkit {

namespace {

Matrix upper_to_polar(const FiniteField& F, const Matrix& c) {
    const std::size_t n = c.rows();
    Matrix p(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p(i, j) = F.add(c(i, j), c(j, i));
    return p;
}

Matrix permutation_matrix(const std::vector<std::size_t>& perm) {
    Matrix m(perm.size(), perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) m(i, perm[i]) = FieldElement{1};
    return m;
}

}  // namespace

QuotientSection::QuotientSection(FieldPtr field, Matrix ambient_coeffs, const Matrix& u_basis)
    : field_(std::move(field)), coeffs_(std::move(ambient_coeffs)) {
    const auto& F = *field_;
    const std::size_t n = coeffs_.rows();
    if (coeffs_.cols() != n || u_basis.cols() != n) throw InvalidArgument("dimension mismatch in quotient section");
    if (rank(F, u_basis) != u_basis.rows()) throw InvalidArgument("basis of U is not independent");

    const Matrix polar = upper_to_polar(F, coeffs_);
    const Matrix gram = mul(F, mul(F, u_basis, polar), u_basis.transpose());
    const Matrix ker = right_kernel(F, gram);
    radical_ = ker.rows() ? mul(F, ker, u_basis) : Matrix(0, n);
    for (std::size_t i = 0; i < radical_.rows(); ++i)
        if (!ambient_q(radical_.row(i)).is_zero()) throw Error("Q does not vanish on the radical of U");

    Subspace span = Subspace::from_matrix(field_, radical_);
    lifts_ = Matrix(0, n);
    for (std::size_t i = 0; i < u_basis.rows(); ++i) {
        if (span.contains(u_basis.row(i))) continue;
        lifts_.append_row(u_basis.row(i));
        span = span.sum(Subspace::span(field_, n, {u_basis.row_vec(i)}));
    }
    Matrix all = lifts_;
    for (std::size_t i = 0; i < radical_.rows(); ++i) all.append_row(radical_.row(i));
    solver_.emplace(field_, all);
}

FieldElement QuotientSection::ambient_q(std::span<const FieldElement> v) const {
    const auto& F = *field_;
    FieldElement s = F.zero();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        FieldElement row = F.zero();
        for (std::size_t j = i; j < v.size(); ++j) row = F.add(row, F.mul(coeffs_(i, j), v[j]));
        s = F.add(s, F.mul(v[i], row));
    }
    return s;
}

FieldElement QuotientSection::ambient_b(std::span<const FieldElement> u, std::span<const FieldElement> v) const {
    const auto& F = *field_;
    return F.sub(F.sub(ambient_q(add(F, u, v)), ambient_q(u)), ambient_q(v));
}

Vec QuotientSection::project(std::span<const FieldElement> u) const {
    auto x = solver_->coords(u);
    if (!x) throw InvalidArgument("vector does not lie in U");
    x->resize(dim());
    return *x;
}

Matrix QuotientSection::induced_coefficients() const {
    const std::size_t k = dim();
    Matrix m(k, k);
    for (std::size_t a = 0; a < k; ++a) {
        m(a, a) = ambient_q(lifts_.row(a));
        for (std::size_t b = a + 1; b < k; ++b) m(a, b) = ambient_b(lifts_.row(a), lifts_.row(b));
    }
    return m;
}

Matrix QuotientSection::induced_action(const Matrix& ambient_map) const {
    Matrix m(0, dim());
    for (std::size_t a = 0; a < dim(); ++a) m.append_row(project(vec_mat(*field_, lifts_.row(a), ambient_map)));
    return m;
}

// adjoint module

FieldElement adjoint_q(const FiniteField& F, std::span<const FieldElement> a) {
    FieldElement s = F.zero();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
            s = F.add(s, F.mul(a[3 * i + j], a[3 * j + i]));
            s = F.sub(s, F.mul(a[4 * i], a[4 * j]));
        }
    return s;
}

namespace {

void require_char3(const FiniteField& F) {
    if (F.p() != 3) throw InvalidArgument("two-orbit case requires p=3");
}

}  // namespace

AdjointModel adjoint_model(std::uint32_t q) {
    const auto field = FiniteField::of_order(q);
    const auto& F = *field;
    require_char3(F);
    if (q > 9) throw CapacityExceeded("Q(6," + std::to_string(q) + ") exceeds the point cap");

    Matrix coeffs(9, 9);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
            coeffs(3 * i + j, 3 * j + i) = F.one();
            coeffs(4 * i, 4 * j) = F.neg(F.one());
        }
    Matrix u(0, 9);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j) continue;
            Vec v(9);
            v[3 * i + j] = F.one();
            u.append_row(v);
        }
    for (std::size_t i = 0; i < 2; ++i) {
        Vec v(9);
        v[4 * i] = F.one();
        v[4 * (i + 1)] = F.neg(F.one());
        u.append_row(v);
    }
    QuotientSection section(field, coeffs, u);
    Form form = Form::from_matrix(FormKind::QuadraticParabolic, field, section.induced_coefficients());

    std::vector<Matrix> sl3;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j) continue;
            for (std::uint32_t k = 0; k < F.f(); ++k) {
                Matrix g = Matrix::identity(3);
                g(i, j) = F.exp(k);
                sl3.push_back(std::move(g));
            }
        }
    GeneratorSet induced{{}, "SL3(" + std::to_string(q) + ") on the adjoint module"};
    for (const auto& g : sl3) {
        const Matrix ginv = *inverse(F, g);
        // X.g = g^-1 X g on the basis E_ab.
        Matrix amb(9, 9);
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b)
                for (std::size_t i = 0; i < 3; ++i)
                    for (std::size_t j = 0; j < 3; ++j) amb(3 * a + b, 3 * i + j) = F.mul(ginv(i, a), g(b, j));
        induced.elements.emplace_back(field, section.induced_action(amb), 0);
    }
    validate_generators(form, induced);
    return AdjointModel{field, std::move(section), std::move(form), std::move(sl3), std::move(induced)};
}

TwoOrbitConstruction adjoint_sl3(std::uint32_t q, const OrbitOptions& opts) {
    auto model = adjoint_model(q);
    auto space = PolarSpace::build(model.form);
    if (space->rank() != 3) throw Error("adjoint quotient is not Q(6,q)");
    auto parts = orbits(space, model.generators, opts);
    return {std::move(space), std::move(model.generators), std::move(parts)};
}

// exterior square

std::size_t ExtSquareModel::wedge_index(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return 5 * i - i * (i - 1) / 2 + (j - i - 1);
}

Vec wedge(const FiniteField& F, std::span<const FieldElement> u, std::span<const FieldElement> v) {
    Vec w(15);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j)
            w[ExtSquareModel::wedge_index(i, j)] = F.sub(F.mul(u[i], v[j]), F.mul(u[j], v[i]));
    return w;
}

Matrix wedge_square(const FiniteField& F, const Matrix& g) {
    Matrix m(0, 15);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j) m.append_row(wedge(F, g.row(i), g.row(j)));
    return m;
}

ExtSquareModel extsq_model(std::uint32_t q) {
    const auto field = FiniteField::of_order(q);
    const auto& F = *field;
    require_char3(F);
    if (q != 3) throw CapacityExceeded("Q(12," + std::to_string(q) + ") exceeds the point cap");

    auto sp6 = classical_generators(GroupFamily::Sp, 6, field);
    const Matrix& j = sp6.form.polar_gram();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = a + 1; b < 6; ++b) pairs.emplace_back(a, b);

    Matrix beta(15, 15);
    Vec ell(15);
    for (std::size_t x = 0; x < 15; ++x) {
        const auto [i, jj] = pairs[x];
        ell[x] = j(i, jj);
        for (std::size_t y = 0; y < 15; ++y) {
            const auto [k, l] = pairs[y];
            beta(x, y) = F.sub(F.mul(j(i, k), j(jj, l)), F.mul(j(i, l), j(jj, k)));
        }
    }
    const auto beta_inv = inverse(F, beta);
    if (!beta_inv) throw Error("beta_1 is degenerate");
    Vec h = vec_mat(F, ell, *beta_inv);

    // Q = beta_1 / 2 in odd characteristic.
    const FieldElement half = F.inv(F.from_int(2));
    Matrix coeffs(15, 15);
    for (std::size_t x = 0; x < 15; ++x) {
        coeffs(x, x) = F.mul(half, beta(x, x));
        for (std::size_t y = x + 1; y < 15; ++y) coeffs(x, y) = beta(x, y);
    }
    Matrix hrow(0, 15);
    hrow.append_row(vec_mat(F, h, beta));
    QuotientSection section(field, coeffs, right_kernel(F, hrow));
    if (section.radical().rows() != 1) throw Error("unexpected radical in the exterior square section");
    Form form = Form::from_matrix(FormKind::QuadraticParabolic, field, section.induced_coefficients());

    GeneratorSet induced{{}, "Sp6(" + std::to_string(q) + ") on the exterior square section"};
    for (const auto& g : sp6.generators.elements)
        induced.elements.emplace_back(field, section.induced_action(wedge_square(F, g.matrix())), 0);
    validate_generators(form, induced);
    return ExtSquareModel{field,          std::move(sp6.form),   std::move(beta),
                          std::move(h),   std::move(section),    std::move(form),
                          std::move(sp6.generators), std::move(induced)};
}

TwoOrbitConstruction extsq_sp6(std::uint32_t q, const OrbitOptions& opts) {
    auto model = extsq_model(q);
    auto space = PolarSpace::build(model.form);
    if (space->rank() != 6) throw Error("exterior square section is not Q(12,q)");
    auto parts = orbits(space, model.generators, opts);
    return {std::move(space), std::move(model.generators), std::move(parts)};
}

// D-length partitions

std::size_t d_length(std::span<const std::uint8_t> coords) {
    return static_cast<std::size_t>(std::count_if(coords.begin(), coords.end(), [](std::uint8_t c) { return c != 0; }));
}

const PointSet& DlengthPartition::of_length(std::size_t length) const {
    const auto it = std::find(lengths.begin(), lengths.end(), length);
    if (it == lengths.end()) throw InvalidArgument("no points of D-length " + std::to_string(length));
    return classes[static_cast<std::size_t>(it - lengths.begin())];
}

DlengthPartition dlength_partition(FormKind kind, std::uint32_t q, std::size_t t, const BuildOptions& opts) {
    const auto field = FiniteField::of_order(q);
    const auto& F = *field;
    std::optional<Form> form;
    if (kind == FormKind::Hermitian) {
        if (!F.has_square_order()) throw InvalidArgument("Hermitian forms need a square q");
        form = Form::standard(FormKind::Hermitian, t, field);
    } else if (is_quadratic(kind)) {
        if (F.p() == 2) throw InvalidArgument("the diagonal decomposition needs odd q for quadratic forms");
        const Vec ones(t, F.one());
        form = Form::diagonal_quadratic(field, ones);
        if (form->kind() != kind)
            throw InvalidArgument("sum of " + std::to_string(t) + " squares over GF(" + std::to_string(q) + ") is " +
                                  std::string(short_name(form->kind())) + ", not " + std::string(short_name(kind)));
    } else {
        throw InvalidArgument("symplectic forms have no orthogonal decomposition into nondegenerate lines");
    }

    DlengthPartition out;
    out.space = PolarSpace::build(*form, opts);
    std::map<std::size_t, std::vector<std::uint32_t>> by_length;
    for (std::uint32_t i = 0; i < out.space->size(); ++i) by_length[d_length(out.space->coords(i))].push_back(i);
    for (auto& [len, members] : by_length) {
        out.lengths.push_back(len);
        out.classes.emplace_back(out.space, std::move(members));
    }
    return out;
}

std::optional<MonomialSplit> find_monomial_split(const SpacePtr& space,
                                                 const std::function<bool(const OrbitPartition&)>& accept) {
    const auto& form = space->form();
    const auto& F = *space->field();
    const std::size_t d = space->dim();
    if (!is_quadratic(form.kind()) || F.p() == 2) throw InvalidArgument("monomial search needs an orthogonal form over odd q");
    if (d > 6) throw CapacityExceeded("monomial search is limited to dimension 6");
    const Matrix& c = form.matrix();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if ((i == j && c(i, j) != c(0, 0)) || (i != j && !c(i, j).is_zero()))
                throw InvalidArgument("monomial search needs a diagonal form with equal coefficients");

    std::vector<Semisimilarity> signs;
    for (std::size_t i = 0; i < d; ++i) {
        Matrix m = Matrix::identity(d);
        m(i, i) = F.neg(F.one());
        signs.emplace_back(space->field(), std::move(m), 0);
    }
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(d);
    std::iota(p.begin(), p.end(), 0);
    while (std::next_permutation(p.begin(), p.end())) perms.push_back(p);

    auto attempt = [&](std::vector<std::vector<std::size_t>> chosen) -> std::optional<MonomialSplit> {
        GeneratorSet gens{signs, "signs"};
        for (const auto& perm : chosen) gens.elements.emplace_back(space->field(), permutation_matrix(perm), 0);
        auto parts = orbits(space, gens, OrbitOptions{1});
        if (!accept(parts)) return std::nullopt;
        return MonomialSplit{std::move(chosen), std::move(gens), std::move(parts)};
    };
    for (const auto& a : perms)
        if (auto hit = attempt({a})) return hit;
    for (std::size_t a = 0; a < perms.size(); ++a)
        for (std::size_t b = a + 1; b < perms.size(); ++b)
            if (auto hit = attempt({perms[a], perms[b]})) return hit;
    return std::nullopt;
}

GeneratorSet sl2_5_in_sl2_9(Sl25Class cls) {
    const auto field = FiniteField::of_order(9);
    const auto& F = *field;
    const Form w = Form::standard(FormKind::Symplectic, 2, field);

    auto order = [&](const Matrix& m) {
        Matrix x = m;
        for (int k = 1; k <= 20; ++k) {
            if (x == Matrix::identity(2)) return k;
            x = mul(F, x, m);
        }
        return 0;
    };
    std::vector<Matrix> fours, fives;
    for (std::uint32_t code = 0; code < 9 * 9 * 9 * 9; ++code) {
        Matrix m(2, 2);
        std::uint32_t r = code;
        for (std::size_t k = 4; k-- > 0;) {
            m(k / 2, k % 2) = FieldElement{r % 9};
            r /= 9;
        }
        if (det(F, m) != F.one()) continue;
        const int o = order(m);
        if (o == 4) fours.push_back(m);
        if (o == 5) fives.push_back(m);
    }
    const auto fr = reduce(1, w, FiniteField::of_order(3));
    auto in_class = [&](const GeneratorSet& gens) {
        GeneratorSet flat{{}, gens.label};
        for (const auto& g : gens.elements) flat.elements.push_back(fr->flatten(g));
        const auto parts = orbits(fr->small_space(), flat, OrbitOptions{1});
        const auto r = classify(parts.orbit(0), 1);
        return cls == Sl25Class::TightSets ? r.tight_i == 5u : r.ovoid_m == 2u;
    };
    const std::vector<std::uint64_t> want{40, 40};
    for (const auto& a : fours)
        for (const auto& b : fives) {
            GeneratorSet gens{{Semisimilarity(field, a, 0), Semisimilarity(field, b, 0)}, "SL2(5) < SL2(9)"};
            if (vector_orbits(w, gens) == want && in_class(gens)) return gens;
        }
    throw Error("search for SL2(5) inside SL2(9) exhausted");
}

}  // namespace polarkit
