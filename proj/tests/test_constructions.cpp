#include <random>

#include "doctest.h"
#include "polarkit/constructions.hpp"
#include "polarkit/intriguing.hpp"

using namespace polarkit;

namespace {

Matrix random_invertible(const FiniteField& F, std::size_t n, std::mt19937& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(0, F.q() - 1);
    for (;;) {
        Matrix m(n, n);
        for (auto i = 0u; i < n; ++i)
            for (auto j = 0u; j < n; ++j) m(i, j) = FieldElement{pick(rng)};
        if (!det(F, m).is_zero()) return m;
    }
}

Vec random_vec(const FiniteField& F, std::size_t n, std::mt19937& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(0, F.q() - 1);
    Vec v(n);
    for (auto& x : v) x = FieldElement{pick(rng)};
    return v;
}

// Orbit sizes sum to |P|, both orbits are intriguing, and the parameters of
// each family add up to the trivial intriguing set.
void check_two_orbit(const OrbitPartition& parts) {
    REQUIRE(parts.num_orbits() == 2);
    const auto& s = *parts.space;
    CHECK(parts.orbit_sizes[0] + parts.orbit_sizes[1] == s.size());
    const auto a = classify(parts.orbit(0)), b = classify(parts.orbit(1));
    CHECK(a.is_intriguing);
    CHECK(b.is_intriguing);
    if (a.tight_i) {
        REQUIRE(b.tight_i);
        CHECK(*a.tight_i + *b.tight_i == s.theta());
    }
    if (a.ovoid_m) {
        REQUIRE(b.ovoid_m);
        CHECK(*a.ovoid_m + *b.ovoid_m == s.parameters().gaussian);
    }
}

std::vector<std::uint64_t> tight_params(const OrbitPartition& parts) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> v;
    for (std::size_t k = 0; k < parts.num_orbits(); ++k) {
        const auto r = classify(parts.orbit(k));
        v.emplace_back(parts.orbit_sizes[k], r.tight_i.value_or(0));
    }
    std::sort(v.begin(), v.end());
    std::vector<std::uint64_t> out;
    for (auto [size, i] : v) out.push_back(i);
    return out;
}

}  // namespace

TEST_CASE("adjoint quadratic form is conjugation invariant") {
    const auto F = FiniteField::of_order(9);
    std::mt19937 rng(3);
    for (int t = 0; t < 50; ++t) {
        auto a = random_vec(*F, 9, rng);
        const auto g = random_invertible(*F, 3, rng);
        const auto gi = *inverse(*F, g);
        Matrix am(3, 3);
        for (auto i = 0u; i < 3; ++i)
            for (auto j = 0u; j < 3; ++j) am(i, j) = a[3 * i + j];
        const auto conj = mul(*F, mul(*F, gi, am), g);
        CHECK(adjoint_q(*F, conj.data()) == adjoint_q(*F, a));
    }
}

TEST_CASE("adjoint model of SL3(3)") {
    const auto model = adjoint_model(3);
    CHECK(model.section.dim() == 7);
    CHECK(model.section.radical().rows() == 1);
    CHECK(model.form.kind() == FormKind::QuadraticParabolic);
    for (const auto& g : model.sl3_generators) CHECK(det(*model.field, g) == model.field->one());
    CHECK_NOTHROW(validate_generators(model.form, model.generators));

    const auto c = adjoint_sl3(3);
    CHECK(c.space->size() == 364);
    CHECK(c.orbits.sorted_sizes() == std::vector<std::uint64_t>{52, 312});
    CHECK(tight_params(c.orbits) == std::vector<std::uint64_t>{4, 24});
    check_two_orbit(c.orbits);
}

TEST_CASE("adjoint model restrictions") {
    CHECK_THROWS_AS(adjoint_model(5), InvalidArgument);
    CHECK_THROWS_AS(adjoint_model(27), CapacityExceeded);
}

TEST_CASE("quotient section projection") {
    const auto model = adjoint_model(3);
    const auto& sec = model.section;
    const auto& F = *model.field;
    // the identity matrix spans the radical and projects to zero
    Vec id(9);
    id[0] = id[4] = id[8] = F.one();
    for (auto x : sec.project(id)) CHECK(x.is_zero());
    // lifts project to the standard basis
    for (std::size_t i = 0; i < sec.dim(); ++i) {
        const auto v = sec.project(sec.lifts().row(i));
        for (std::size_t j = 0; j < v.size(); ++j) CHECK(v[j] == (i == j ? F.one() : F.zero()));
    }
    Vec off(9);
    off[0] = F.one();  // trace 1: outside U
    CHECK_THROWS_AS(sec.project(off), InvalidArgument);
}

TEST_CASE("exterior square section") {
    const auto m = extsq_model(3);
    const auto& F = *m.field;
    CHECK(m.section.dim() == 13);
    CHECK(m.form.kind() == FormKind::QuadraticParabolic);
    CHECK(ExtSquareModel::wedge_index(0, 1) == 0);
    CHECK(ExtSquareModel::wedge_index(4, 5) == 14);
    CHECK_NOTHROW(validate_generators(m.form, m.generators));
    // h is fixed by the exterior square of every Sp6 generator
    for (const auto& g : m.sp6_generators.elements) CHECK(vec_mat(F, m.h, wedge_square(F, g.matrix())) == m.h);
    // wedge is alternating and natural
    std::mt19937 rng(8);
    for (int t = 0; t < 20; ++t) {
        const auto u = random_vec(F, 6, rng), v = random_vec(F, 6, rng);
        for (auto x : wedge(F, u, u)) CHECK(x.is_zero());
        const auto& g = m.sp6_generators.elements[t % m.sp6_generators.elements.size()].matrix();
        CHECK(wedge(F, vec_mat(F, u, g), vec_mat(F, v, g)) == vec_mat(F, wedge(F, u, v), wedge_square(F, g)));
    }
    // u ^ v is singular in the section whenever u and v are perpendicular
    int checked = 0;
    while (checked < 100) {
        const auto u = random_vec(F, 6, rng), v = random_vec(F, 6, rng);
        if (!m.natural.evaluate_pair(u, v).is_zero()) continue;
        const auto w = wedge(F, u, v);
        CHECK(m.form.evaluate(m.section.project(w)).is_zero());
        ++checked;
    }
    CHECK_THROWS_AS(extsq_model(9), CapacityExceeded);
    CHECK_THROWS_AS(extsq_model(4), InvalidArgument);
}

TEST_CASE("D-length partitions") {
    struct Want {
        FormKind kind;
        std::uint32_t q;
        std::size_t t;
        std::vector<std::size_t> lengths;
        std::vector<std::uint64_t> sizes;
        bool tight;
        std::vector<std::uint64_t> params;
    };
    const std::vector<Want> cases = {
        {FormKind::Hermitian, 4, 4, {2, 4}, {18, 27}, false, {2, 3}},
        {FormKind::Hermitian, 4, 5, {2, 4}, {30, 135}, true, {6, 27}},
        {FormKind::QuadraticMinus, 3, 6, {3, 6}, {80, 32}, true, {20, 8}},
        {FormKind::QuadraticParabolic, 3, 7, {3, 6}, {140, 224}, false, {5, 8}},
        {FormKind::QuadraticPlus, 3, 8, {3, 6}, {224, 896}, false, {8, 32}},
    };
    for (const auto& w : cases) {
        CAPTURE(short_name(w.kind));
        CAPTURE(w.t);
        const auto dp = dlength_partition(w.kind, w.q, w.t);
        CHECK(dp.lengths == w.lengths);
        for (std::size_t k = 0; k < w.lengths.size(); ++k) {
            const auto& cls = dp.of_length(w.lengths[k]);
            CHECK(cls.size() == w.sizes[k]);
            const auto r = classify(cls);
            CHECK((w.tight ? r.tight_i : r.ovoid_m) == w.params[k]);
            for (auto i : cls.members()) CHECK(d_length(dp.space->coords(i)) == w.lengths[k]);
        }
        // invariant under the full monomial group
        const auto mono = classical_generators(
            w.kind == FormKind::Hermitian ? GroupFamily::GU1WrSym : GroupFamily::GO1WrSym, w.t, FiniteField::of_order(w.q));
        const auto parts = orbits(dp.space, mono.generators, {2});
        for (std::uint32_t i = 0; i < dp.space->size(); ++i)
            CHECK(d_length(dp.space->coords(parts.orbit_id[i])) == d_length(dp.space->coords(i)));
    }
    const auto q43 = dlength_partition(FormKind::QuadraticParabolic, 3, 5);
    CHECK(q43.lengths == std::vector<std::size_t>{3});
    CHECK(q43.classes[0].size() == 40);
    CHECK_THROWS_AS((void)q43.of_length(2), InvalidArgument);
    CHECK_THROWS_AS(dlength_partition(FormKind::QuadraticPlus, 3, 6), InvalidArgument);
}

TEST_CASE("monomial subgroups of Q(4,3)") {
    const auto dp = dlength_partition(FormKind::QuadraticParabolic, 3, 5);
    auto split = [&](std::vector<std::uint64_t> sizes, bool tight, std::vector<std::uint64_t> params) {
        return find_monomial_split(dp.space, [=](const OrbitPartition& o) {
            if (o.sorted_sizes() != sizes) return false;
            std::vector<std::pair<std::uint64_t, std::uint64_t>> got;
            for (std::size_t k = 0; k < o.num_orbits(); ++k) {
                const auto r = classify(o.orbit(k), 1);
                const auto p = tight ? r.tight_i : r.ovoid_m;
                if (!p) return false;
                got.emplace_back(o.orbit_sizes[k], *p);
            }
            std::sort(got.begin(), got.end());
            for (std::size_t k = 0; k < got.size(); ++k)
                if (got[k].second != params[k]) return false;
            return true;
        });
    };
    const auto ovoids = split({20, 20}, false, {2, 2});
    REQUIRE(ovoids.has_value());
    check_two_orbit(ovoids->orbits);
    const auto tight = split({16, 24}, true, {4, 6});
    REQUIRE(tight.has_value());
    check_two_orbit(tight->orbits);
    CHECK_NOTHROW(validate_generators(dp.space->form(), tight->generators));
}

TEST_CASE("SL2(5) inside SL2(9)") {
    const auto F9 = FiniteField::of_order(9);
    const auto w = Form::standard(FormKind::Symplectic, 2, F9);
    const auto fr = reduce(1, w, FiniteField::of_order(3));
    for (auto cls : {Sl25Class::TightSets, Sl25Class::Ovoids}) {
        const auto gens = sl2_5_in_sl2_9(cls);
        REQUIRE(gens.elements.size() == 2);
        for (const auto& g : gens.elements) CHECK(det(*F9, g.matrix()) == F9->one());
        auto order = [&](const Matrix& m) {
            Matrix p = m;
            std::uint64_t k = 1;
            while (!(p == Matrix::identity(2))) {
                p = mul(*F9, p, m);
                ++k;
            }
            return k;
        };
        CHECK(order(gens.elements[0].matrix()) == 4);
        CHECK(order(gens.elements[1].matrix()) == 5);
        CHECK(vector_orbits(w, gens) == std::vector<std::uint64_t>{40, 40});
        GeneratorSet flat;
        for (const auto& g : gens.elements) flat.elements.push_back(fr->flatten(g));
        const auto parts = orbits(fr->small_space(), flat);
        CHECK(parts.sorted_sizes() == std::vector<std::uint64_t>{20, 20});
        check_two_orbit(parts);
        for (std::size_t k = 0; k < 2; ++k) {
            const auto r = classify(parts.orbit(k));
            if (cls == Sl25Class::TightSets)
                CHECK(r.tight_i == 5);
            else
                CHECK(r.ovoid_m == 2);
            // the orbits meet every GF(9)-point in two of its four GF(3)-points,
            // so they are not unions of GF(9)* classes
            CHECK_THROWS_AS(lift_up(*fr, parts.orbit(k)), InvalidArgument);
        }
    }
}
