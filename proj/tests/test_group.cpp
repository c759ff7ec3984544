#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "polarkit/group.hpp"

using namespace polarkit;

namespace {

Matrix random_invertible(const FieldPtr& F, std::size_t n, std::mt19937& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(0, F->q() - 1);
    for (;;) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = FieldElement{pick(rng)};
        if (!det(*F, m).is_zero()) return m;
    }
}

// Orbit invariance checked with the oracle's arithmetic: each generator maps
// each orbit into itself.
void check_orbits_invariant(const OrbitPartition& parts, const GeneratorSet& gens) {
    const auto& s = *parts.space;
    const auto O = oracle::Field::of_order(s.q());
    const auto d = s.dim();
    for (const auto& g : gens.elements) {
        for (std::uint32_t i = 0; i < s.size(); ++i) {
            const auto c = s.coords(i);
            oracle::Vec v(c.begin(), c.end());
            for (auto& x : v) x = O.pow(x, oracle::ipow(O.p, g.sigma_power()));
            Vec image(d);
            for (std::size_t j = 0; j < d; ++j) {
                std::uint32_t acc = 0;
                for (std::size_t k = 0; k < d; ++k) acc = O.add(acc, O.mul(v[k], g.matrix()(k, j).code()));
                image[j] = FieldElement{acc};
            }
            const auto idx = s.index_of(image);
            REQUIRE(idx.has_value());
            CHECK(parts.orbit_id[*idx] == parts.orbit_id[i]);
        }
    }
}

}  // namespace

TEST_CASE("semisimilarity composition and inverse") {
    std::mt19937 rng(1);
    const auto F = FiniteField::of_order(9);
    for (int t = 0; t < 20; ++t) {
        const Semisimilarity a(F, random_invertible(F, 3, rng), t % 2);
        const Semisimilarity b(F, random_invertible(F, 3, rng), (t / 2) % 2);
        const Vec v{FieldElement{1}, FieldElement{5}, FieldElement{7}};
        CHECK(a.then(b).apply(v) == b.apply(a.apply(v)));
        CHECK(a.then(a.inverse()).apply(v) == v);
        CHECK(a.inverse().then(a) == Semisimilarity(F, Matrix::identity(3)));
    }
    CHECK_THROWS_AS(Semisimilarity(F, Matrix(2, 2)), InvalidArgument);
}

TEST_CASE("classical generators preserve their forms") {
    const std::vector<std::tuple<GroupFamily, std::size_t, std::uint32_t>> cases = {
        {GroupFamily::Sp, 4, 3},         {GroupFamily::Sp, 6, 2},         {GroupFamily::SU, 3, 4},
        {GroupFamily::SU, 4, 4},         {GroupFamily::SU, 3, 9},         {GroupFamily::OmegaPlus, 6, 2},
        {GroupFamily::OmegaPlus, 8, 3},  {GroupFamily::OmegaMinus, 6, 3}, {GroupFamily::OmegaMinus, 6, 2},
        {GroupFamily::Omega, 5, 3},      {GroupFamily::Omega, 7, 3},      {GroupFamily::GO1WrSym, 5, 3},
        {GroupFamily::GU1WrSym, 4, 4},
    };
    for (const auto& [fam, d, q] : cases) {
        CAPTURE(family_name(fam));
        CAPTURE(d);
        CAPTURE(q);
        const auto cg = classical_generators(fam, d, FiniteField::of_order(q));
        CHECK_NOTHROW(validate_generators(cg.form, cg.generators));
        for (const auto& g : cg.generators.elements) CHECK(multiplier(cg.form, g).has_value());
        if (fam == GroupFamily::GO1WrSym || fam == GroupFamily::GU1WrSym) continue;
        // the classical groups are transitive on points
        const auto s = PolarSpace::build(cg.form);
        const auto parts = orbits(s, cg.generators);
        CHECK(parts.num_orbits() == 1);
        check_orbits_invariant(parts, cg.generators);
    }
    CHECK(parse_family("OmegaMinus") == GroupFamily::OmegaMinus);
    CHECK_FALSE(parse_family("omega"));
}

TEST_CASE("a corrupted generator is rejected with its index") {
    const auto cg = classical_generators(GroupFamily::Sp, 4, FiniteField::of_order(3));
    auto gens = cg.generators;
    auto m = gens.elements.back().matrix();
    m(0, 0) = cg.form.field()->add(m(0, 0), FieldElement{1});
    if (det(*cg.form.field(), m).is_zero()) m(1, 1) = cg.form.field()->add(m(1, 1), FieldElement{1});
    gens.elements.push_back(Semisimilarity(cg.form.field(), m));
    const auto bad = gens.elements.size() - 1;
    try {
        validate_generators(cg.form, gens);
        FAIL("corrupted generator accepted");
    } catch (const FormInvarianceError& e) {
        CHECK(e.generator_index() == bad);
    }
}

TEST_CASE("multipliers and field automorphisms") {
    const auto F = FiniteField::of_order(4);
    const auto form = Form::standard(FormKind::Hermitian, 3, F);
    // scalar matrix w I scales the Hermitian form by N(w) = w^3 = 1
    Matrix sc = Matrix::identity(3);
    for (std::size_t i = 0; i < 3; ++i) sc(i, i) = F->generator();
    CHECK(multiplier(form, Semisimilarity(F, sc)) == F->one());
    // the Frobenius map alone is a semisimilarity of the identity form
    CHECK(multiplier(form, Semisimilarity(F, Matrix::identity(3), 1)) == F->one());
    const auto W = Form::standard(FormKind::Symplectic, 4, FiniteField::of_order(3));
    Matrix diag = Matrix::identity(4);
    diag(0, 0) = diag(1, 1) = FieldElement{2};
    CHECK(multiplier(W, Semisimilarity(W.field(), diag)) == FieldElement{2});
}

TEST_CASE("trivial and empty groups") {
    const auto s = PolarSpace::build(Form::standard(FormKind::Symplectic, 4, FiniteField::of_order(3)));
    const auto parts = orbits(s, GeneratorSet{});
    CHECK(parts.num_orbits() == 40);
    for (auto n : parts.orbit_sizes) CHECK(n == 1);
}

TEST_CASE("orbits are deterministic across thread counts") {
    const auto cg = classical_generators(GroupFamily::GO1WrSym, 5, FiniteField::of_order(3));
    const auto s = PolarSpace::build(cg.form);
    const auto one = orbits(s, cg.generators, {1});
    check_orbits_invariant(one, cg.generators);
    for (unsigned t : {2u, 3u, 8u}) {
        const auto many = orbits(s, cg.generators, {t});
        CHECK(many.orbit_id == one.orbit_id);
        CHECK(many.orbit_sizes == one.orbit_sizes);
    }
    std::uint64_t total = 0;
    for (auto n : one.orbit_sizes) total += n;
    CHECK(total == s->size());
    const auto sorted = one.sorted_sizes();
    CHECK(std::is_sorted(sorted.begin(), sorted.end()));
}

TEST_CASE("point permutations are bijections") {
    const auto cg = classical_generators(GroupFamily::SU, 4, FiniteField::of_order(4));
    const auto s = PolarSpace::build(cg.form);
    for (const auto& g : cg.generators.elements) {
        auto perm = point_permutation(*s, g);
        std::sort(perm.begin(), perm.end());
        for (std::uint32_t i = 0; i < perm.size(); ++i) CHECK(perm[i] == i);
    }
}

TEST_CASE("vector orbits") {
    const auto cg = classical_generators(GroupFamily::Sp, 4, FiniteField::of_order(3));
    CHECK(vector_orbits(cg.form, cg.generators) == std::vector<std::uint64_t>{80});
    CHECK(vector_orbits(cg.form, GeneratorSet{}).size() == 80);
    CHECK_THROWS_AS(vector_orbits(cg.form, cg.generators, 10), CapacityExceeded);
    const auto with = cg.generators.with_inverses();
    CHECK(with.elements.size() >= cg.generators.elements.size());
}
