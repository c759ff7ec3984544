#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "polarkit/polar.hpp"

using namespace polarkit;

namespace {

struct Case {
    FormKind kind;
    const char* name;
    std::size_t d;
    std::uint32_t q;
};

// The point-count suite plus a few small extras.
const std::vector<Case> kSpaces = {
    {FormKind::Symplectic, "W", 4, 3},         {FormKind::Symplectic, "W", 6, 2},
    {FormKind::QuadraticParabolic, "Q", 5, 3}, {FormKind::QuadraticParabolic, "Q", 7, 3},
    {FormKind::QuadraticPlus, "Q+", 6, 2},     {FormKind::QuadraticPlus, "Q+", 8, 2},
    {FormKind::QuadraticPlus, "Q+", 8, 3},     {FormKind::QuadraticMinus, "Q-", 6, 2},
    {FormKind::QuadraticMinus, "Q-", 6, 3},    {FormKind::Hermitian, "H", 4, 4},
    {FormKind::Hermitian, "H", 5, 4},          {FormKind::Hermitian, "H", 3, 9},
    {FormKind::QuadraticMinus, "Q-", 4, 5},    {FormKind::Symplectic, "W", 4, 4},
};

SpacePtr build(const Case& c, BuildOptions opts = {}) {
    return PolarSpace::build(Form::standard(c.kind, c.d, FiniteField::of_order(c.q)), opts);
}

oracle::Vec to_oracle(std::span<const std::uint8_t> c) { return oracle::Vec(c.begin(), c.end()); }

}  // namespace

TEST_CASE("enumerated points equal the exhaustive scan") {
    for (const auto& c : kSpaces) {
        CAPTURE(c.name);
        CAPTURE(c.d);
        CAPTURE(c.q);
        const auto s = build(c);
        const oracle::StdForm ref(c.q, c.name, c.d);
        const auto pts = oracle::points(ref);
        REQUIRE(s->size() == pts.size());
        for (std::uint32_t i = 0; i < s->size(); ++i) REQUIRE(to_oracle(s->coords(i)) == pts[i]);
        const auto r = oracle::rank_of(c.name, c.d);
        CHECK(s->rank() == r);
        CHECK(s->theta() == oracle::theta(c.name, c.d, c.q, r));
        CHECK(s->size() == (oracle::ipow(c.q, static_cast<std::uint32_t>(r)) - 1) / (c.q - 1) * s->theta());
    }
}

TEST_CASE("scan and algebraic enumeration agree") {
    for (const auto& c : kSpaces) {
        const auto a = build(c, {.method = BuildOptions::Method::Scan});
        const auto b = build(c, {.method = BuildOptions::Method::Algebraic});
        REQUIRE(a->size() == b->size());
        for (std::uint32_t i = 0; i < a->size(); ++i) CHECK(a->code(i) == b->code(i));
    }
}

TEST_CASE("index lookup and collinearity") {
    for (const auto& c : kSpaces) {
        const auto s = build(c);
        const oracle::StdForm ref(c.q, c.name, c.d);
        const auto& F = *s->field();
        std::mt19937 rng(c.q + c.d);
        std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(s->size() - 1));
        for (int t = 0; t < 200; ++t) {
            const auto i = pick(rng), j = pick(rng);
            CHECK(s->collinear(i, j) == (ref.pair(to_oracle(s->coords(i)), to_oracle(s->coords(j))) == 0));
            CHECK(s->index_of(scale(F, F.exp(t), s->point(i))) == i);
        }
        CHECK(s->collinear(0, 0));
        std::uint64_t h = 0;
        for (std::uint32_t j = 0; j < s->size(); ++j)
            if (s->collinear(0, j)) ++h;
        CHECK(s->h1_trivial() == h);
    }
}

TEST_CASE("maximal subspace") {
    for (const auto& c : kSpaces) {
        const auto s = build(c);
        const auto& pts = s->maximal_subspace_points();
        CHECK(s->maximal_subspace().dim() == s->rank());
        CHECK(pts.size() == (oracle::ipow(c.q, static_cast<std::uint32_t>(s->rank())) - 1) / (c.q - 1));
        for (auto i : pts)
            for (auto j : pts) CHECK(s->collinear(i, j));
    }
}

TEST_CASE("point sets") {
    const auto s = build(kSpaces[0]);
    const PointSet a(s, {0, 3, 5, 7});
    const auto b = PointSet::from_unsorted(s, {7, 1, 3});
    CHECK(b.members() == std::vector<std::uint32_t>{1, 3, 7});
    CHECK(a.intersect(b).members() == std::vector<std::uint32_t>{3, 7});
    CHECK(a.complement().size() == 36);
    CHECK(a.complement().complement() == a);
    CHECK(a.contains(5));
    CHECK_FALSE(a.contains(4));
    CHECK(PointSet::all(s).size() == 40);
    CHECK_THROWS_AS(PointSet(s, {3, 1}), InvalidArgument);
    CHECK_THROWS_AS(PointSet(s, {40}), InvalidArgument);
}

TEST_CASE("perp counts equal brute force") {
    for (const auto& c : kSpaces) {
        const auto s = build(c);
        const oracle::StdForm ref(c.q, c.name, c.d);
        const auto all = oracle::points(ref);
        std::vector<std::uint32_t> members;
        for (std::uint32_t i = 0; i < s->size(); i += 3) members.push_back(i);
        const PointSet m(s, members);
        for (unsigned threads : {1u, 4u}) {
            const auto counts = perp_counts(m, threads);
            REQUIRE(counts.size() == s->size());
            for (std::uint32_t i = 0; i < s->size(); i += 5) {
                std::uint32_t n = 0;
                for (auto j : members)
                    if (ref.pair(all[i], all[j]) == 0) ++n;
                CHECK(counts[i] == n);
            }
        }
    }
}

TEST_CASE("perp residual") {
    const auto F = FiniteField::of_order(3);
    const auto s = PolarSpace::build(Form::standard(FormKind::QuadraticParabolic, 5, F));
    Vec w(5);
    w[1] = FieldElement{1};
    w[2] = FieldElement{2};
    const auto res = perp_residual(s, Subspace::span(F, 5, {w}));
    CHECK(res.size() == 10);  // an elliptic quadric Q-(3,3)
    for (auto i : res.members()) CHECK(s->form().evaluate_pair(s->point(i), w).is_zero());
}

TEST_CASE("unsupported and oversized spaces") {
    const auto F3 = FiniteField::of_order(3);
    CHECK_THROWS_AS(PolarSpace::build(Form::standard(FormKind::QuadraticPlus, 4, F3)), InvalidArgument);
    CHECK(PolarSpace::build(Form::standard(FormKind::QuadraticPlus, 4, F3), {.allow_hyperbolic_3 = true})->size() == 16);
    CHECK_THROWS_AS(PolarSpace::build(Form::standard(FormKind::QuadraticPlus, 12, F3), {.point_cap = 1000}),
                    CapacityExceeded);
    CHECK_THROWS_AS(PolarSpace::build(Form::standard(FormKind::QuadraticMinus, 2, F3)), InvalidArgument);
}

TEST_CASE("closed-form parameters") {
    const auto pp = polar_parameters(FormKind::Hermitian, 5, 4);
    CHECK(pp.rank == 2);
    CHECK(pp.theta == 33);
    CHECK(pp.theta_prev == 9);
    CHECK(pp.gaussian == 5);
    CHECK(pp.num_points == 165);
    CHECK(polar_parameters(FormKind::QuadraticMinus, 6, 3).num_points == 112);
    CHECK(polar_parameters(FormKind::QuadraticPlus, 8, 3).num_points == 1120);
}
