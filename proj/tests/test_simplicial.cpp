#include "defq/cech.hpp"
#include "defq/ordinal.hpp"
#include "defq/splitting.hpp"
#include "defq/verify.hpp"

#include <doctest.h>

using namespace defq;

TEST_CASE("ordinal composition and the generator relations") {
    // delta_1 . delta_0 : [0] -> [2] equals delta_0 . delta_0, both send 0 to 2
    OrdinalMap d0 = OrdinalMap::coface(1, 0);
    OrdinalMap lhs = ordinal_compose(d0, OrdinalMap::coface(2, 1));
    OrdinalMap rhs = ordinal_compose(d0, OrdinalMap::coface(2, 0));
    CHECK(lhs == rhs);
    CHECK(lhs(0) == 2);

    // sigma_0 . delta_0 = id on [0]
    OrdinalMap comp = ordinal_compose(OrdinalMap::coface(1, 0), OrdinalMap::codegeneracy(0, 0));
    CHECK(comp == OrdinalMap::identity(0));

    CHECK_THROWS_AS(ordinal_compose(OrdinalMap::identity(1), OrdinalMap::identity(2)),
                    DegreeError);
    CHECK_THROWS_AS(OrdinalMap(1, 1, {1, 0}), DegreeError); // not monotone
}

TEST_CASE("ordinal factorization is canonical and recomposes") {
    OrdinalFactorization idf = ordinal_factor(OrdinalMap::identity(3));
    CHECK(idf.deltas.empty());
    CHECK(idf.sigmas.empty());

    OrdinalFactorization d2 = ordinal_factor(OrdinalMap::coface(2, 2));
    CHECK(d2.deltas == std::vector<int>{2});
    CHECK(d2.sigmas.empty());

    // the constant map [2] -> [1] with images (1,1,1)
    OrdinalMap constant(2, 1, {1, 1, 1});
    OrdinalFactorization cf = ordinal_factor(constant);
    CHECK(ordinal_recompose(cf) == constant);

    // exhaustive: recompose . factor = id on all maps with m, n <= 5
    for (int m = 0; m <= 5; ++m)
        for (int n = 0; n <= 5; ++n)
            for (const OrdinalMap& f : all_ordinal_maps(m, n))
                CHECK(ordinal_recompose(ordinal_factor(f)) == f);
}

TEST_CASE("cover shapes validate closure") {
    CHECK_NOTHROW(CoverShape(3, {{0, 1}, {0, 2}, {1, 2}, {0, 1, 2}}));
    CHECK_THROWS_AS(CoverShape(3, {{0, 1, 2}}), ShapeError); // pairs missing
    CHECK_THROWS_AS(CoverShape(2, {{1, 0}}), ShapeError);    // not increasing
    CHECK_THROWS_AS(CoverShape(2, {{0, 5}}), ShapeError);    // out of range
    CHECK(full_simplex_shape(3)->cone_over_zero());
    CHECK_FALSE(circle_shape()->cone_over_zero());
    CHECK(two_open_shape()->cone_over_zero());
}

TEST_CASE("cech complex of a one-index cover is constant") {
    auto shape = std::make_shared<CoverShape>(1, std::set<Tuple>{});
    CechComplex cx = cech_build(shape, plane_diffop(), 3);
    Rng rng(2);
    GradedElement x(cx.level(0), 0, 1);
    x.set_coeff(1, cx.level(0)->random_value(0, rng, 1));
    // both cofaces agree on the constant object and d vanishes
    CHECK(ge_equal(cx.coface(0, 0, x), cx.coface(0, 1, x)));
    CHECK(cx.differential(0, x).is_zero());
    CHECK(cx.differential(1, cx.coface(0, 0, x)).is_zero());
}

TEST_CASE("cech differential: alternating sums and d.d = 0") {
    auto shape = two_open_shape();
    DglaPtr space = plane_diffop();
    CechComplex cx = cech_build(shape, space, 3);

    // x = (c0, c1) at level 0 maps to c1 - c0 on (0,1)
    Rng rng(5);
    Value c0 = space->random_value(0, rng, 1);
    Value c1 = space->random_value(0, rng, 1);
    CechMap level0{{Tuple{0}, c0}, {Tuple{1}, c1}};
    GradedElement x(cx.level(0), 0, 1);
    x.set_coeff(1, Value(level0));
    GradedElement dx = cx.differential(0, x);
    const CechMap& out = dx.coeff(1).as<CechMap>();
    auto it = out.find(Tuple{0, 1});
    REQUIRE(it != out.end());
    CHECK(space->equal(0, it->second, space->add(0, c1, space->scale(0, Rational(-1), c0))));

    // constant data lies in the kernel of the level-0 differential
    CechMap constant{{Tuple{0}, c0}, {Tuple{1}, c0}};
    GradedElement xc(cx.level(0), 0, 1);
    xc.set_coeff(1, Value(constant));
    CHECK(cx.differential(0, xc).is_zero());

    auto big = full_simplex_shape(3);
    CechComplex cx3 = cech_build(big, space, 4);
    for (int level = 0; level <= 2; ++level) {
        GradedElement y(cx3.level(level), 0, 1);
        y.set_coeff(1, cx3.level(level)->random_value(0, rng, 1));
        CHECK(cx3.differential(level + 1, cx3.differential(level, y)).is_zero());
    }
    CHECK_THROWS_AS(cx3.level(9), ShapeError); // beyond the stored levels
}

TEST_CASE("non-functorial restrictions are rejected") {
    std::vector<std::string> vars{"x"};
    Poly den = Poly::variable(vars, 0);
    std::map<Tuple, std::vector<Poly>> denoms;
    denoms[Tuple{0}] = {den}; // declared on the big open but not on (0,1)
    auto shape = std::make_shared<CoverShape>(2, std::set<Tuple>{{0, 1}}, denoms);
    CHECK_THROWS_AS(cech_build(shape, plane_diffop(), 2), ShapeError);
}

TEST_CASE("cochain coboundary on strict tuples") {
    auto shape = full_simplex_shape(3);
    DglaPtr space = plane_diffop();
    Rng rng(7);
    CechCochain c;
    c.shape = shape;
    c.inner = space;
    c.level = 0;
    c.degree = 0;
    for (int i = 0; i < 3; ++i) c.values[Tuple{i}] = space->random_value(0, rng, 1);
    CechCochain dc = cech_coboundary(c);
    CHECK(cech_coboundary(dc).is_zero());
    // (dc)_{01} = c_1 - c_0
    CHECK(space->equal(0, dc.at(Tuple{0, 1}),
                       space->add(0, c.at(Tuple{1}),
                                  space->scale(0, Rational(-1), c.at(Tuple{0})))));
}

TEST_CASE("splitting oracles") {
    DglaPtr space = plane_diffop();
    Rng rng(13);

    // cone oracle on the two-open shape, level 1
    auto shape2 = two_open_shape();
    CechCochain h;
    h.shape = shape2;
    h.inner = space;
    h.level = 1;
    h.degree = 0;
    h.values[Tuple{0, 1}] = space->random_value(0, rng, 1);
    ConeOracle cone;
    auto b = cone.split(h);
    REQUIRE(b.has_value());
    CHECK(cochain_equal(cech_coboundary(*b), h));

    // linear oracle on the full 3-simplex, level 2 cocycle built as a
    // coboundary (so it must split)
    auto shape3 = full_simplex_shape(3);
    CechCochain base;
    base.shape = shape3;
    base.inner = space;
    base.level = 1;
    base.degree = -1;
    for (const auto& t : shape3->tuples_of_size(2))
        base.values[t] = space->random_value(-1, rng, 1);
    CechCochain cocycle = cech_coboundary(base);
    LinearOracle linear;
    auto split = linear.split(cocycle);
    REQUIRE(split.has_value());
    CHECK(cochain_equal(cech_coboundary(*split), cocycle));

    // the cone oracle agrees on cone shapes
    auto split_cone = cone.split(cocycle);
    REQUIRE(split_cone.has_value());
    CHECK(cochain_equal(cech_coboundary(*split_cone), cocycle));

    // nontrivial H^1 of the circle shape: the constant pattern (1, 0, 1) is a
    // cocycle (no triples) that is not a coboundary
    auto circle = circle_shape();
    CechCochain nontrivial;
    nontrivial.shape = circle;
    nontrivial.inner = space;
    nontrivial.level = 1;
    nontrivial.degree = -1;
    LPolyDiffOp one;
    one.slots = 0;
    one.terms[SlotKey{}] = plane_model()->one_fn();
    nontrivial.values[Tuple{0, 1}] = Value(one);
    nontrivial.values[Tuple{1, 2}] = Value(one);
    CHECK(cech_coboundary(nontrivial).is_zero());
    CHECK_FALSE(linear.split(nontrivial).has_value());

    // trivial oracle only accepts one-index covers
    TrivialOracle trivial;
    CHECK_FALSE(trivial.split(h).has_value());
}
