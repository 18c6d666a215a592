#include "defq/normalize.hpp"
#include "defq/promote.hpp"
#include "defq/verify.hpp"

#include <doctest.h>

using namespace defq;

namespace {

GradedElement central_scalar(const DglaPtr& space, int order, int at, const Rational& c) {
    GradedElement x(space, -1, order);
    LPolyDiffOp op;
    op.slots = 0;
    op.terms[SlotKey{}] = RatFunc(Poly::constant(plane_model()->vars(), c));
    x.set_coeff(at, Value(std::move(op)));
    return x;
}

GradedElement scalar_elem(const DglaPtr& space, int order, int at, const RatFunc& f) {
    GradedElement x(space, -1, order);
    LPolyDiffOp op;
    op.slots = 0;
    if (!f.is_zero()) op.terms[SlotKey{}] = f;
    x.set_coeff(at, Value(std::move(op)));
    return x;
}

GradedElement derivation_elem(const DglaPtr& space, int order, int at, int dir) {
    GradedElement x(space, 0, order);
    MultiIndex m = multi_zero(2);
    m[static_cast<size_t>(dir)] = 1;
    x.set_coeff(at, Value(op_monomial(1, SlotKey{m}, plane_model()->one_fn())));
    return x;
}

} // namespace

TEST_CASE("weak_mc_check on the trivial and Moyal triples") {
    auto space = plane_diffop();
    int N = 2;

    // (Pi MC, g = 1 with all Pi equal, a = 1) passes on any cover
    for (auto shape : {two_open_shape(), full_simplex_shape(3), circle_shape()}) {
        WeakMCTriple w = trivial_triple(shape, GradedElement(space, 1, N));
        CHECK(weak_mc_check(w).passed);
    }

    // global Moyal element restricted to a two-open cover of the plane
    LPolyVector pi = pv_monomial(2, {0, 1}, plane_model()->one_fn());
    GradedElement star = moyal_generate(space, pi, N);
    WeakMCTriple moyal = trivial_triple(two_open_shape(), star);
    CHECK(weak_mc_check(moyal).passed);

    // perturbing one a_ijk by h*c breaks condition (3) at order 1 on its tuple
    auto shape3 = full_simplex_shape(3);
    WeakMCTriple w3 = trivial_triple(shape3, star);
    // a nonconstant scalar log has d_Pi a != 0
    RatFunc xfn(Poly::variable(plane_model()->vars(), 0));
    w3.a.at(Tuple{0, 1, 2}) =
        TwoCellElement(scalar_elem(space, N, 1, xfn), w3.pi_at(0));
    WeakMCReport rep = weak_mc_check(w3);
    CHECK_FALSE(rep.passed);
    bool found = false;
    for (const auto& c : rep.conditions)
        if (c.condition == 3 && !c.passed) {
            found = true;
            CHECK(c.tuple == Tuple{0, 1, 2});
            CHECK(c.first_fail_order == 1);
        }
    CHECK(found);
}

TEST_CASE("weak_equiv_apply") {
    auto space = plane_diffop();
    int N = 2;
    auto shape = two_open_shape();
    LPolyVector pi = pv_monomial(2, {0, 1}, plane_model()->one_fn());
    GradedElement star = moyal_generate(space, pi, N);
    WeakMCTriple w = trivial_triple(shape, star);

    // the identity equivalence leaves the triple unchanged
    WeakMCTriple same = weak_equiv_apply(weak_equiv_identity(w), w);
    CHECK(ge_equal(same.pi_at(0), w.pi_at(0)));
    CHECK(ge_equal(same.g_at(0, 1).log, w.g_at(0, 1).log));
    CHECK(ge_equal(same.a_at(Tuple{}).log, w.a_at(Tuple{}).log) == false); // guard: bad tuple
}

TEST_CASE("weak_equiv_apply with a global gauge conjugates the local data") {
    auto space = plane_diffop();
    int N = 2;
    auto shape = full_simplex_shape(3);
    LPolyVector pi = pv_monomial(2, {0, 1}, plane_model()->one_fn());
    GradedElement star = moyal_generate(space, pi, N);
    WeakMCTriple w = trivial_triple(shape, star);

    Rng rng(7);
    GaugeElement gam = random_gauge(space, rng, N, 1);
    WeakEquivalence e = weak_equiv_identity(w);
    for (auto& [i, g] : e.gamma) g = gam;
    WeakMCTriple out = weak_equiv_apply(e, w);
    GradedElement expect = gauge_apply(gam, star);
    for (int i = 0; i < 3; ++i) CHECK(ge_equal(out.pi_at(i), expect));
    for (const auto& t : shape->tuples_of_size(2))
        CHECK(out.g_at(t[0], t[1]).log.is_zero()); // gamma g gamma^{-1} = 1
    for (const auto& t : shape->tuples_of_size(3)) CHECK(out.a_at(t).log.is_zero());
    CHECK(weak_mc_check(out).passed);
}

TEST_CASE("two-open transition removed by a matching equivalence") {
    // w = (0, exp(h c), 1) with c = d/dx; condition (2) forces gamma_1 =
    // exp(-h c), and the result is (0, 1, 1)
    auto space = plane_diffop();
    int N = 2;
    auto shape = two_open_shape();
    WeakMCTriple w = trivial_triple(shape, GradedElement(space, 1, N));
    w.g.at(Pair{0, 1}) = GaugeElement(derivation_elem(space, N, 1, 0));
    REQUIRE(weak_mc_check(w).passed);

    WeakEquivalence e = weak_equiv_identity(w);
    e.gamma.at(1) = GaugeElement(ge_neg(derivation_elem(space, N, 1, 0)));
    WeakMCTriple out = weak_equiv_apply(e, w);
    CHECK(weak_mc_check(out).passed);
    CHECK(out.pi_at(0).is_zero());
    CHECK(out.pi_at(1).is_zero());
    CHECK(out.g_at(0, 1).log.is_zero());
    CHECK(out.a.empty());
}

TEST_CASE("normalize_acyclic") {
    auto space = plane_diffop();
    int N = 2;
    LinearOracle linear;
    ConeOracle cone;

    // already of the form (Pi, 1, 1): unchanged with an empty chain
    LPolyVector pi = pv_monomial(2, {0, 1}, plane_model()->one_fn());
    GradedElement star = moyal_generate(space, pi, N);
    WeakMCTriple w0 = trivial_triple(full_simplex_shape(3), star);
    NormalizeResult r0 = normalize_acyclic(w0, linear);
    CHECK(r0.chain.empty());
    CHECK(ge_equal(r0.normal_form.pi_at(0), star));

    // the two-open transition example normalizes to (0,1,1) in one phase-2 step
    WeakMCTriple w1 = trivial_triple(two_open_shape(), GradedElement(space, 1, N));
    w1.g.at(Pair{0, 1}) = GaugeElement(derivation_elem(space, N, 1, 0));
    NormalizeResult r1 = normalize_acyclic(w1, cone);
    CHECK(r1.chain.size() == 1);
    CHECK(r1.normal_form.g_at(0, 1).log.is_zero());
    CHECK(r1.normal_form.pi_at(0).is_zero());
    // the returned equivalence is gamma = (1, exp(-h c))
    CHECK(r1.chain[0].gamma.at(0).log.is_zero());
    CHECK(ge_equal(r1.chain[0].gamma.at(1).log, ge_neg(derivation_elem(space, N, 1, 0))));

    // three-open full simplex with a = exp(h db0): killed at order 1 by phase 1
    auto shape3 = full_simplex_shape(3);
    WeakMCTriple w2 = trivial_triple(shape3, GradedElement(space, 1, N));
    WeakEquivalence seed = weak_equiv_identity(w2);
    Rng rng(3);
    for (const auto& t : shape3->tuples_of_size(2))
        seed.alpha.at(Pair{t[0], t[1]}) =
            TwoCellElement(central_scalar(space, N, 1, Rational(rng.range(1, 4))),
                           w2.pi_at(t[0]));
    WeakMCTriple bent = weak_equiv_apply(seed, w2);
    REQUIRE(weak_mc_check(bent).passed);
    bool nontrivial_a = false;
    for (const auto& t : shape3->tuples_of_size(3))
        nontrivial_a = nontrivial_a || !bent.a_at(t).log.is_zero();
    REQUIRE(nontrivial_a);
    NormalizeResult r2 = normalize_acyclic(bent, cone);
    for (const auto& t : shape3->tuples_of_size(3))
        CHECK(r2.normal_form.a_at(t).log.is_zero());
    // oracle check: the first chain step's alpha satisfies d(b) = log a at order 1
    {
        CechCochain b;
        b.shape = shape3;
        b.inner = space;
        b.level = 1;
        b.degree = -1;
        for (const auto& t : shape3->tuples_of_size(2)) {
            Value v = r2.chain[0].alpha.at(Pair{t[0], t[1]}).log.coeff(1);
            if (!space->is_zero(-1, v)) b.values[t] = v;
        }
        CechCochain target;
        target.shape = shape3;
        target.inner = space;
        target.level = 2;
        target.degree = -1;
        for (const auto& t : shape3->tuples_of_size(3)) {
            Value v = bent.a_at(t).log.coeff(1);
            if (!space->is_zero(-1, v)) target.values[t] = v;
        }
        CHECK(cochain_equal(cech_coboundary(b), target));
    }
    // replaying the chain reproduces the normal form exactly
    WeakMCTriple replay = bent;
    for (const auto& e : r2.chain) replay = weak_equiv_apply(e, replay);
    for (int i = 0; i < 3; ++i) CHECK(ge_equal(replay.pi_at(i), r2.normal_form.pi_at(i)));
    for (const auto& t : shape3->tuples_of_size(2))
        CHECK(ge_equal(replay.g_at(t[0], t[1]).log, r2.normal_form.g_at(t[0], t[1]).log));

    // the circle-shaped cover with a constant transition 1-cocycle fails with
    // the offending cocycle reported
    WeakMCTriple w3 = trivial_triple(circle_shape(), GradedElement(space, 1, N));
    w3.g.at(Pair{0, 1}) = GaugeElement(derivation_elem(space, N, 1, 0));
    w3.g.at(Pair{1, 2}) = GaugeElement(derivation_elem(space, N, 1, 0));
    REQUIRE(weak_mc_check(w3).passed);
    try {
        normalize_acyclic(w3, LinearOracle());
        CHECK(false);
    } catch (const OracleError& err) {
        std::string msg = err.what();
        CHECK(msg.find("phase 2") != std::string::npos);
        CHECK(msg.find("(0,1)") != std::string::npos);
    }
}

TEST_CASE("promote_actual") {
    auto space = plane_diffop();
    int N = 3;
    LinearOracle linear;
    ConstantsInvariants constants;
    auto shape = full_simplex_shape(3);
    LPolyVector pi = pv_monomial(2, {0, 1}, plane_model()->one_fn());
    GradedElement star = moyal_generate(space, pi, N);

    // already actual: unchanged
    WeakMCTriple w0 = trivial_triple(shape, star);
    PromoteResult r0 = promote_actual(w0, constants, linear);
    for (const auto& t : shape->tuples_of_size(3)) CHECK(r0.actual.a_at(t).log.is_zero());

    // an exact order-2 part is removed by a pure gauge step
    WeakMCTriple w1 = trivial_triple(shape, star);
    WeakEquivalence seed = weak_equiv_identity(w1);
    RatFunc xf(Poly::variable(plane_model()->vars(), 0));
    seed.alpha.at(Pair{0, 1}) = TwoCellElement(scalar_elem(space, N, 2, xf), w1.pi_at(0));
    WeakMCTriple exact = weak_equiv_apply(seed, w1);
    REQUIRE(weak_mc_check(exact).passed);
    PromoteResult r1 = promote_actual(exact, constants, linear);
    for (const auto& t : shape->tuples_of_size(3)) CHECK(r1.actual.a_at(t).log.is_zero());
    CHECK(r1.transcript.find("gauge step") != std::string::npos);
    CHECK(r1.transcript.find("deleted") == std::string::npos); // no invariant part

    // a constant cocycle part is deleted wholesale
    WeakMCTriple w2 = trivial_triple(shape, star);
    for (const auto& t : shape->tuples_of_size(3)) {
        TwoCellElement& u = w2.a.at(t);
        u = TwoCellElement(ge_add(u.log, central_scalar(space, N, 2, Rational(5))), u.base);
    }
    REQUIRE(weak_mc_check(w2).passed); // central constants preserve all conditions
    PromoteResult r2 = promote_actual(w2, constants, linear);
    for (const auto& t : shape->tuples_of_size(3)) CHECK(r2.actual.a_at(t).log.is_zero());
    CHECK(r2.transcript.find("deleted") != std::string::npos);

    // promotion preserves the classical limit
    BivectorFamily before = skew_symmetrize_first_order(w2);
    BivectorFamily after = skew_symmetrize_first_order(r2.actual);
    for (int i = 0; i < 3; ++i) CHECK(pv_equal(before.pi.at(i), after.pi.at(i)));

    // inputs with a != 1 mod h^2 are refused
    WeakMCTriple w3 = trivial_triple(shape, star);
    for (const auto& t : shape->tuples_of_size(3)) {
        TwoCellElement& u = w3.a.at(t);
        u = TwoCellElement(ge_add(u.log, central_scalar(space, N, 1, Rational(1))), u.base);
    }
    CHECK_THROWS_AS(promote_actual(w3, constants, linear), DegreeError);
}

TEST_CASE("classical limits and the Poisson predicate") {
    auto space = plane_diffop();
    const AlgebroidModel& m = *plane_model();
    int N = 2;
    auto shape = two_open_shape();

    // Pi = h (dx (x) dy) has classical limit dx ^ dy
    WeakMCTriple w = trivial_triple(shape, moyal_generate(space, pv_monomial(2, {0, 1}, m.one_fn()), N));
    BivectorFamily fam = skew_symmetrize_first_order(w);
    CHECK(fam.first_order);
    CHECK(fam.overlaps_agree);
    CHECK(pv_equal(fam.pi.at(0), pv_monomial(2, {0, 1}, m.one_fn())));
    CHECK(poisson_check(m, *shape, fam.pi));

    // x dx ^ dy on the plane is Poisson (dimension 2)
    std::map<int, LPolyVector> pis;
    RatFunc xf(Poly::variable(m.vars(), 0));
    pis[0] = pv_monomial(2, {0, 1}, xf);
    pis[1] = pis[0];
    CHECK(poisson_check(m, *shape, pis));

    // a rank-2 bivector on four variables with nonzero self-bracket fails
    auto big = tangent_algebroid({"x", "y", "z", "w"}, "four");
    RatFunc zf(Poly::variable(big->vars(), 2));
    LPolyVector bad = pv_add(pv_monomial(2, {0, 1}, zf),
                             pv_monomial(2, {2, 3}, big->one_fn()));
    CHECK_FALSE(schouten(*big, bad, bad).is_zero());
    std::map<int, LPolyVector> bad_fam{{0, bad}, {1, bad}};
    CHECK_FALSE(poisson_check(*big, *shape, bad_fam));
}

TEST_CASE("Tot zero-simplices round trip") {
    auto space = plane_diffop();
    int N = 2;
    Rng rng(19);
    for (auto shape : {two_open_shape(), full_simplex_shape(3)}) {
        GradedElement pi = random_mc(space, rng, N, 1);
        WeakMCTriple w = trivial_triple(shape, pi);
        WeakMCTriple moved = weak_equiv_apply(random_weak_equivalence(w, rng, 1), w);
        REQUIRE(weak_mc_check(moved).passed);
        TotZeroSimplex tot = tot_from_triple(moved);
        WeakMCTriple back = triple_from_tot(tot);
        for (int i = 0; i < shape->index_count(); ++i)
            CHECK(ge_equal(back.pi_at(i), moved.pi_at(i)));
        for (const auto& t : shape->tuples_of_size(2))
            CHECK(ge_equal(back.g_at(t[0], t[1]).log, moved.g_at(t[0], t[1]).log));
        for (const auto& t : shape->tuples_of_size(3))
            CHECK(ge_equal(back.a_at(t).log, moved.a_at(t).log));
    }

    // a 4-tuple whose tetrahedron fails is rejected
    auto shape3 = full_simplex_shape(3);
    WeakMCTriple w = trivial_triple(shape3, GradedElement(space, 1, N));
    // breaking condition (3) on a triple also breaks the 2-simplex face data
    w.a.at(Tuple{0, 1, 2}) = TwoCellElement(
        scalar_elem(space, N, 1, RatFunc(Poly::variable(plane_model()->vars(), 0))),
        w.pi_at(0));
    CHECK_THROWS_AS(tot_from_triple(w), DegreeError);
}
