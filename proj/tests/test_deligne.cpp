#include "defq/nerve.hpp"
#include "defq/verify.hpp"

#include <doctest.h>

using namespace defq;

namespace {

struct Cells {
    DglaPtr space = plane_diffop();
    int order = 2;
    Rng rng{101};

    DelObject object() { return DelObject{random_mc(space, rng, order, 1)}; }
    DelOneCell arrow(const DelObject& x) {
        return DelOneCell(x, random_gauge(space, rng, order, 1));
    }
    DelTwoCell cell(const DelOneCell& f) {
        return DelTwoCell(f, random_two_cell(f.source.pi, rng, 1));
    }
};

} // namespace

TEST_CASE("objects must satisfy the MC equation") {
    auto space = plane_diffop();
    GradedElement bad(space, 1, 2);
    Rng rng(3);
    bad.set_coeff(1, space->random_value(1, rng, 2));
    bad.set_coeff(2, space->random_value(1, rng, 2));
    // a generic degree-1 element is not MC
    if (!mc_residual(bad).is_zero()) CHECK_THROWS_AS(DelObject{bad}, DegreeError);
    CHECK_NOTHROW(DelObject{GradedElement(space, 1, 2)});
}

TEST_CASE("two-cell target") {
    Cells c;
    DelObject x = c.object();
    DelOneCell f = c.arrow(x);

    // u = 0 gives back the source 1-cell
    CHECK(one_cell_equal(two_cell_target(DelTwoCell::identity(f)), f));

    // d_Pi u = 0 gives a 2-automorphism: a central constant log
    GradedElement central(c.space, -1, c.order);
    LPolyDiffOp one;
    one.slots = 0;
    one.terms[SlotKey{}] = plane_model()->one_fn();
    central.set_coeff(1, Value(one));
    DelTwoCell automorphism(f, TwoCellElement(central, x.pi));
    CHECK(one_cell_equal(two_cell_target(automorphism), f));

    // endpoints agree: the target 1-cell has the same source and target object
    DelTwoCell gen = c.cell(f);
    DelOneCell tgt = two_cell_target(gen);
    CHECK(ge_equal(tgt.source.pi, f.source.pi));
    CHECK(ge_equal(tgt.target_pi(), f.target_pi())); // oracle: gauge_apply both logs
}

TEST_CASE("vertical composition laws") {
    Cells c;
    DelObject x = c.object();
    DelOneCell f = c.arrow(x);
    DelTwoCell a1 = c.cell(f);
    DelTwoCell a2(two_cell_target(a1), random_two_cell(x.pi, c.rng, 1));
    DelTwoCell a3(two_cell_target(a2), random_two_cell(x.pi, c.rng, 1));

    CHECK(two_cell_equal(vcompose(a1, DelTwoCell::identity(f)), a1));
    CHECK(two_cell_equal(vcompose(DelTwoCell::identity(two_cell_target(a1)), a1), a1));
    CHECK(two_cell_equal(vcompose(vertical_inverse(a1), a1), DelTwoCell::identity(f)));
    CHECK(two_cell_equal(vcompose(a3, vcompose(a2, a1)), vcompose(vcompose(a3, a2), a1)));
    // composite target along the chain matches the single-step formula
    CHECK(one_cell_equal(two_cell_target(vcompose(a2, a1)), two_cell_target(a2)));
    CHECK_THROWS_AS(vcompose(a1, a1), DegreeError); // non-composable
}

TEST_CASE("horizontal composition and interchange") {
    Cells c;
    DelObject x = c.object();
    DelOneCell f = c.arrow(x);
    DelObject y{f.target_pi()};
    DelOneCell g(y, random_gauge(c.space, c.rng, c.order, 1));

    DelTwoCell a = c.cell(f);
    DelTwoCell b = c.cell(g);

    // both trivial: composite is trivial over the BCH composite
    DelTwoCell triv = hcompose(DelTwoCell::identity(g), DelTwoCell::identity(f));
    CHECK(triv.u.is_identity());
    CHECK(ge_equal(triv.source_one_cell.q.log, bch(g.q, f.q).log));

    // first 1-cell trivial: transport is the identity, logs multiply directly
    DelOneCell idx = DelOneCell::identity(x);
    DelTwoCell a_on_id = DelTwoCell(idx, random_two_cell(x.pi, c.rng, 1));
    DelOneCell f2(x, f.q);
    DelTwoCell c2 = c.cell(f2);
    DelTwoCell h = hcompose(c2, a_on_id);
    CHECK(ge_equal(h.source_one_cell.q.log, f.q.log));
    CHECK(ge_equal(h.u.log, twisted_bch(c2.u, a_on_id.u).log));

    // interchange on a full 2x2 diagram
    DelTwoCell a2(two_cell_target(a), random_two_cell(x.pi, c.rng, 1));
    DelTwoCell b2(two_cell_target(b), random_two_cell(y.pi, c.rng, 1));
    DelTwoCell lhs = hcompose(vcompose(b2, b), vcompose(a2, a));
    DelTwoCell rhs = vcompose(hcompose(b2, a2), hcompose(b, a));
    CHECK(two_cell_equal(lhs, rhs));
}

TEST_CASE("automorphism membership") {
    Cells c;
    DelObject x = c.object();
    DelOneCell idc = DelOneCell::identity(x);
    CHECK(idc.is_automorphism());
    DelTwoCell id2 = DelTwoCell::identity(idc);
    CHECK(id2.is_automorphism_of_identity());
    // a 2-cell with central closed log is a 2-automorphism of the identity
    GradedElement central(c.space, -1, c.order);
    LPolyDiffOp one;
    one.slots = 0;
    one.terms[SlotKey{}] = plane_model()->one_fn();
    central.set_coeff(1, Value(one));
    DelTwoCell aut(idc, TwoCellElement(central, x.pi));
    CHECK(aut.is_automorphism_of_identity());
}

TEST_CASE("nerve simplices and horn filling") {
    Cells c;
    DelObject x = c.object();
    DelOneCell e01 = c.arrow(x);
    DelObject v1{e01.target_pi()};
    DelOneCell e12(v1, random_gauge(c.space, c.rng, c.order, 1));

    // inner 2-horn: identity filler over the composite
    Nerve2 inner = nerve_horn_fill2(1, e12, e01);
    CHECK(inner.u.is_identity());
    CHECK(one_cell_equal(inner.edge02, one_cell_compose(e12, e01)));

    // outer 2-horns use inverses
    Nerve2 outer = nerve_horn_fill2(0, inner.edge02, e01);
    CHECK(one_cell_equal(outer.edge12, e12));

    // all-identity tetrahedron commutes
    DelOneCell idx = DelOneCell::identity(x);
    Nerve2 idface = Nerve2::from_composite(idx, idx);
    Nerve3 idtetra(idface, idface, idface, idface);
    CHECK(tetra_commutes(idtetra));

    // a filled 3-horn commutes by construction
    DelObject v2{e12.target_pi()};
    DelOneCell e23(v2, random_gauge(c.space, c.rng, c.order, 1));
    TwoCellElement u012 = random_two_cell(x.pi, c.rng, 1);
    Nerve2 f012(e01, e12, two_cell_target(DelTwoCell(one_cell_compose(e12, e01), u012)), u012);
    TwoCellElement u123 = random_two_cell(v1.pi, c.rng, 1);
    Nerve2 f123(e12, e23, two_cell_target(DelTwoCell(one_cell_compose(e23, e12), u123)), u123);
    TwoCellElement u013 = random_two_cell(x.pi, c.rng, 1);
    Nerve2 f013(e01, f123.edge02,
                two_cell_target(DelTwoCell(one_cell_compose(f123.edge02, e01), u013)), u013);
    Nerve3 filled = nerve_horn_fill3(1, f123, f013, f012);
    CHECK(tetra_commutes(filled));

    // each missing face is recovered by refilling its horn
    Nerve3 refill0 = nerve_horn_fill3(0, filled.f023, filled.f013, filled.f012);
    CHECK(nerve2_equal(refill0.f123, filled.f123));
    Nerve3 refill2 = nerve_horn_fill3(2, filled.f123, filled.f023, filled.f012);
    CHECK(nerve2_equal(refill2.f013, filled.f013));
    Nerve3 refill3 = nerve_horn_fill3(3, filled.f123, filled.f023, filled.f013);
    CHECK(nerve2_equal(refill3.f012, filled.f012));

    // perturbing one 2-cell by a central nonzero h-term breaks commutativity
    GradedElement central(c.space, -1, c.order);
    LPolyDiffOp one;
    one.slots = 0;
    one.terms[SlotKey{}] = plane_model()->one_fn();
    central.set_coeff(1, Value(one));
    TwoCellElement bent(ge_add(filled.f013.u.log, central), filled.f013.u.base);
    Nerve2 f013b(filled.f013.edge01, filled.f013.edge12, filled.f013.edge02, bent);
    Nerve3 broken(filled.f012, f013b, filled.f023, filled.f123);
    CHECK_FALSE(tetra_commutes(broken));

    // malformed faces are rejected
    CHECK_THROWS_AS(Nerve3(f012, f012, f012, f012), DegreeError);
}
