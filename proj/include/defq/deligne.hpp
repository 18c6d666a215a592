// The Deligne 2-groupoid of a quantum type DGLA. Objects are MC elements,
// 1-cells gauge exponentials, 2-cells exponentials in the base-twisted
// degree -1 algebra. Cells are stored by their logs; equality is equality of
// normalized logs.
//
// Vertical composition multiplies 2-cell exponentials at the shared base;
// horizontal composition follows
//   (exp(u'), exp(q'), exp(q).Pi) o_h (exp(u), exp(q), Pi)
//     = (exp(e^{-ad q} u') exp(u), exp(q') exp(q), Pi).
#pragma once

#include "defq/dgla.hpp"

namespace defq {

struct DelObject {
    GradedElement pi;

    explicit DelObject(GradedElement p); // verifies the MC equation exactly
};

struct DelOneCell {
    DelObject source;
    GaugeElement q;

    DelOneCell(DelObject src, GaugeElement gauge);
    static DelOneCell identity(const DelObject& x);

    GradedElement target_pi() const { return gauge_apply(q, source.pi); }
    bool is_automorphism() const { return ge_equal(target_pi(), source.pi); } // pi_1 membership
};

DelOneCell one_cell_compose(const DelOneCell& second, const DelOneCell& first);
DelOneCell one_cell_inverse(const DelOneCell& c);
bool one_cell_equal(const DelOneCell& a, const DelOneCell& b);

struct DelTwoCell {
    DelOneCell source_one_cell;
    TwoCellElement u; // based at the source object

    DelTwoCell(DelOneCell src, TwoCellElement cell);
    static DelTwoCell identity(const DelOneCell& c);

    // pi_2 membership: a 2-automorphism of id_x.
    bool is_automorphism_of_identity() const;
};

// exp(u).exp(q) = exp(q) exp(d_Pi u): the 1-cell this 2-cell points to.
DelOneCell two_cell_target(const DelTwoCell& c);

// c2 after c1 (target 1-cell of c1 = source 1-cell of c2).
DelTwoCell vcompose(const DelTwoCell& c2, const DelTwoCell& c1);
DelTwoCell vertical_inverse(const DelTwoCell& c);

// c2 over exp(q).Pi composed with c1 over Pi.
DelTwoCell hcompose(const DelTwoCell& c2, const DelTwoCell& c1);

bool two_cell_equal(const DelTwoCell& a, const DelTwoCell& b);

} // namespace defq
