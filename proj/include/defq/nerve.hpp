// Nerve simplices of the Deligne 2-groupoid, stored up to dimension 3 (the
// nerve is 3-coskeletal). A 2-simplex carries a filler 2-cell from the
// composite of its short edges to the long edge; a 3-simplex is commutative
// when its two composite fillers agree, which is the tetrahedron equation
//   a_012 a_023 = g_01(a_123) a_013
// in the twisted exponential group at the base object.
#pragma once

#include "defq/deligne.hpp"

namespace defq {

struct Nerve2 {
    DelOneCell edge01, edge12, edge02;
    TwoCellElement u; // filler: (edge12 * edge01) ==> edge02, based at vertex 0

    Nerve2(DelOneCell e01, DelOneCell e12, DelOneCell e02, TwoCellElement filler);
    static Nerve2 from_composite(const DelOneCell& e01, const DelOneCell& e12); // identity filler

    DelTwoCell filler_cell() const; // over the composite edge12 * edge01
};

bool nerve2_equal(const Nerve2& a, const Nerve2& b);

// Faces are labelled by the omitted vertex: f012 = face 3, f013 = face 2,
// f023 = face 1, f123 = face 0.
struct Nerve3 {
    Nerve2 f012, f013, f023, f123;

    Nerve3(Nerve2 f012_, Nerve2 f013_, Nerve2 f023_, Nerve2 f123_); // checks shared edges
};

// The two ways around the tetrahedron as 2-cells from edge23*edge12*edge01
// to edge03; true iff their normalized logs agree.
bool tetra_commutes(const Nerve3& t);

// Horns. missing_face is the omitted face index (0..n); remaining faces are
// passed in increasing face-index order.
Nerve2 nerve_horn_fill2(int missing_face, const DelOneCell& face_a, const DelOneCell& face_b);
Nerve3 nerve_horn_fill3(int missing_face, const Nerve2& face_a, const Nerve2& face_b,
                        const Nerve2& face_c);

} // namespace defq
