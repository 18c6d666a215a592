#include "defq/nerve.hpp"

namespace defq {

Nerve2::Nerve2(DelOneCell e01, DelOneCell e12, DelOneCell e02, TwoCellElement filler)
    : edge01(std::move(e01)), edge12(std::move(e12)), edge02(std::move(e02)),
      u(std::move(filler)) {
    if (!ge_equal(edge12.source.pi, edge01.target_pi()))
        throw DegreeError("malformed 2-simplex: edges 01 and 12 do not compose");
    if (!ge_equal(edge02.source.pi, edge01.source.pi))
        throw DegreeError("malformed 2-simplex: edge 02 has the wrong source");
    if (!ge_equal(u.base, edge01.source.pi))
        throw DegreeError("malformed 2-simplex: filler based at the wrong object");
    if (!one_cell_equal(two_cell_target(filler_cell()), edge02))
        throw DegreeError("malformed 2-simplex: filler does not reach the long edge");
}

Nerve2 Nerve2::from_composite(const DelOneCell& e01, const DelOneCell& e12) {
    DelOneCell comp = one_cell_compose(e12, e01);
    return Nerve2(e01, e12, comp, TwoCellElement::identity(e01.source.pi));
}

DelTwoCell Nerve2::filler_cell() const {
    return DelTwoCell(one_cell_compose(edge12, edge01), u);
}

bool nerve2_equal(const Nerve2& a, const Nerve2& b) {
    return one_cell_equal(a.edge01, b.edge01) && one_cell_equal(a.edge12, b.edge12) &&
           one_cell_equal(a.edge02, b.edge02) && ge_equal(a.u.log, b.u.log);
}

Nerve3::Nerve3(Nerve2 f012_, Nerve2 f013_, Nerve2 f023_, Nerve2 f123_)
    : f012(std::move(f012_)), f013(std::move(f013_)), f023(std::move(f023_)),
      f123(std::move(f123_)) {
    if (!one_cell_equal(f012.edge01, f013.edge01) ||
        !one_cell_equal(f012.edge02, f023.edge01) ||
        !one_cell_equal(f012.edge12, f123.edge01) ||
        !one_cell_equal(f013.edge02, f023.edge02) ||
        !one_cell_equal(f013.edge12, f123.edge02) ||
        !one_cell_equal(f023.edge12, f123.edge12))
        throw DegreeError("malformed 3-simplex: faces do not share edges");
}

bool tetra_commutes(const Nerve3& t) {
    // around the bottom: (e23 e12 e01) => (e23 e02) => e03
    DelTwoCell way_a = vcompose(t.f023.filler_cell(),
                                hcompose(DelTwoCell::identity(t.f023.edge12), t.f012.filler_cell()));
    // around the top: (e23 e12 e01) => (e13 e01) => e03
    DelTwoCell way_b = vcompose(t.f013.filler_cell(),
                                hcompose(t.f123.filler_cell(), DelTwoCell::identity(t.f012.edge01)));
    return two_cell_equal(way_a, way_b);
}

Nerve2 nerve_horn_fill2(int missing_face, const DelOneCell& face_a, const DelOneCell& face_b) {
    switch (missing_face) {
        case 0: { // given face1 = edge02, face2 = edge01; fill edge12
            const DelOneCell& e02 = face_a;
            const DelOneCell& e01 = face_b;
            DelOneCell e12 = one_cell_compose(e02, one_cell_inverse(e01));
            return Nerve2(e01, e12, e02, TwoCellElement::identity(e01.source.pi));
        }
        case 1: { // given face0 = edge12, face2 = edge01; fill edge02
            const DelOneCell& e12 = face_a;
            const DelOneCell& e01 = face_b;
            return Nerve2::from_composite(e01, e12);
        }
        case 2: { // given face0 = edge12, face1 = edge02; fill edge01
            const DelOneCell& e12 = face_a;
            const DelOneCell& e02 = face_b;
            DelOneCell e01 = one_cell_compose(one_cell_inverse(e12), e02);
            return Nerve2(e01, e12, e02, TwoCellElement::identity(e01.source.pi));
        }
        default: throw DegreeError("horn index out of range for a 2-simplex");
    }
}

Nerve3 nerve_horn_fill3(int missing_face, const Nerve2& face_a, const Nerve2& face_b,
                        const Nerve2& face_c) {
    // Present faces in increasing face-index order; solve the tetrahedron
    // equation bch(u012, u023) = bch(T_{q01} u123, u013) for the absent one.
    switch (missing_face) {
        case 0: { // have f023 (face1), f013 (face2), f012 (face3); solve u123
            const Nerve2& f023 = face_a;
            const Nerve2& f013 = face_b;
            const Nerve2& f012 = face_c;
            TwoCellElement lhs = twisted_bch(f012.u, f023.u);
            TwoCellElement moved = twisted_bch(lhs, two_cell_inverse(f013.u));
            const DelOneCell& e01 = f012.edge01;
            TwoCellElement u123 =
                transport(gauge_inverse(e01.q), moved, e01.target_pi());
            Nerve2 f123(f012.edge12, f023.edge12, f013.edge12, u123);
            return Nerve3(f012, f013, f023, f123);
        }
        case 1: { // have f123 (face0), f013 (face2), f012 (face3); solve u023
            const Nerve2& f123 = face_a;
            const Nerve2& f013 = face_b;
            const Nerve2& f012 = face_c;
            const DelOneCell& e01 = f012.edge01;
            TwoCellElement moved = transport(e01.q, f123.u, e01.source.pi);
            TwoCellElement rhs = twisted_bch(moved, f013.u);
            TwoCellElement u023 = twisted_bch(two_cell_inverse(f012.u), rhs);
            Nerve2 f023(f012.edge02, f123.edge12, f013.edge02, u023);
            return Nerve3(f012, f013, f023, f123);
        }
        case 2: { // have f123 (face0), f023 (face1), f012 (face3); solve u013
            const Nerve2& f123 = face_a;
            const Nerve2& f023 = face_b;
            const Nerve2& f012 = face_c;
            const DelOneCell& e01 = f012.edge01;
            TwoCellElement lhs = twisted_bch(f012.u, f023.u);
            TwoCellElement moved = transport(e01.q, f123.u, e01.source.pi);
            TwoCellElement u013 = twisted_bch(two_cell_inverse(moved), lhs);
            Nerve2 f013(f012.edge01, f123.edge02, f023.edge02, u013);
            return Nerve3(f012, f013, f023, f123);
        }
        case 3: { // have f123 (face0), f023 (face1), f013 (face2); solve u012
            const Nerve2& f123 = face_a;
            const Nerve2& f023 = face_b;
            const Nerve2& f013 = face_c;
            const DelOneCell& e01 = f013.edge01;
            TwoCellElement moved = transport(e01.q, f123.u, e01.source.pi);
            TwoCellElement rhs = twisted_bch(moved, f013.u);
            TwoCellElement u012 = twisted_bch(rhs, two_cell_inverse(f023.u));
            Nerve2 f012(f013.edge01, f123.edge01, f023.edge01, u012);
            return Nerve3(f012, f013, f023, f123);
        }
        default: throw DegreeError("horn index out of range for a 3-simplex");
    }
}

} // namespace defq
