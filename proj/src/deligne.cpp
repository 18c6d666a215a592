#include "defq/deligne.hpp"

namespace defq {

DelObject::DelObject(GradedElement p) : pi(std::move(p)) {
    pi.check_degree(1, "Deligne object");
    if (!pi.model()->quantum_type())
        throw DegreeError("Deligne 2-groupoid needs a quantum type model");
    if (!mc_residual(pi).is_zero())
        throw DegreeError("Deligne object must satisfy the Maurer-Cartan equation");
}

DelOneCell::DelOneCell(DelObject src, GaugeElement gauge)
    : source(std::move(src)), q(std::move(gauge)) {
    q.log.check_compatible(source.pi);
}

DelOneCell DelOneCell::identity(const DelObject& x) {
    return DelOneCell(x, GaugeElement::identity(x.pi.model(), x.pi.order()));
}

DelOneCell one_cell_compose(const DelOneCell& second, const DelOneCell& first) {
    if (!ge_equal(second.source.pi, first.target_pi()))
        throw DegreeError("non-composable 1-cells");
    return DelOneCell(first.source, bch(second.q, first.q));
}

DelOneCell one_cell_inverse(const DelOneCell& c) {
    return DelOneCell(DelObject(c.target_pi()), gauge_inverse(c.q));
}

bool one_cell_equal(const DelOneCell& a, const DelOneCell& b) {
    return ge_equal(a.source.pi, b.source.pi) && ge_equal(a.q.log, b.q.log);
}

DelTwoCell::DelTwoCell(DelOneCell src, TwoCellElement cell)
    : source_one_cell(std::move(src)), u(std::move(cell)) {
    if (!ge_equal(u.base, source_one_cell.source.pi))
        throw DegreeError("base-point mismatch: 2-cell must be based at the source object");
}

DelTwoCell DelTwoCell::identity(const DelOneCell& c) {
    return DelTwoCell(c, TwoCellElement::identity(c.source.pi));
}

bool DelTwoCell::is_automorphism_of_identity() const {
    if (!source_one_cell.q.is_identity()) return false;
    return one_cell_equal(two_cell_target(*this), source_one_cell);
}

DelOneCell two_cell_target(const DelTwoCell& c) {
    const GradedElement& pi = c.source_one_cell.source.pi;
    GradedElement dp = twisted_differential(pi, c.u.log);
    GaugeElement shifted = bch(c.source_one_cell.q, GaugeElement(std::move(dp)));
    return DelOneCell(c.source_one_cell.source, std::move(shifted));
}

DelTwoCell vcompose(const DelTwoCell& c2, const DelTwoCell& c1) {
    if (!one_cell_equal(c2.source_one_cell, two_cell_target(c1)))
        throw DegreeError("non-composable 2-cells (vertical)");
    // (exp(v), exp(q)exp(d u), Pi) o_v (exp(u), exp(q), Pi) = (exp(u)exp(v), exp(q), Pi)
    return DelTwoCell(c1.source_one_cell, twisted_bch(c1.u, c2.u));
}

DelTwoCell vertical_inverse(const DelTwoCell& c) {
    return DelTwoCell(two_cell_target(c), two_cell_inverse(c.u));
}

DelTwoCell hcompose(const DelTwoCell& c2, const DelTwoCell& c1) {
    const DelOneCell& f1 = c1.source_one_cell;
    const DelOneCell& f2 = c2.source_one_cell;
    if (!ge_equal(f2.source.pi, f1.target_pi()))
        throw DegreeError("non-composable 2-cells (horizontal)");
    TwoCellElement moved = transport(f1.q, c2.u, f1.source.pi);
    DelOneCell composite(f1.source, bch(f2.q, f1.q));
    return DelTwoCell(std::move(composite), twisted_bch(moved, c1.u));
}

bool two_cell_equal(const DelTwoCell& a, const DelTwoCell& b) {
    return one_cell_equal(a.source_one_cell, b.source_one_cell) && ge_equal(a.u.log, b.u.log);
}

} // namespace defq
