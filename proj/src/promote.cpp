#include "defq/promote.hpp"

#include "defq/diffop.hpp"

#include <sstream>

namespace defq {

namespace {

LPolyDiffOp scalar_op(const RatFunc& f) {
    LPolyDiffOp p;
    p.slots = 0;
    if (!f.is_zero()) p.terms[SlotKey{}] = f;
    return p;
}

} // namespace

std::pair<CechCochain, CechCochain> ConstantsInvariants::project(const CechCochain& c) const {
    CechCochain inv = c, rest = c;
    inv.values.clear();
    rest.values.clear();
    for (const auto& [t, v] : c.values) {
        const LPolyDiffOp& f = v.as<LPolyDiffOp>();
        if (f.slots != 0) throw DegreeError("invariants oracle expects O-valued cochains");
        if (f.terms.empty()) continue;
        RatFunc val = f.terms.begin()->second;
        RatFunc cpart(Poly::constant(val.vars(), val.eval_zero()));
        RatFunc rpart = val - cpart;
        if (!cpart.is_zero()) inv.values[t] = Value(scalar_op(cpart));
        if (!rpart.is_zero()) rest.values[t] = Value(scalar_op(rpart));
    }
    return {inv, rest};
}

namespace {

CechCochain a_slice(const WeakMCTriple& w, int n) {
    CechCochain c;
    c.shape = w.shape;
    c.inner = w.inner;
    c.level = 2;
    c.degree = -1;
    for (const auto& t : w.shape->tuples_of_size(3)) {
        Value v = w.a_at(t).log.coeff(n);
        if (!w.inner->is_zero(-1, v)) c.values[t] = std::move(v);
    }
    return c;
}

GradedElement lift_order(const DglaPtr& model, int degree, int order, int n, const Value& v) {
    GradedElement x(model, degree, order);
    x.set_coeff(n, v);
    return x;
}

bool element_normalized(const GradedElement& x) {
    for (int k = 0; k <= x.order(); ++k)
        if (!normalized_subcomplex_check(x.coeff(k).as<LPolyDiffOp>())) return false;
    return true;
}

} // namespace

PromoteResult promote_actual(const WeakMCTriple& input, const InvariantsOracle& invariants,
                             const SplittingOracle& splitting) {
    auto dgla = std::dynamic_pointer_cast<const DiffOpDgla>(input.inner);
    if (!dgla) throw DegreeError("promotion needs the polydifferential model");
    WeakMCReport pre = weak_mc_check(input);
    if (!pre.passed)
        throw DegreeError("promotion input is not weak Maurer-Cartan:\n" + pre.to_string());
    for (const auto& [i, p] : input.pi)
        if (!element_normalized(p))
            throw DegreeError("promotion needs normalized local deformations");
    for (const auto& [p, q] : input.g)
        if (!element_normalized(q.log))
            throw DegreeError("promotion needs normalized transition logs");
    for (const auto& [t, u] : input.a)
        if (!u.log.is_zero_mod(std::min(2, input.order + 1)))
            throw DegreeError("not a weak quantization: a must be 1 mod h^2");

    PromoteResult res;
    res.actual = input;
    WeakMCTriple& w = res.actual;
    std::ostringstream log;

    for (int n = 2; n <= w.order; ++n) {
        CechCochain an = a_slice(w, n);
        if (an.is_zero()) continue;
        if (!cech_coboundary(an).is_zero())
            throw OracleError("order " + std::to_string(n) +
                              " slice of log a is not a cocycle: " + an.to_string());
        auto [inv, rest] = invariants.project(an);
        // gauge away the coboundary part
        if (!rest.is_zero()) {
            auto alpha = splitting.split(rest);
            if (!alpha)
                throw OracleError("promotion at h^" + std::to_string(n) + ": " +
                                  splitting.name() + " oracle cannot split the remainder: " +
                                  rest.to_string());
            WeakEquivalence e = weak_equiv_identity(w);
            for (const auto& t : w.shape->tuples_of_size(2)) {
                Value v = alpha->at(t);
                e.alpha.at(Pair{t[0], t[1]}) =
                    TwoCellElement(lift_order(w.inner, -1, w.order, n, v), w.pi_at(t[0]));
            }
            w = weak_equiv_apply(e, w);
            log << "h^" << n << ": gauge step exp(h^" << n << " alpha_n) over "
                << splitting.name() << "\n";
        }
        // delete the invariant part; rechecked below because this is not a
        // weak equivalence
        if (!inv.is_zero()) {
            for (const auto& t : w.shape->tuples_of_size(3)) {
                Value v = inv.at(t);
                if (w.inner->is_zero(-1, v)) continue;
                TwoCellElement& u = w.a.at(t);
                GradedElement nl = ge_sub(u.log, lift_order(w.inner, -1, w.order, n, v));
                u = TwoCellElement(std::move(nl), u.base);
            }
            log << "h^" << n << ": deleted the invariant part via " << invariants.name() << "\n";
        }
        if (!a_slice(w, n).is_zero())
            throw InternalError("promotion failed to clear order " + std::to_string(n));
        WeakMCReport mid = weak_mc_check(w);
        if (!mid.passed)
            throw InternalError("conditions broken after deleting invariants at h^" +
                                std::to_string(n) + ":\n" + mid.to_string());
        log << "h^" << n << ": all four conditions recheck exactly\n";
    }

    for (const auto& [t, u] : w.a)
        if (!u.log.is_zero()) throw InternalError("promotion left a nontrivial a");
    res.transcript = log.str();
    return res;
}

} // namespace defq
