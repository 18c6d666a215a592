#include "defq/normalize.hpp"

#include <sstream>

namespace defq {

namespace {

// Order-n slice of the stored a-logs as a strict level-2 cochain (degree -1).
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

CechCochain g_slice(const WeakMCTriple& w, int n) {
    CechCochain c;
    c.shape = w.shape;
    c.inner = w.inner;
    c.level = 1;
    c.degree = 0;
    for (const auto& t : w.shape->tuples_of_size(2)) {
        Value v = w.g_at(t[0], t[1]).log.coeff(n);
        if (!w.inner->is_zero(0, v)) c.values[t] = std::move(v);
    }
    return c;
}

GradedElement lift_order(const DglaPtr& model, int degree, int order, int n, const Value& v) {
    GradedElement x(model, degree, order);
    x.set_coeff(n, v);
    return x;
}

} // namespace

NormalizeResult normalize_acyclic(const WeakMCTriple& input, const SplittingOracle& oracle) {
    WeakMCReport pre = weak_mc_check(input);
    if (!pre.passed)
        throw DegreeError("normalization input is not weak Maurer-Cartan:\n" + pre.to_string());

    NormalizeResult res;
    res.normal_form = input;
    std::ostringstream log;
    WeakMCTriple& w = res.normal_form;

    // Phase 1: make a = 1, one h-order at a time.
    for (int n = 1; n <= w.order; ++n) {
        CechCochain c = a_slice(w, n);
        if (c.is_zero()) continue;
        if (!cech_coboundary(c).is_zero())
            throw OracleError("order " + std::to_string(n) +
                              " slice of log a is not a cocycle: " + c.to_string());
        auto b = oracle.split(c);
        if (!b)
            throw OracleError("phase 1 (killing a) at h^" + std::to_string(n) + ", " +
                              oracle.name() + " oracle cannot split the cocycle: " +
                              c.to_string());
        WeakEquivalence e = weak_equiv_identity(w);
        for (const auto& t : w.shape->tuples_of_size(2)) {
            Value v = b->at(t);
            e.alpha.at(Pair{t[0], t[1]}) = TwoCellElement(
                lift_order(w.inner, -1, w.order, n, v), w.pi_at(t[0]));
        }
        w = weak_equiv_apply(e, w);
        res.chain.push_back(std::move(e));
        log << "phase 1: split a at h^" << n << " over " << oracle.name() << "\n";
        if (!a_slice(w, n).is_zero())
            throw InternalError("phase 1 failed to clear order " + std::to_string(n));
    }

    // Phase 2: make g = 1.
    for (int n = 1; n <= w.order; ++n) {
        CechCochain h = g_slice(w, n);
        if (h.is_zero()) continue;
        if (!cech_coboundary(h).is_zero())
            throw OracleError("order " + std::to_string(n) +
                              " slice of log g is not a cocycle: " + h.to_string());
        auto esplit = oracle.split(h);
        if (!esplit)
            throw OracleError("phase 2 (killing g) at h^" + std::to_string(n) + ", " +
                              oracle.name() + " oracle cannot split the cocycle: " +
                              h.to_string());
        WeakEquivalence e = weak_equiv_identity(w);
        for (int i = 0; i < w.shape->index_count(); ++i) {
            Value v = esplit->at(Tuple{i});
            e.gamma.at(i) = GaugeElement(
                ge_neg(lift_order(w.inner, 0, w.order, n, v)));
        }
        w = weak_equiv_apply(e, w);
        res.chain.push_back(std::move(e));
        log << "phase 2: split g at h^" << n << " over " << oracle.name() << "\n";
        if (!g_slice(w, n).is_zero())
            throw InternalError("phase 2 failed to clear order " + std::to_string(n));
    }

    // Normal form sanity: a = 1, g = 1, local elements glue.
    for (const auto& [t, u] : w.a)
        if (!u.log.is_zero()) throw InternalError("normal form still has nontrivial a");
    for (const auto& [p, q] : w.g)
        if (!q.log.is_zero()) throw InternalError("normal form still has nontrivial g");
    WeakMCReport post = weak_mc_check(w);
    if (!post.passed) throw InternalError("normal form fails recheck:\n" + post.to_string());
    log << "normal form (Pi',1,1) rechecked: pass\n";
    res.transcript = log.str();
    return res;
}

} // namespace defq
