#include "defq/weakmc.hpp"

#include <sstream>

namespace defq {

const GradedElement& WeakMCTriple::pi_at(int i) const {
    auto it = pi.find(i);
    if (it == pi.end()) throw ShapeError("missing local element at index " + std::to_string(i));
    return it->second;
}

const GaugeElement& WeakMCTriple::g_at(int i, int j) const {
    auto it = g.find({i, j});
    if (it == g.end())
        throw ShapeError("missing transition at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    return it->second;
}

const TwoCellElement& WeakMCTriple::a_at(const Tuple& t) const {
    auto it = a.find(t);
    if (it == a.end()) throw ShapeError("missing 2-cell at " + tuple_to_string(t));
    return it->second;
}

void WeakMCTriple::validate_shape() const {
    for (int i = 0; i < shape->index_count(); ++i) pi_at(i);
    for (const auto& t : shape->tuples_of_size(2)) g_at(t[0], t[1]);
    for (const auto& t : shape->tuples_of_size(3)) a_at(t);
    if (static_cast<int>(pi.size()) != shape->index_count() ||
        g.size() != shape->tuples_of_size(2).size() || a.size() != shape->tuples_of_size(3).size())
        throw ShapeError("triple carries data outside the cover shape");
}

WeakMCTriple trivial_triple(std::shared_ptr<const CoverShape> shape, const GradedElement& pi) {
    WeakMCTriple w;
    w.shape = std::move(shape);
    w.inner = pi.model();
    w.order = pi.order();
    for (int i = 0; i < w.shape->index_count(); ++i) w.pi.emplace(i, pi);
    for (const auto& t : w.shape->tuples_of_size(2))
        w.g.emplace(Pair{t[0], t[1]}, GaugeElement::identity(pi.model(), pi.order()));
    for (const auto& t : w.shape->tuples_of_size(3))
        w.a.emplace(t, TwoCellElement::identity(pi));
    return w;
}

int first_nonzero_order(const GradedElement& x) {
    for (int k = 0; k <= x.order(); ++k)
        if (!x.model()->is_zero(x.degree(), x.coeff(k))) return k;
    return -1;
}

GaugeElement bch_chain(const std::vector<GradedElement>& logs) {
    if (logs.empty()) throw InternalError("empty BCH chain");
    GaugeElement acc((GradedElement(logs.front())));
    for (size_t i = 1; i < logs.size(); ++i) acc = bch(acc, GaugeElement(logs[i]));
    return acc;
}

std::string WeakMCReport::to_string() const {
    std::ostringstream os;
    for (const auto& c : conditions) {
        os << "condition " << c.condition << " " << tuple_to_string(c.tuple) << ": "
           << (c.passed ? "pass" : "FAIL");
        if (!c.passed) os << " at h^" << c.first_fail_order;
        if (!c.detail.empty()) os << " (" << c.detail << ")";
        os << "\n";
    }
    return os.str();
}

WeakMCReport weak_mc_check(const WeakMCTriple& w) {
    w.validate_shape();
    WeakMCReport rep;
    auto record = [&rep](int cond, Tuple t, const GradedElement& difference,
                         const std::string& detail = "") {
        ConditionResult r;
        r.condition = cond;
        r.tuple = std::move(t);
        int k = first_nonzero_order(difference);
        r.passed = (k < 0);
        r.first_fail_order = k;
        if (!r.passed) r.detail = detail;
        rep.conditions.push_back(std::move(r));
        if (!rep.conditions.back().passed) rep.passed = false;
    };

    for (int i = 0; i < w.shape->index_count(); ++i)
        record(1, Tuple{i}, mc_residual(w.pi_at(i)));

    for (const auto& t : w.shape->tuples_of_size(2)) {
        GradedElement lhs = gauge_apply(w.g_at(t[0], t[1]), w.pi_at(t[0]));
        record(2, t, ge_sub(lhs, w.pi_at(t[1])));
    }

    for (const auto& t : w.shape->tuples_of_size(3)) {
        // g_jk g_ij exp(d_Pi_i a_ijk) = g_ik
        const GaugeElement& gij = w.g_at(t[0], t[1]);
        const GaugeElement& gjk = w.g_at(t[1], t[2]);
        const GaugeElement& gik = w.g_at(t[0], t[2]);
        const TwoCellElement& u = w.a_at(t);
        GradedElement du = twisted_differential(w.pi_at(t[0]), u.log);
        GaugeElement lhs = bch(bch(gjk, gij), GaugeElement(std::move(du)));
        record(3, t, ge_sub(lhs.log, gik.log));
    }

    for (const auto& t : w.shape->tuples_of_size(4)) {
        Tuple ijk{t[0], t[1], t[2]}, ikl{t[0], t[2], t[3]}, jkl{t[1], t[2], t[3]},
            ijl{t[0], t[1], t[3]};
        try {
            TwoCellElement lhs = twisted_bch(w.a_at(ijk), w.a_at(ikl));
            TwoCellElement moved = transport(w.g_at(t[0], t[1]), w.a_at(jkl), w.pi_at(t[0]));
            TwoCellElement rhs = twisted_bch(moved, w.a_at(ijl));
            record(4, t, ge_sub(lhs.log, rhs.log));
        } catch (const DegreeError& err) {
            ConditionResult r;
            r.condition = 4;
            r.tuple = t;
            r.passed = false;
            r.first_fail_order = 0;
            r.detail = std::string("not evaluable: ") + err.what();
            rep.conditions.push_back(std::move(r));
            rep.passed = false;
        }
    }
    return rep;
}

const GaugeElement& WeakEquivalence::gamma_at(int i) const {
    auto it = gamma.find(i);
    if (it == gamma.end()) throw ShapeError("missing gauge at index " + std::to_string(i));
    return it->second;
}

const TwoCellElement& WeakEquivalence::alpha_at(int i, int j) const {
    auto it = alpha.find({i, j});
    if (it == alpha.end())
        throw ShapeError("missing 2-cell at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    return it->second;
}

WeakEquivalence weak_equiv_identity(const WeakMCTriple& w) {
    WeakEquivalence e;
    for (int i = 0; i < w.shape->index_count(); ++i)
        e.gamma.emplace(i, GaugeElement::identity(w.inner, w.order));
    for (const auto& t : w.shape->tuples_of_size(2))
        e.alpha.emplace(Pair{t[0], t[1]}, TwoCellElement::identity(w.pi_at(t[0])));
    return e;
}

WeakMCTriple weak_equiv_apply(const WeakEquivalence& e, const WeakMCTriple& w) {
    w.validate_shape();
    WeakMCTriple out;
    out.shape = w.shape;
    out.inner = w.inner;
    out.order = w.order;

    for (int i = 0; i < w.shape->index_count(); ++i)
        out.pi.emplace(i, gauge_apply(e.gamma_at(i), w.pi_at(i)));

    // g'_ij = gamma_j g_ij exp(d_Pi_i alpha_ij) gamma_i^{-1}
    for (const auto& t : w.shape->tuples_of_size(2)) {
        int i = t[0], j = t[1];
        GradedElement du = twisted_differential(w.pi_at(i), e.alpha_at(i, j).log);
        GaugeElement composite = bch_chain({e.gamma_at(j).log, w.g_at(i, j).log, du,
                                            ge_neg(e.gamma_at(i).log)});
        out.g.emplace(Pair{i, j}, std::move(composite));
    }

    // gamma_i(a') = alpha_ij^{-1} g_ij(alpha_jk)^{-1} a_ijk alpha_ik
    for (const auto& t : w.shape->tuples_of_size(3)) {
        int i = t[0], j = t[1], k = t[2];
        TwoCellElement moved = transport(w.g_at(i, j), e.alpha_at(j, k), w.pi_at(i));
        TwoCellElement prod = twisted_bch(two_cell_inverse(e.alpha_at(i, j)),
                                          two_cell_inverse(moved));
        prod = twisted_bch(prod, w.a_at(t));
        prod = twisted_bch(prod, e.alpha_at(i, k));
        TwoCellElement lifted = transport(gauge_inverse(e.gamma_at(i)), prod, out.pi_at(i));
        out.a.emplace(t, std::move(lifted));
    }
    return out;
}

WeakEquivalence weak_equiv_compose(const WeakEquivalence& e_then, const WeakEquivalence& e_first,
                                   const WeakMCTriple& source) {
    WeakEquivalence r;
    for (int i = 0; i < source.shape->index_count(); ++i)
        r.gamma.emplace(i, bch(e_then.gamma_at(i), e_first.gamma_at(i)));
    for (const auto& t : source.shape->tuples_of_size(2)) {
        int i = t[0], j = t[1];
        // alpha = alpha1 * (gamma1_i^{-1} . alpha2), both based at Pi_i
        TwoCellElement moved = transport(e_first.gamma_at(i), e_then.alpha_at(i, j),
                                         source.pi_at(i));
        r.alpha.emplace(Pair{i, j}, twisted_bch(e_first.alpha_at(i, j), moved));
    }
    return r;
}

TotZeroSimplex tot_from_triple(const WeakMCTriple& w) {
    w.validate_shape();
    const CoverShape& shape = *w.shape;

    // objects and 1-arrows over weakly increasing tuples
    std::map<int, DelObject> objects;
    for (int i = 0; i < shape.index_count(); ++i) objects.emplace(i, DelObject(w.pi_at(i)));

    auto one_cell = [&](int i, int j) -> DelOneCell {
        if (i == j) return DelOneCell::identity(objects.at(i));
        DelOneCell c(objects.at(i), w.g_at(i, j));
        if (!ge_equal(c.target_pi(), w.pi_at(j)))
            throw DegreeError("1-arrow " + std::to_string(i) + "->" + std::to_string(j) +
                              " does not reach its target object");
        return c;
    };
    auto two_simplex = [&](int i, int j, int k) -> Nerve2 {
        TwoCellElement u = (i < j && j < k) ? w.a_at(Tuple{i, j, k})
                                            : TwoCellElement::identity(w.pi_at(i));
        return Nerve2(one_cell(i, j), one_cell(j, k), one_cell(i, k), u); // ctor verifies
    };

    for (const auto& t : weak_tuples(shape, 2)) one_cell(t[0], t[1]);
    for (const auto& t : weak_tuples(shape, 3)) two_simplex(t[0], t[1], t[2]);
    for (const auto& t : weak_tuples(shape, 4)) {
        Nerve3 tetra(two_simplex(t[0], t[1], t[2]), two_simplex(t[0], t[1], t[3]),
                     two_simplex(t[0], t[2], t[3]), two_simplex(t[1], t[2], t[3]));
        if (!tetra_commutes(tetra))
            throw DegreeError("tetrahedron fails to commute at " + tuple_to_string(t));
    }
    return TotZeroSimplex{w};
}

WeakMCTriple triple_from_tot(const TotZeroSimplex& t) { return t.data; }

BivectorFamily skew_symmetrize_first_order(const WeakMCTriple& w) {
    auto dgla = std::dynamic_pointer_cast<const DiffOpDgla>(w.inner);
    if (!dgla) throw DegreeError("classical limit needs the polydifferential model");
    const AlgebroidModel& model = *dgla->algebroid();
    BivectorFamily fam;
    for (int i = 0; i < w.shape->index_count(); ++i) {
        if (w.order < 1) throw DegreeError("need at least order 1 to extract a classical limit");
        const LPolyDiffOp& b = w.pi_at(i).coeff(1).as<LPolyDiffOp>();
        SkewResult res = skew_symmetrize(model, b);
        if (!res.first_order) fam.first_order = false;
        fam.pi.emplace(i, std::move(res.bivector));
    }
    for (const auto& t : w.shape->tuples_of_size(2))
        if (!pv_equal(fam.pi.at(t[0]), fam.pi.at(t[1]))) fam.overlaps_agree = false;
    return fam;
}

bool poisson_check(const AlgebroidModel& model, const CoverShape& shape,
                   const std::map<int, LPolyVector>& pis) {
    for (int i = 0; i < shape.index_count(); ++i) {
        auto it = pis.find(i);
        if (it == pis.end()) throw ShapeError("missing bivector at index " + std::to_string(i));
        if (it->second.ext != 2) throw DegreeError("Poisson check needs bivectors");
        if (!schouten(model, it->second, it->second).is_zero()) return false;
    }
    for (const auto& t : shape.tuples_of_size(2))
        if (!pv_equal(pis.at(t[0]), pis.at(t[1]))) return false;
    return true;
}

} // namespace defq
