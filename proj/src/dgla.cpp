#include "defq/dgla.hpp"

#include "defq/bch.hpp"

#include <sstream>

namespace defq {

GradedElement::GradedElement(DglaPtr model, int degree, int order)
    : model_(std::move(model)), degree_(degree) {
    if (order < 0) throw DegreeError("negative truncation order");
    if (!model_->degree_ok(degree)) throw DegreeError("degree outside the model range");
    coeffs_.assign(static_cast<size_t>(order) + 1, model_->zero(degree));
}

GradedElement::GradedElement(DglaPtr model, int degree, std::vector<Value> coeffs)
    : model_(std::move(model)), degree_(degree), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DegreeError("series needs at least the h^0 coefficient");
    if (!model_->degree_ok(degree)) throw DegreeError("degree outside the model range");
}

bool GradedElement::is_zero() const {
    for (const auto& c : coeffs_)
        if (!model_->is_zero(degree_, c)) return false;
    return true;
}

bool GradedElement::is_zero_mod(int i) const {
    if (i < 0 || i > order() + 1) throw DegreeError("filtration index out of range");
    for (int k = 0; k < i; ++k)
        if (!model_->is_zero(degree_, coeffs_[static_cast<size_t>(k)])) return false;
    return true;
}

std::string GradedElement::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= order(); ++i) {
        if (model_->is_zero(degree_, coeffs_[static_cast<size_t>(i)])) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << model_->to_string(degree_, coeffs_[static_cast<size_t>(i)]) << ")";
        if (i == 1) os << "*h";
        if (i > 1) os << "*h^" << i;
    }
    if (first) os << "0";
    return os.str();
}

void GradedElement::check_compatible(const GradedElement& o) const {
    if (!model_ || !o.model_) throw DegreeError("uninitialized element");
    if (model_->name() != o.model_->name()) throw DegreeError("model mismatch");
    if (order() != o.order()) throw DegreeError("truncation-order mismatch");
}

void GradedElement::check_degree(int expected, const char* what) const {
    if (degree_ != expected)
        throw DegreeError(std::string(what) + ": expected degree " + std::to_string(expected) +
                          ", got " + std::to_string(degree_));
}

GradedElement ge_add(const GradedElement& a, const GradedElement& b) {
    a.check_compatible(b);
    if (a.degree() != b.degree()) throw DegreeError("degree mismatch in addition");
    GradedElement r = a;
    for (int i = 0; i <= a.order(); ++i)
        r.set_coeff(i, a.model()->add(a.degree(), a.coeff(i), b.coeff(i)));
    return r;
}

GradedElement ge_scale(const Rational& c, const GradedElement& a) {
    GradedElement r = a;
    for (int i = 0; i <= a.order(); ++i)
        r.set_coeff(i, a.model()->scale(a.degree(), c, a.coeff(i)));
    return r;
}

GradedElement ge_neg(const GradedElement& a) { return ge_scale(Rational(-1), a); }

GradedElement ge_sub(const GradedElement& a, const GradedElement& b) {
    return ge_add(a, ge_neg(b));
}

GradedElement ge_shift(const GradedElement& a, int k) {
    if (k < 0) throw DegreeError("negative h-shift");
    GradedElement r(a.model(), a.degree(), a.order());
    for (int i = 0; i + k <= a.order(); ++i) r.set_coeff(i + k, a.coeff(i));
    return r;
}

bool ge_equal(const GradedElement& a, const GradedElement& b) {
    a.check_compatible(b);
    if (a.degree() != b.degree()) return false;
    for (int i = 0; i <= a.order(); ++i)
        if (!a.model()->equal(a.degree(), a.coeff(i), b.coeff(i))) return false;
    return true;
}

GradedElement ge_diff(const GradedElement& a) {
    GradedElement r(a.model(), a.degree() + 1, a.order());
    for (int i = 0; i <= a.order(); ++i)
        r.set_coeff(i, a.model()->differential(a.degree(), a.coeff(i)));
    return r;
}

GradedElement ge_bracket(const GradedElement& a, const GradedElement& b) {
    a.check_compatible(b);
    int deg = a.degree() + b.degree();
    GradedElement r(a.model(), deg, a.order());
    for (int i = 0; i <= a.order(); ++i) {
        if (a.model()->is_zero(a.degree(), a.coeff(i))) continue;
        for (int j = 0; i + j <= a.order(); ++j) {
            if (a.model()->is_zero(b.degree(), b.coeff(j))) continue;
            Value term = a.model()->bracket(a.degree(), a.coeff(i), b.degree(), b.coeff(j));
            r.set_coeff(i + j, a.model()->add(deg, r.coeff(i + j), term));
        }
    }
    return r;
}

GradedElement twisted_differential(const GradedElement& pi, const GradedElement& x) {
    pi.check_degree(1, "twisted differential base");
    return ge_add(ge_diff(x), ge_bracket(pi, x));
}

GradedElement mc_residual(const GradedElement& pi) {
    pi.check_degree(1, "Maurer-Cartan residual");
    return ge_add(ge_diff(pi), ge_scale(Rational(1, 2), ge_bracket(pi, pi)));
}

GaugeElement::GaugeElement(GradedElement l) : log(std::move(l)) {
    log.check_degree(0, "gauge log");
    if (!log.is_zero_mod(1)) throw DegreeError("gauge log must vanish mod h");
}

GaugeElement GaugeElement::identity(const DglaPtr& model, int order) {
    return GaugeElement(GradedElement(model, 0, order));
}

GradedElement gauge_apply(const GaugeElement& q, const GradedElement& pi) {
    pi.check_degree(1, "gauge action target");
    q.log.check_compatible(pi);
    GradedElement term = twisted_differential(pi, q.log); // d_Pi q, degree 1
    GradedElement acc(pi.model(), 1, pi.order());
    Rational inv_fact(1); // 1/(n+1)!
    for (int n = 0; n <= pi.order(); ++n) {
        inv_fact = inv_fact / Rational(n + 1);
        acc = ge_add(acc, ge_scale(inv_fact, term));
        if (n + 1 > pi.order()) break;
        term = ge_bracket(q.log, term); // ad(q)^{n+1} d_Pi q, zero mod h^{n+2}
        if (term.is_zero()) break;
    }
    return ge_sub(pi, acc);
}

namespace {

// Evaluate the cached universal BCH words with a caller-supplied bracket.
template <class Bracket>
GradedElement bch_eval(const GradedElement& a, const GradedElement& b, const Bracket& br) {
    a.check_compatible(b);
    GradedElement acc(a.model(), a.degree(), a.order());
    for (const auto& w : bch_formula(a.order())) {
        GradedElement v = (w.letters[0] == 0) ? a : b;
        for (size_t i = 1; i < w.letters.size() && !v.is_zero(); ++i)
            v = br(v, (w.letters[i] == 0) ? a : b);
        if (v.is_zero()) continue;
        acc = ge_add(acc, ge_scale(w.coefficient, v));
    }
    return acc;
}

} // namespace

GaugeElement bch(const GaugeElement& q1, const GaugeElement& q2) {
    GradedElement r = bch_eval(q1.log, q2.log,
                               [](const GradedElement& x, const GradedElement& y) {
                                   return ge_bracket(x, y);
                               });
    return GaugeElement(std::move(r));
}

GaugeElement gauge_inverse(const GaugeElement& q) { return GaugeElement(ge_neg(q.log)); }

TwoCellElement::TwoCellElement(GradedElement l, GradedElement base_pi)
    : log(std::move(l)), base(std::move(base_pi)) {
    log.check_degree(-1, "2-cell log");
    base.check_degree(1, "2-cell base");
    log.check_compatible(base);
    if (!log.is_zero_mod(1)) throw DegreeError("2-cell log must vanish mod h");
}

TwoCellElement TwoCellElement::identity(const GradedElement& base_pi) {
    return TwoCellElement(GradedElement(base_pi.model(), -1, base_pi.order()), base_pi);
}

GradedElement twisted_bracket(const GradedElement& pi, const GradedElement& u,
                              const GradedElement& v) {
    u.check_degree(-1, "twisted bracket");
    v.check_degree(-1, "twisted bracket");
    return ge_bracket(twisted_differential(pi, u), v);
}

TwoCellElement twisted_bch(const TwoCellElement& u, const TwoCellElement& v) {
    if (!ge_equal(u.base, v.base)) throw DegreeError("base-point mismatch in 2-cell product");
    const GradedElement& pi = u.base;
    GradedElement r = bch_eval(u.log, v.log,
                               [&pi](const GradedElement& x, const GradedElement& y) {
                                   return twisted_bracket(pi, x, y);
                               });
    return TwoCellElement(std::move(r), pi);
}

TwoCellElement two_cell_inverse(const TwoCellElement& u) {
    return TwoCellElement(ge_neg(u.log), u.base);
}

TwoCellElement transport(const GaugeElement& q, const TwoCellElement& u,
                         const GradedElement& new_base) {
    if (!ge_equal(u.base, gauge_apply(q, new_base)))
        throw DegreeError("base-point mismatch in 2-cell transport");
    // e^{-ad(q)} u = sum (-1)^n/n! ad(q)^n u
    GradedElement acc = u.log;
    GradedElement term = u.log;
    Rational inv_fact(1);
    for (int n = 1; n <= u.log.order(); ++n) {
        term = ge_bracket(q.log, term);
        if (term.is_zero()) break;
        inv_fact = inv_fact / Rational(n);
        acc = ge_add(acc, ge_scale((n % 2 == 1) ? -inv_fact : inv_fact, term));
    }
    return TwoCellElement(std::move(acc), new_base);
}

} // namespace defq
