// Z-graded DG Lie algebras with h-truncated coefficients, behind a runtime
// dispatch interface so Cech levels can wrap arbitrary inner models.
//
// Sign conventions (Koszul rule throughout): d has degree +1, the bracket is
// graded antisymmetric [x,y] = -(-1)^{|x||y|}[y,x] and satisfies the graded
// Jacobi identity. Both are verified by property tests per model, never
// assumed.
#pragma once

#include "defq/errors.hpp"
#include "defq/rational.hpp"
#include "defq/rng.hpp"

#include <any>
#include <memory>
#include <string>
#include <vector>

namespace defq {

// Type-erased homogeneous coefficient of a fixed degree (no h dependence).
class Value {
public:
    Value() = default;
    template <class T>
    explicit Value(T v) : v_(std::move(v)) {}

    template <class T>
    const T& as() const {
        const T* p = std::any_cast<T>(&v_);
        if (!p) throw InternalError("value carries the wrong concrete type");
        return *p;
    }

    bool has_value() const { return v_.has_value(); }

private:
    std::any v_;
};

class Dgla {
public:
    virtual ~Dgla() = default;

    virtual std::string name() const = 0;
    virtual bool degree_ok(int degree) const = 0;
    // Quantum type: nothing below degree -1.
    virtual bool quantum_type() const = 0;

    virtual Value zero(int degree) const = 0;
    virtual bool is_zero(int degree, const Value& v) const = 0;
    virtual Value add(int degree, const Value& a, const Value& b) const = 0;
    virtual Value scale(int degree, const Rational& c, const Value& v) const = 0;
    virtual Value differential(int degree, const Value& v) const = 0; // degree -> degree+1
    virtual Value bracket(int deg_a, const Value& a, int deg_b, const Value& b) const = 0;

    virtual std::string to_string(int degree, const Value& v) const = 0;
    virtual Value random_value(int degree, Rng& rng, int complexity) const = 0;

    // Whether every coefficient of v lies in the ring with the given allowed
    // denominators. Models without function coefficients accept everything.
    virtual bool value_allowed(int degree, const Value& v,
                               const std::vector<class Poly>& allowed) const {
        (void)degree; (void)v; (void)allowed;
        return true;
    }

    bool equal(int degree, const Value& a, const Value& b) const {
        return is_zero(degree, add(degree, a, scale(degree, Rational(-1), b)));
    }
};

using DglaPtr = std::shared_ptr<const Dgla>;

// Homogeneous element with truncated h-series value; coefficient i is the
// h^i part, all of the declared degree.
class GradedElement {
public:
    GradedElement() = default;
    GradedElement(DglaPtr model, int degree, int order);
    GradedElement(DglaPtr model, int degree, std::vector<Value> coeffs);

    const DglaPtr& model() const { return model_; }
    int degree() const { return degree_; }
    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Value& coeff(int i) const { return coeffs_.at(static_cast<size_t>(i)); }
    void set_coeff(int i, Value v) { coeffs_.at(static_cast<size_t>(i)) = std::move(v); }

    bool is_zero() const;
    bool is_zero_mod(int i) const; // coefficients of h^0..h^(i-1) vanish

    std::string to_string() const;

    void check_compatible(const GradedElement& o) const; // model + order
    void check_degree(int expected, const char* what) const;

private:
    DglaPtr model_;
    int degree_ = 0;
    std::vector<Value> coeffs_;
};

GradedElement ge_add(const GradedElement& a, const GradedElement& b);
GradedElement ge_sub(const GradedElement& a, const GradedElement& b);
GradedElement ge_neg(const GradedElement& a);
GradedElement ge_scale(const Rational& c, const GradedElement& a);
// Multiply by h^k (shift coefficients, drop overflow past the truncation).
GradedElement ge_shift(const GradedElement& a, int k);
bool ge_equal(const GradedElement& a, const GradedElement& b);

GradedElement ge_diff(const GradedElement& a);
// h-convolution of the model bracket; result degree is the sum.
GradedElement ge_bracket(const GradedElement& a, const GradedElement& b);

// d_Pi(x) = dx + [Pi, x]
GradedElement twisted_differential(const GradedElement& pi, const GradedElement& x);

// dPi + 1/2 [Pi, Pi]; Pi must have degree 1.
GradedElement mc_residual(const GradedElement& pi);

// Degree-0 element with value == 0 mod h: the log of a prounipotent group
// element. Identity is log = 0.
struct GaugeElement {
    GradedElement log;

    GaugeElement() = default;
    explicit GaugeElement(GradedElement l);
    static GaugeElement identity(const DglaPtr& model, int order);
    bool is_identity() const { return log.is_zero(); }
};

// gauge action: exp(q).Pi = Pi - sum_n ad(q)^n/(n+1)! d_Pi q
GradedElement gauge_apply(const GaugeElement& q, const GradedElement& pi);

// log(exp(q1) exp(q2)) via the universal BCH expansion; exact because logs
// vanish mod h and the bracket is h-truncated.
GaugeElement bch(const GaugeElement& q1, const GaugeElement& q2);
GaugeElement gauge_inverse(const GaugeElement& q);

// Degree -1 element with value == 0 mod h, based at an MC element Pi. Lives
// in the Lie algebra with twisted bracket [u,v]_Pi = [d_Pi u, v].
struct TwoCellElement {
    GradedElement log;
    GradedElement base; // Pi

    TwoCellElement() = default;
    TwoCellElement(GradedElement l, GradedElement base_pi);
    static TwoCellElement identity(const GradedElement& base_pi);
    bool is_identity() const { return log.is_zero(); }
};

// [u, v]_Pi = [d_Pi u, v] on degree -1 elements.
GradedElement twisted_bracket(const GradedElement& pi, const GradedElement& u,
                              const GradedElement& v);

// BCH in the Pi-twisted algebra; both cells must share the base.
TwoCellElement twisted_bch(const TwoCellElement& u, const TwoCellElement& v);
TwoCellElement two_cell_inverse(const TwoCellElement& u);

// e^{-ad(q)} u: transports a 2-cell based at exp(q).Pi to one based at Pi.
TwoCellElement transport(const GaugeElement& q, const TwoCellElement& u,
                         const GradedElement& new_base);

} // namespace defq
