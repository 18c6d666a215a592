// L-polyvector fields: O-combinations of wedge monomials e_{a0} ^ .. ^ e_{ak}
// in strictly increasing index form. Lie degree = exterior degree - 1; the
// Schouten bracket extends the algebroid bracket and anchor action by the
// graded Leibniz rules
//   [u, v^w] = [u,v]^w + (-1)^{|u| ext(v)} v^[u,w]
//   [u^v, w] = (-1)^{ext(v) |w|} [u,w]^v + u^[v,w]
// with |.| the Lie degree.
#pragma once

#include "defq/algebroid.hpp"
#include "defq/dgla.hpp"

#include <map>

namespace defq {

using WedgeIdx = std::vector<int>; // strictly increasing 0-based section indices

struct LPolyVector {
    int ext = 0; // exterior degree; 0 means an element of O
    std::map<WedgeIdx, RatFunc> terms;

    bool is_zero() const { return terms.empty(); }
};

LPolyVector pv_zero(int ext);
LPolyVector pv_scalar(const AlgebroidModel& model, const RatFunc& f);
LPolyVector pv_monomial(int ext, WedgeIdx idx, const RatFunc& c);
void pv_add_term(LPolyVector& p, const WedgeIdx& idx, const RatFunc& c);
LPolyVector pv_add(const LPolyVector& a, const LPolyVector& b);
LPolyVector pv_scale(const Rational& c, const LPolyVector& a);
LPolyVector pv_scale_fn(const RatFunc& c, const LPolyVector& a);
LPolyVector pv_wedge(const LPolyVector& a, const LPolyVector& b);
bool pv_equal(const LPolyVector& a, const LPolyVector& b);

LPolyVector schouten(const AlgebroidModel& model, const LPolyVector& u, const LPolyVector& v);

std::string pv_to_string(const LPolyVector& p);

// Quantum type DGLA of polyvectors: degree k houses ext degree k+1, zero
// differential, Schouten bracket.
class PolyVectorDgla final : public Dgla {
public:
    explicit PolyVectorDgla(AlgebroidPtr model) : model_(std::move(model)) {}

    std::string name() const override { return "polyvec(" + model_->label() + ")"; }
    // degrees above rank-1 are zero spaces (wedges collapse), still legal
    bool degree_ok(int degree) const override { return degree >= -1; }
    bool quantum_type() const override { return true; }

    Value zero(int degree) const override { return Value(pv_zero(degree + 1)); }
    bool is_zero(int, const Value& v) const override { return v.as<LPolyVector>().is_zero(); }
    Value add(int, const Value& a, const Value& b) const override {
        return Value(pv_add(a.as<LPolyVector>(), b.as<LPolyVector>()));
    }
    Value scale(int, const Rational& c, const Value& v) const override {
        return Value(pv_scale(c, v.as<LPolyVector>()));
    }
    Value differential(int degree, const Value&) const override {
        return Value(pv_zero(degree + 2));
    }
    Value bracket(int, const Value& a, int, const Value& b) const override {
        return Value(schouten(*model_, a.as<LPolyVector>(), b.as<LPolyVector>()));
    }
    std::string to_string(int, const Value& v) const override {
        return pv_to_string(v.as<LPolyVector>());
    }
    Value random_value(int degree, Rng& rng, int complexity) const override;
    bool value_allowed(int degree, const Value& v, const std::vector<Poly>& allowed) const override;

    const AlgebroidPtr& algebroid() const { return model_; }

private:
    AlgebroidPtr model_;
};

RatFunc random_ratfunc(const std::vector<std::string>& vars, Rng& rng, int complexity);
bool ratfunc_allowed(const RatFunc& f, const std::vector<Poly>& allowed);

} // namespace defq
