// L-polydifferential operators: O-combinations of slotwise PBW monomials,
// m_0 (x) .. (x) m_k acting as (f_0,..,f_k) -> c * prod_i act(m_i, f_i).
// Lie degree k = slots - 1; degree -1 is O itself (zero slots).
//
// Composition inserts one operator into a slot of another by the iterated
// binomial coproduct (Leibniz in the inserted slot); the Gerstenhaber bracket
// and the Hochschild differential d_H = [mu, -] follow the classical signs
//   P o Q = sum_i (-1)^{i q} P o_i Q,   [P,Q] = P o Q - (-1)^{pq} Q o P.
#pragma once

#include "defq/dgla.hpp"
#include "defq/ualg.hpp"
#include "defq/polyvec.hpp"

#include <map>

namespace defq {

using SlotKey = std::vector<MultiIndex>; // one PBW exponent per slot

struct LPolyDiffOp {
    int slots = 0; // degree + 1
    std::map<SlotKey, RatFunc> terms;

    bool is_zero() const { return terms.empty(); }
};

LPolyDiffOp op_zero(int slots);
LPolyDiffOp op_scalar(const AlgebroidModel& model, const RatFunc& f); // degree -1
LPolyDiffOp op_monomial(int slots, SlotKey key, const RatFunc& c);
void op_add_term(LPolyDiffOp& p, const SlotKey& key, const RatFunc& c);
LPolyDiffOp op_add(const LPolyDiffOp& a, const LPolyDiffOp& b);
LPolyDiffOp op_scale(const Rational& c, const LPolyDiffOp& a);
bool op_equal(const LPolyDiffOp& a, const LPolyDiffOp& b);
std::string op_to_string(const LPolyDiffOp& p);

// The multiplication cochain mu(f,g) = f g.
LPolyDiffOp op_mu(const AlgebroidModel& model);

// Apply to functions; args.size() must equal slots.
RatFunc op_apply(const AlgebroidModel& model, const LPolyDiffOp& p,
                 const std::vector<RatFunc>& args);

// Insertion P o_i Q (no sign), slots(P)-1+slots(Q) slots.
LPolyDiffOp op_insert(const AlgebroidModel& model, const LPolyDiffOp& p, int i,
                      const LPolyDiffOp& q);

LPolyDiffOp gerstenhaber(const AlgebroidModel& model, const LPolyDiffOp& p,
                         const LPolyDiffOp& q);
LPolyDiffOp hochschild_diff(const AlgebroidModel& model, const LPolyDiffOp& p);

// Componentwise product of equal-arity operators (slot j of the result is the
// U-product of the slot-j monomials).
LPolyDiffOp op_slotwise_mul(const AlgebroidModel& model, const LPolyDiffOp& a,
                            const LPolyDiffOp& b);

// True iff the operator kills constants in every argument slot.
bool normalized_subcomplex_check(const LPolyDiffOp& p);

class DiffOpDgla final : public Dgla {
public:
    explicit DiffOpDgla(AlgebroidPtr model) : model_(std::move(model)) {}

    std::string name() const override { return "diffop(" + model_->label() + ")"; }
    bool degree_ok(int degree) const override { return degree >= -1; }
    bool quantum_type() const override { return true; }

    Value zero(int degree) const override { return Value(op_zero(degree + 1)); }
    bool is_zero(int, const Value& v) const override { return v.as<LPolyDiffOp>().is_zero(); }
    Value add(int, const Value& a, const Value& b) const override {
        return Value(op_add(a.as<LPolyDiffOp>(), b.as<LPolyDiffOp>()));
    }
    Value scale(int, const Rational& c, const Value& v) const override {
        return Value(op_scale(c, v.as<LPolyDiffOp>()));
    }
    Value differential(int, const Value& v) const override {
        return Value(hochschild_diff(*model_, v.as<LPolyDiffOp>()));
    }
    Value bracket(int, const Value& a, int, const Value& b) const override {
        return Value(gerstenhaber(*model_, a.as<LPolyDiffOp>(), b.as<LPolyDiffOp>()));
    }
    std::string to_string(int, const Value& v) const override {
        return op_to_string(v.as<LPolyDiffOp>());
    }
    Value random_value(int degree, Rng& rng, int complexity) const override;
    bool value_allowed(int degree, const Value& v, const std::vector<Poly>& allowed) const override;

    const AlgebroidPtr& algebroid() const { return model_; }

private:
    AlgebroidPtr model_;
};

// Star-product generator for a constant-coefficient bivector:
// Pi = sum_{n=1..N} h^n/n! P^n with P = sum_{a<b} pi^{ab} e_a (x) e_b.
// Refuses nonconstant coefficients.
GradedElement moyal_generate(const std::shared_ptr<const DiffOpDgla>& dgla,
                             const LPolyVector& pi, int order);

// Antisymmetrization of a bidifferential operator; the bivector candidate and
// whether every antisymmetrized term was of differential order one per slot.
struct SkewResult {
    LPolyVector bivector;
    bool first_order = true;
};
SkewResult skew_symmetrize(const AlgebroidModel& model, const LPolyDiffOp& b);

} // namespace defq
