// PBW calculus in the universal envelope of a free algebroid: elements are
// O-combinations of normal-ordered monomials e^beta = e_1^b1 .. e_r^br,
// coefficients kept on the left. Straightening uses e_a c = rho_a(c) + c e_a
// and e_a e_b = e_b e_a + [e_a, e_b] for a > b.
#pragma once

#include "defq/algebroid.hpp"

#include <functional>
#include <map>

namespace defq {

using MultiIndex = std::vector<int>;            // length = rank, entries >= 0
using UElem = std::map<MultiIndex, RatFunc>;    // zero coefficients dropped

int multi_total(const MultiIndex& m);
MultiIndex multi_zero(int rank);

void u_add_term(UElem& u, const MultiIndex& m, const RatFunc& c);
UElem u_add(const UElem& a, const UElem& b);
UElem u_scale(const RatFunc& c, const UElem& a);
bool u_is_zero(const UElem& a);

UElem u_mul(const AlgebroidModel& model, const UElem& a, const UElem& b);

// Action on O through the anchor; the module axiom act(ab, f) = act(a, act(b, f))
// holds because the anchor is a Lie morphism.
RatFunc u_act_monomial(const AlgebroidModel& model, const MultiIndex& m, const RatFunc& f);
RatFunc u_act(const AlgebroidModel& model, const UElem& a, const RatFunc& f);

// Iterated binomial coproduct: all splits of beta into `parts` summands with
// their multinomial coefficients. Valid on the PBW basis also for nonabelian
// brackets (expansion in increasing generator order stays normal-ordered).
void u_coproduct(const MultiIndex& beta, int parts,
                 const std::function<void(const std::vector<MultiIndex>&, const Rational&)>& emit);

std::string u_to_string(const AlgebroidModel& model, const UElem& a);
std::string multi_to_string(const MultiIndex& m);

} // namespace defq
