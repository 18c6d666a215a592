// L-differential forms (O-combinations of dual wedge monomials eps^{a1..ap})
// with the Cartan calculus: contraction, the L-de Rham differential, Lie
// derivatives, and the J map of a nondegenerate bivector.
//
// Conventions, fixed once and validated by tests:
//   - pairing (eps^B)(e_{a1},..,e_{ap}) = det(delta_{B_s, a_t});
//   - contraction inserts the polyvector factors into the FIRST slots in
//     order: (iota_u eta)(w..) = eta(u_1,..,u_m, w..);
//   - Lie derivative L_u = d iota_u + (-1)^k iota_u d with k the Lie degree;
//   - J inverts pi-sharp on sections and extends by exterior products;
//     it carries [-, pi] to the L-de Rham differential with the fixed sign
//     rule J([u, pi]) = (-1)^k lde_rham(J(u)), k the Lie degree of u.
#pragma once

#include "defq/algebroid.hpp"
#include "defq/polyvec.hpp"

#include <map>
#include <optional>

namespace defq {

struct LForm {
    int deg = 0; // form degree p >= 0
    std::map<WedgeIdx, RatFunc> terms;

    bool is_zero() const { return terms.empty(); }
};

LForm lf_zero(int deg);
LForm lf_monomial(int deg, WedgeIdx idx, const RatFunc& c);
void lf_add_term(LForm& f, const WedgeIdx& idx, const RatFunc& c);
LForm lf_add(const LForm& a, const LForm& b);
LForm lf_scale(const Rational& c, const LForm& a);
LForm lf_scale_fn(const RatFunc& c, const LForm& a);
LForm lf_wedge(const LForm& a, const LForm& b);
bool lf_equal(const LForm& a, const LForm& b);
std::string lf_to_string(const LForm& f);

// eta evaluated on basis sections with the given indices (any order).
RatFunc lf_eval_basis(const LForm& eta, const WedgeIdx& indices,
                      const AlgebroidModel& model);
// eta(w, e_{rest...}) for a section w in the first slot.
RatFunc lf_eval_section_first(const LForm& eta, const Section& w, const WedgeIdx& rest,
                              const AlgebroidModel& model);

// Contraction; degree overflow gives zero, not an error.
LForm contract(const LPolyVector& u, const LForm& eta);

// The L-de Rham differential (Chevalley-Eilenberg formula); squares to zero
// whenever the model passes its Jacobi check.
LForm lde_rham(const AlgebroidModel& model, const LForm& eta);

LForm lie_derivative(const AlgebroidModel& model, const LPolyVector& u, const LForm& eta);

// Randomized verification of the three Cartan identities plus d.d = 0.
struct CartanReport {
    bool passed = true;
    int failed_identity = 0; // 1..4, 0 when passed
    std::string witness;
};
struct CartanOptions {
    int max_ext = 2;       // exterior degree of random polyvectors
    int complexity = 1;    // size of random coefficients
    bool inject_sign_fault = false; // negative control: flips a sign in identity 3
};
CartanReport cartan_check(const AlgebroidModel& model, int trials, std::uint64_t seed,
                          const CartanOptions& options = {});

// pi-sharp and the multiplicative extension of its inverse.
struct SharpJ {
    std::vector<std::vector<RatFunc>> sharp;   // column a: pi-sharp(eps^a) in basis e
    std::vector<std::vector<RatFunc>> inverse; // column a: J(e_a) in basis eps
    LForm omega;                               // J(pi)
};

// Requires invertibility of the matrix of pi over O; throws otherwise.
SharpJ sharp_and_J(const AlgebroidModel& model, const LPolyVector& pi);

LForm j_apply(const AlgebroidModel& model, const SharpJ& sj, const LPolyVector& u);

// Checks J([u, pi]) == lde_rham(J(u)) exactly.
bool j_intertwines(const AlgebroidModel& model, const SharpJ& sj, const LPolyVector& pi,
                   const LPolyVector& u);

} // namespace defq
