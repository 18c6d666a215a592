// Free Lie algebroid over a polynomial / rational-function base: anchor
// matrix rho (one derivation per basis section) and structure constants
// [e_a, e_b] = sum_c f^c_ab e_c. Validation checks that the anchor is a Lie
// morphism onto derivations and that the bracket satisfies Jacobi with the
// anchor-twisted Leibniz rule, on generators.
#pragma once

#include "defq/ratfunc.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace defq {

using Section = std::vector<RatFunc>; // coefficients in the basis e_1..e_r

class AlgebroidModel {
public:
    AlgebroidModel(std::string label, std::vector<std::string> vars, int rank,
                   std::vector<Section> anchor_columns,
                   std::map<std::pair<int, int>, Section> brackets);

    const std::string& label() const { return label_; }
    const std::vector<std::string>& vars() const { return vars_; }
    int dim() const { return static_cast<int>(vars_.size()); }
    int rank() const { return rank_; }

    RatFunc zero_fn() const { return RatFunc(Poly(vars_)); }
    RatFunc one_fn() const { return RatFunc(Poly::constant(vars_, 1)); }

    // rho(e_a) applied to a function.
    RatFunc anchor_apply(int a, const RatFunc& f) const;
    RatFunc anchor_apply(const Section& u, const RatFunc& f) const;

    // [e_a, e_b] as a section; antisymmetric in (a, b).
    Section bracket_of_generators(int a, int b) const;
    // Full Lie-Rinehart bracket of sections.
    Section bracket_sections(const Section& u, const Section& v) const;

    Section zero_section() const { return Section(static_cast<size_t>(rank_), zero_fn()); }
    Section basis_section(int a) const;

    void validate() const; // throws DegreeError with a witness on failure

    bool flat() const; // all structure constants zero

private:
    std::string label_;
    std::vector<std::string> vars_;
    int rank_;
    std::vector<Section> anchor_; // anchor_[a][i]: coefficient of d/dx_i in rho(e_{a+1})
    std::map<std::pair<int, int>, Section> brackets_; // keys a < b, 0-based
};

using AlgebroidPtr = std::shared_ptr<const AlgebroidModel>;

// Tangent algebroid of affine space: rank = dim, anchor identity, zero bracket.
AlgebroidPtr tangent_algebroid(std::vector<std::string> vars, std::string label = "");

} // namespace defq
