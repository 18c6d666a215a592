// Weak Maurer-Cartan triples (Pi_i, g_ij, a_ijk) over a cover, their validity
// conditions, weak gauge equivalences, the Tot 0-simplex correspondence, and
// the classical-limit extraction (skew-symmetrized first-order term).
//
// Conditions checked, per tuple of the shape:
//   (1) d Pi_i + 1/2 [Pi_i, Pi_i] = 0
//   (2) g_ij . Pi_i = Pi_j
//   (3) g_jk g_ij = a_ijk^{-1} . g_ik
//   (4) a_ijk a_ikl = g_ij(a_jkl) a_ijl
// Gauge and 2-cell data are stored as logs; group equations are solved by
// BCH rearrangement.
#pragma once

#include "defq/cech.hpp"
#include "defq/cover.hpp"
#include "defq/dgla.hpp"
#include "defq/diffop.hpp"
#include "defq/nerve.hpp"

#include <map>
#include <optional>

namespace defq {

using Pair = std::pair<int, int>;

struct WeakMCTriple {
    std::shared_ptr<const CoverShape> shape;
    DglaPtr inner;
    int order = 0;

    std::map<int, GradedElement> pi;      // degree 1, per index
    std::map<Pair, GaugeElement> g;       // per pair in the shape, i < j
    std::map<Tuple, TwoCellElement> a;    // per triple in the shape, based at Pi_i

    const GradedElement& pi_at(int i) const;
    const GaugeElement& g_at(int i, int j) const;
    const TwoCellElement& a_at(const Tuple& t) const;

    void validate_shape() const; // data present exactly for the shape's tuples
};

// A triple (Pi, 1, 1) from a single global element.
WeakMCTriple trivial_triple(std::shared_ptr<const CoverShape> shape, const GradedElement& pi);

struct ConditionResult {
    int condition = 0; // 1..4
    Tuple tuple;
    bool passed = true;
    int first_fail_order = -1; // h-order of the first failure
    std::string detail;
};

struct WeakMCReport {
    bool passed = true;
    std::vector<ConditionResult> conditions;
    std::string to_string() const;
};

WeakMCReport weak_mc_check(const WeakMCTriple& w);

struct WeakEquivalence {
    std::map<int, GaugeElement> gamma;     // per index
    std::map<Pair, TwoCellElement> alpha;  // per pair, based at Pi_i of the source

    const GaugeElement& gamma_at(int i) const;
    const TwoCellElement& alpha_at(int i, int j) const;
};

WeakEquivalence weak_equiv_identity(const WeakMCTriple& w);
// Solves the primed data from conditions (2) and (3); output passes
// weak_mc_check whenever the input does.
WeakMCTriple weak_equiv_apply(const WeakEquivalence& e, const WeakMCTriple& w);
// Composite equivalence: apply(e_then, apply(e_first, w)) = apply(compose, w).
WeakEquivalence weak_equiv_compose(const WeakEquivalence& e_then, const WeakEquivalence& e_first,
                                   const WeakMCTriple& source);

// The 4-tuple (m, g, a, t) of a cosimplicial 2-groupoid 0-simplex; cells over
// weakly increasing tuples are the degeneracy-filled extension of the strict
// data, and construction verifies every face and commutativity condition.
struct TotZeroSimplex {
    WeakMCTriple data;
};
TotZeroSimplex tot_from_triple(const WeakMCTriple& w); // throws if any condition fails
WeakMCTriple triple_from_tot(const TotZeroSimplex& t);

// First-order antisymmetrization of the local deformations (polydiffop
// models only); checks agreement on overlaps.
struct BivectorFamily {
    std::map<int, LPolyVector> pi;
    bool first_order = true; // false if higher-order terms survived antisymmetrization
    bool overlaps_agree = true;
};
BivectorFamily skew_symmetrize_first_order(const WeakMCTriple& w);

// [pi_i, pi_i] = 0 for every index and restrictions agree on overlapping pairs.
bool poisson_check(const AlgebroidModel& model, const CoverShape& shape,
                   const std::map<int, LPolyVector>& pis);

// Helpers shared with the normalization and promotion passes.
int first_nonzero_order(const GradedElement& x); // -1 if zero
GaugeElement bch_chain(const std::vector<GradedElement>& logs);

} // namespace defq
