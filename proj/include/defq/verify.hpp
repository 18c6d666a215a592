// Seeded randomized verification suites: simplicial identities, Cartan
// calculus, graded Jacobi, Deligne 2-groupoid laws with the interchange law,
// gauge-orbit closure, and weak-MC preservation. Trials fan out over worker
// threads; per-trial generators are seeded by index so reports are
// byte-identical for a fixed seed. Failures are minimized by rerunning at the
// smallest complexity that still fails.
#pragma once

#include "defq/abelian.hpp"
#include "defq/cech.hpp"
#include "defq/diffop.hpp"
#include "defq/polyvec.hpp"
#include "defq/weakmc.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace defq {

struct SuiteReport {
    std::string name;
    bool passed = true;
    int trials = 0;
    std::string witness; // minimized failing case, empty when passed
};

struct VerifyOptions {
    int trials = 100;
    std::uint64_t seed = 1;
    int order = 2;           // truncation order for randomized elements
    std::string inject_fault; // "", "cartan-sign", "interchange-sign"
    bool parallel = true;
};

// Standard fixtures.
std::shared_ptr<const CoverShape> two_open_shape();
std::shared_ptr<const CoverShape> full_simplex_shape(int index_count);
std::shared_ptr<const CoverShape> circle_shape(); // 3 opens, no triple: H^1 != 0
AlgebroidPtr plane_model();                        // tangent algebroid of Q[x,y]
AlgebroidPtr nonabelian_rank2_model();             // [e1,e2] = x e1 over Q[x,y]
std::shared_ptr<const DiffOpDgla> plane_diffop();
std::shared_ptr<const PolyVectorDgla> plane_polyvec();
std::shared_ptr<const AbelianDgla> abelian_fixture(); // nonzero differential, zero bracket

// Random generators used across suites; all exact.
GaugeElement random_gauge(const DglaPtr& space, Rng& rng, int order, int complexity);
TwoCellElement random_two_cell(const GradedElement& base, Rng& rng, int complexity);
// MC element obtained by gauge-perturbing a known solution (Moyal element,
// constant bivector, or closed abelian vector).
GradedElement random_mc(const DglaPtr& space, Rng& rng, int order, int complexity);
LPolyVector random_constant_bivector(const AlgebroidModel& model, Rng& rng);
WeakEquivalence random_weak_equivalence(const WeakMCTriple& w, Rng& rng, int complexity);

SuiteReport suite_simplicial(const VerifyOptions& opt);
SuiteReport suite_cartan(const VerifyOptions& opt);
SuiteReport suite_jacobi(const VerifyOptions& opt);
SuiteReport suite_interchange(const VerifyOptions& opt);
SuiteReport suite_gauge_orbit(const VerifyOptions& opt);
SuiteReport suite_weakmc(const VerifyOptions& opt);

std::vector<SuiteReport> run_verify_suites(const VerifyOptions& opt);

} // namespace defq
