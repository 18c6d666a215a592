// Promotion of a weak quantization to an actual deformation (a = 1): at each
// order n >= 2 the n-th slice of log a is a Cech 2-cocycle with values in O;
// it splits as an invariant cocycle plus a coboundary. The coboundary is
// removed by the gauge exp(h^n alpha_n); the invariant part is deleted
// outright, which is not a weak equivalence, so all four triple conditions
// are rechecked exactly after every deletion.
#pragma once

#include "defq/splitting.hpp"
#include "defq/weakmc.hpp"

namespace defq {

// Splits an O-valued cocycle into an invariant-valued cocycle plus the rest.
class InvariantsOracle {
public:
    virtual ~InvariantsOracle() = default;
    virtual std::string name() const = 0;
    // Returns (invariant part, remainder); the remainder is what the
    // splitting oracle must then write as a coboundary.
    virtual std::pair<CechCochain, CechCochain> project(const CechCochain& cocycle) const = 0;
};

// O^L = k for a surjective anchor over an affine base: the invariant part of
// a function is its value at the base point.
class ConstantsInvariants final : public InvariantsOracle {
public:
    std::string name() const override { return "constants"; }
    std::pair<CechCochain, CechCochain> project(const CechCochain& cocycle) const override;
};

struct PromoteResult {
    WeakMCTriple actual; // a = 1
    std::string transcript;
};

// Requires a weak quantization (a = 1 mod h^2) over the polydifferential
// model with normalized local data. Throws OracleError when a splitting
// fails, DegreeError on malformed input.
PromoteResult promote_actual(const WeakMCTriple& w, const InvariantsOracle& invariants,
                             const SplittingOracle& splitting);

} // namespace defq
