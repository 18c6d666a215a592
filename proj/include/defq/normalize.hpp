// Order-by-order normalization of a weak MC triple over an acyclic cover:
// phase 1 removes a through equivalences (1, exp(b)) with db matching the
// order-n part of log a; phase 2 removes g through (exp(h), 1). Termination
// is by h-truncation. The returned chain, applied in order, reproduces the
// normal form exactly.
#pragma once

#include "defq/splitting.hpp"
#include "defq/weakmc.hpp"

#include <vector>

namespace defq {

struct NormalizeResult {
    WeakMCTriple normal_form; // shape (Pi', 1, 1)
    std::vector<WeakEquivalence> chain;
    std::string transcript;
};

// Throws OracleError with the offending cocycle and h-order when the oracle
// cannot split; throws DegreeError when the input is not weak MC.
NormalizeResult normalize_acyclic(const WeakMCTriple& w, const SplittingOracle& oracle);

} // namespace defq
