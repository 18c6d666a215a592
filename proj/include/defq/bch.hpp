// Universal Baker-Campbell-Hausdorff expansion. Coefficients are computed
// once per weight from log(exp(x)exp(y)) in the truncated free associative
// algebra on two letters, and each homogeneous word component is converted to
// a left-nested bracket via the Dynkin projection (divide by the weight).
// Evaluating the cached formula in any Lie algebra where (N+1)-fold brackets
// of the arguments vanish gives log(exp(a)exp(b)) exactly.
#pragma once

#include "defq/rational.hpp"

#include <vector>

namespace defq {

struct BchWord {
    Rational coefficient;
    std::vector<int> letters; // 0 = first argument, 1 = second; left-nested brackets
};

// All words of weight 1..max_weight with nonzero coefficient, weight ascending.
// Cached and thread-safe.
const std::vector<BchWord>& bch_formula(int max_weight);

} // namespace defq
