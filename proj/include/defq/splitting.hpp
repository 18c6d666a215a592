// Splitting oracles witness acyclicity: given a Cech i-cocycle (i >= 1) they
// either produce b with db = cocycle or report failure. Every returned b is
// rechecked against its defining equation before being handed out.
#pragma once

#include "defq/cech.hpp"

#include <memory>
#include <optional>
#include <string>

namespace defq {

class SplittingOracle {
public:
    virtual ~SplittingOracle() = default;
    virtual std::string name() const = 0;
    virtual std::optional<CechCochain> split(const CechCochain& cocycle) const = 0;
};

// One-index covers: positive levels carry no alternating data.
class TrivialOracle final : public SplittingOracle {
public:
    std::string name() const override { return "trivial"; }
    std::optional<CechCochain> split(const CechCochain& cocycle) const override;
};

// Cone contraction h(c)_{i1..ik} = c_{0 i1..ik}; needs every tuple of the
// shape to stay in the shape when 0 is adjoined.
class ConeOracle final : public SplittingOracle {
public:
    std::string name() const override { return "cone"; }
    std::optional<CechCochain> split(const CechCochain& cocycle) const override;
};

// Exact Gaussian elimination over Q on the shape incidence system, applied
// coordinate-free to the model values. Complete whenever a solution exists in
// the span of the stored tuples (restrictions are inclusions, so it is).
class LinearOracle final : public SplittingOracle {
public:
    std::string name() const override { return "linear"; }
    std::optional<CechCochain> split(const CechCochain& cocycle) const override;
};

std::shared_ptr<SplittingOracle> make_oracle(const std::string& name);

} // namespace defq
