// Abelian test model: a fixed-dimension rational vector space per degree,
// zero bracket, optional differential given by matrices (validated d.d = 0).
#pragma once

#include "defq/dgla.hpp"

#include <map>
#include <vector>

namespace defq {

using QVec = std::vector<Rational>;
using QMatrix = std::vector<std::vector<Rational>>; // row-major, rows x cols

class AbelianDgla final : public Dgla {
public:
    // dims: degree -> dimension; diff: degree -> matrix dims[deg+1] x dims[deg].
    AbelianDgla(std::map<int, int> dims, std::map<int, QMatrix> diff = {});

    std::string name() const override;
    bool degree_ok(int degree) const override;
    bool quantum_type() const override;

    Value zero(int degree) const override;
    bool is_zero(int degree, const Value& v) const override;
    Value add(int degree, const Value& a, const Value& b) const override;
    Value scale(int degree, const Rational& c, const Value& v) const override;
    Value differential(int degree, const Value& v) const override;
    Value bracket(int deg_a, const Value& a, int deg_b, const Value& b) const override;

    std::string to_string(int degree, const Value& v) const override;
    Value random_value(int degree, Rng& rng, int complexity) const override;

    int dim(int degree) const;
    static Value vec(QVec v) { return Value(std::move(v)); }

private:
    std::map<int, int> dims_;
    std::map<int, QMatrix> diff_;
};

} // namespace defq
