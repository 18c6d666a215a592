// The Cech cosimplicial DGLA of a cover: level n carries the local model on
// all weakly increasing (n+1)-tuples whose support intersects, cofaces drop
// an index (restriction is ring inclusion), codegeneracies repeat one.
// Alternating data on strictly increasing tuples is handled by CechCochain,
// which is what the normalization inductions and splitting oracles consume.
#pragma once

#include "defq/cover.hpp"
#include "defq/dgla.hpp"

#include <map>
#include <memory>

namespace defq {

using CechMap = std::map<Tuple, Value>; // zero entries dropped

class CechLevelDgla final : public Dgla {
public:
    CechLevelDgla(std::shared_ptr<const CoverShape> shape, int level, DglaPtr inner);

    std::string name() const override;
    bool degree_ok(int degree) const override { return inner_->degree_ok(degree); }
    bool quantum_type() const override { return inner_->quantum_type(); }

    Value zero(int degree) const override;
    bool is_zero(int degree, const Value& v) const override;
    Value add(int degree, const Value& a, const Value& b) const override;
    Value scale(int degree, const Rational& c, const Value& v) const override;
    Value differential(int degree, const Value& v) const override;
    Value bracket(int deg_a, const Value& a, int deg_b, const Value& b) const override;

    std::string to_string(int degree, const Value& v) const override;
    Value random_value(int degree, Rng& rng, int complexity) const override;

    int level() const { return level_; }
    const DglaPtr& inner() const { return inner_; }
    const CoverShape& shape() const { return *shape_; }

private:
    std::shared_ptr<const CoverShape> shape_;
    int level_;
    DglaPtr inner_;
    std::vector<Tuple> tuples_; // valid weak tuples at this level
};

// Built from a cover shape and a local model; validates that the subtuple
// order has monotone coefficient rings (restrictions are ring inclusions) and
// that restriction commutes with d and the bracket on sample generators.
class CechComplex {
public:
    CechComplex(std::shared_ptr<const CoverShape> shape, DglaPtr inner, int max_level = 4);

    const CoverShape& shape() const { return *shape_; }
    const std::shared_ptr<const CoverShape>& shape_ptr() const { return shape_; }
    const DglaPtr& inner() const { return inner_; }
    int max_level() const { return max_level_; }

    DglaPtr level(int n) const; // throws on overflow

    // delta_i : level n -> level n+1, 0 <= i <= n+1
    GradedElement coface(int n, int i, const GradedElement& x) const;
    // sigma_i : level n+1 -> level n, 0 <= i <= n
    GradedElement codegeneracy(int n, int i, const GradedElement& x) const;
    // Cech differential: alternating sum of cofaces, level n -> n+1.
    GradedElement differential(int n, const GradedElement& x) const;

private:
    std::shared_ptr<const CoverShape> shape_;
    DglaPtr inner_;
    int max_level_;
    mutable std::map<int, DglaPtr> levels_;
};

CechComplex cech_build(std::shared_ptr<const CoverShape> shape, DglaPtr inner,
                       int max_level = 4);

// Alternating Cech data: one inner-model value of a fixed degree per strictly
// increasing tuple, at a single h-order. Missing tuples are zero.
struct CechCochain {
    std::shared_ptr<const CoverShape> shape;
    DglaPtr inner;
    int level = 0;  // values on (level+1)-tuples
    int degree = 0; // inner-model degree
    std::map<Tuple, Value> values;

    Value at(const Tuple& t) const;
    bool is_zero() const;
    std::string to_string() const;
};

CechCochain cech_coboundary(const CechCochain& c);
bool cochain_equal(const CechCochain& a, const CechCochain& b);

} // namespace defq
