#include "defq/cech.hpp"

#include <algorithm>
#include <sstream>

namespace defq {

CechLevelDgla::CechLevelDgla(std::shared_ptr<const CoverShape> shape, int level, DglaPtr inner)
    : shape_(std::move(shape)), level_(level), inner_(std::move(inner)) {
    if (level < 0) throw ShapeError("negative Cech level");
    tuples_ = weak_tuples(*shape_, level + 1);
}

std::string CechLevelDgla::name() const {
    std::ostringstream os;
    os << "cech[" << level_ << "](" << inner_->name() << ";" << shape_->to_string() << ")";
    return os.str();
}

Value CechLevelDgla::zero(int) const { return Value(CechMap{}); }

bool CechLevelDgla::is_zero(int degree, const Value& v) const {
    for (const auto& [t, x] : v.as<CechMap>())
        if (!inner_->is_zero(degree, x)) return false;
    return true;
}

Value CechLevelDgla::add(int degree, const Value& a, const Value& b) const {
    CechMap r = a.as<CechMap>();
    for (const auto& [t, x] : b.as<CechMap>()) {
        auto it = r.find(t);
        if (it == r.end()) {
            r[t] = x;
        } else {
            it->second = inner_->add(degree, it->second, x);
            if (inner_->is_zero(degree, it->second)) r.erase(it);
        }
    }
    return Value(std::move(r));
}

Value CechLevelDgla::scale(int degree, const Rational& c, const Value& v) const {
    if (c.is_zero()) return zero(degree);
    CechMap r;
    for (const auto& [t, x] : v.as<CechMap>()) r[t] = inner_->scale(degree, c, x);
    return Value(std::move(r));
}

Value CechLevelDgla::differential(int degree, const Value& v) const {
    CechMap r;
    for (const auto& [t, x] : v.as<CechMap>()) {
        Value dx = inner_->differential(degree, x);
        if (!inner_->is_zero(degree + 1, dx)) r[t] = std::move(dx);
    }
    return Value(std::move(r));
}

Value CechLevelDgla::bracket(int deg_a, const Value& a, int deg_b, const Value& b) const {
    const CechMap& mb = b.as<CechMap>();
    CechMap r;
    for (const auto& [t, x] : a.as<CechMap>()) {
        auto it = mb.find(t);
        if (it == mb.end()) continue;
        Value br = inner_->bracket(deg_a, x, deg_b, it->second);
        if (!inner_->is_zero(deg_a + deg_b, br)) r[t] = std::move(br);
    }
    return Value(std::move(r));
}

std::string CechLevelDgla::to_string(int degree, const Value& v) const {
    const CechMap& m = v.as<CechMap>();
    if (m.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, x] : m) {
        if (!first) os << ", ";
        first = false;
        os << tuple_to_string(t) << ": " << inner_->to_string(degree, x);
    }
    return os.str();
}

Value CechLevelDgla::random_value(int degree, Rng& rng, int complexity) const {
    CechMap r;
    for (const auto& t : tuples_) {
        if (rng.below(4) == 0) continue; // keep data sparse
        Value x = inner_->random_value(degree, rng, complexity);
        if (!inner_->is_zero(degree, x)) r[t] = std::move(x);
    }
    return Value(std::move(r));
}

CechComplex::CechComplex(std::shared_ptr<const CoverShape> shape, DglaPtr inner, int max_level)
    : shape_(std::move(shape)), inner_(std::move(inner)), max_level_(max_level) {
    // Restrictions are ring inclusions; functoriality on the subtuple order
    // means the allowed denominators can only grow with the tuple.
    for (const auto& t : shape_->nonempty()) {
        if (t.size() < 2) continue;
        for (size_t k = 0; k < t.size(); ++k) {
            Tuple sub = t;
            sub.erase(sub.begin() + static_cast<long>(k));
            for (const Poly& d : shape_->denominators(sub)) {
                const auto& up = shape_->denominators(t);
                if (std::find(up.begin(), up.end(), d) == up.end())
                    throw ShapeError("non-functorial restrictions: denominator " + d.to_string() +
                                     " on " + tuple_to_string(sub) + " missing on " +
                                     tuple_to_string(t));
            }
        }
    }
    // Restriction is the identity inclusion, so commuting with d and the
    // bracket reduces to the inner model being well-formed; exercise it once.
    Rng rng(0x5eedULL);
    for (int deg = -1; deg <= 1; ++deg) {
        if (!inner_->degree_ok(deg)) continue;
        Value v = inner_->random_value(deg, rng, 1);
        (void)inner_->differential(deg, v);
    }
}

DglaPtr CechComplex::level(int n) const {
    if (n < 0 || n > max_level_)
        throw ShapeError("level overflow beyond stored shape: " + std::to_string(n));
    auto it = levels_.find(n);
    if (it == levels_.end())
        it = levels_.emplace(n, std::make_shared<CechLevelDgla>(shape_, n, inner_)).first;
    return it->second;
}

GradedElement CechComplex::coface(int n, int i, const GradedElement& x) const {
    if (i < 0 || i > n + 1) throw ShapeError("coface index out of range");
    DglaPtr target = level(n + 1);
    const auto& tgt = *std::static_pointer_cast<const CechLevelDgla>(target);
    GradedElement r(target, x.degree(), x.order());
    for (int k = 0; k <= x.order(); ++k) {
        CechMap out;
        const CechMap& in = x.coeff(k).as<CechMap>();
        for (const auto& t : weak_tuples(*shape_, n + 2)) {
            Tuple sub = t;
            sub.erase(sub.begin() + i);
            auto it = in.find(sub);
            if (it == in.end()) continue;
            if (!inner_->is_zero(x.degree(), it->second)) out[t] = it->second;
        }
        (void)tgt;
        r.set_coeff(k, Value(std::move(out)));
    }
    return r;
}

GradedElement CechComplex::codegeneracy(int n, int i, const GradedElement& x) const {
    if (i < 0 || i > n) throw ShapeError("codegeneracy index out of range");
    DglaPtr target = level(n);
    GradedElement r(target, x.degree(), x.order());
    for (int k = 0; k <= x.order(); ++k) {
        CechMap out;
        const CechMap& in = x.coeff(k).as<CechMap>();
        for (const auto& t : weak_tuples(*shape_, n + 1)) {
            Tuple dup = t;
            dup.insert(dup.begin() + i, t[static_cast<size_t>(i)]);
            auto it = in.find(dup);
            if (it == in.end()) continue;
            if (!inner_->is_zero(x.degree(), it->second)) out[t] = it->second;
        }
        r.set_coeff(k, Value(std::move(out)));
    }
    return r;
}

GradedElement CechComplex::differential(int n, const GradedElement& x) const {
    GradedElement acc(level(n + 1), x.degree(), x.order());
    for (int i = 0; i <= n + 1; ++i) {
        GradedElement term = coface(n, i, x);
        acc = (i % 2 == 0) ? ge_add(acc, term) : ge_sub(acc, term);
    }
    return acc;
}

CechComplex cech_build(std::shared_ptr<const CoverShape> shape, DglaPtr inner, int max_level) {
    return CechComplex(std::move(shape), std::move(inner), max_level);
}

Value CechCochain::at(const Tuple& t) const {
    auto it = values.find(t);
    return it == values.end() ? inner->zero(degree) : it->second;
}

bool CechCochain::is_zero() const {
    for (const auto& [t, v] : values)
        if (!inner->is_zero(degree, v)) return false;
    return true;
}

std::string CechCochain::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, v] : values) {
        if (inner->is_zero(degree, v)) continue;
        if (!first) os << ", ";
        first = false;
        os << tuple_to_string(t) << ": " << inner->to_string(degree, v);
    }
    if (first) os << "0";
    return os.str();
}

CechCochain cech_coboundary(const CechCochain& c) {
    CechCochain r;
    r.shape = c.shape;
    r.inner = c.inner;
    r.level = c.level + 1;
    r.degree = c.degree;
    for (const auto& t : c.shape->tuples_of_size(c.level + 2)) {
        Value acc = c.inner->zero(c.degree);
        for (size_t k = 0; k < t.size(); ++k) {
            Tuple sub = t;
            sub.erase(sub.begin() + static_cast<long>(k));
            Value v = c.at(sub);
            if (k % 2 == 1) v = c.inner->scale(c.degree, Rational(-1), v);
            acc = c.inner->add(c.degree, acc, v);
        }
        if (!c.inner->is_zero(c.degree, acc)) r.values[t] = std::move(acc);
    }
    return r;
}

bool cochain_equal(const CechCochain& a, const CechCochain& b) {
    if (a.level != b.level || a.degree != b.degree) return false;
    for (const auto& t : a.shape->tuples_of_size(a.level + 1))
        if (!a.inner->equal(a.degree, a.at(t), b.at(t))) return false;
    return true;
}

} // namespace defq
