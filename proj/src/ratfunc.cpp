#include "defq/ratfunc.hpp"

#include "defq/errors.hpp"

#include <ostream>

namespace defq {

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    num_.check_same_vars(den_);
    if (den_.is_zero()) throw DegreeError("rational function with zero denominator");
    normalize();
}

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.vars(), 1)) {}

RatFunc RatFunc::constant(std::vector<std::string> vars, const Rational& c) {
    return RatFunc(Poly::constant(std::move(vars), c));
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.vars(), 1);
        return;
    }
    if (!den_.is_constant()) {
        Poly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            Poly qn, qd;
            if (!poly_divide_exact(num_, g, &qn) || !poly_divide_exact(den_, g, &qd))
                throw InternalError("gcd does not divide in RatFunc normalization");
            num_ = qn;
            den_ = qd;
        }
    }
    // monic denominator
    Rational lc = den_.leading_coefficient();
    if (!lc.is_one()) {
        Rational inv = lc.inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    num_.check_same_vars(o.num_);
    if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
    num_.check_same_vars(o.num_);
    if (den_ == o.den_) return RatFunc(num_ - o.num_, den_);
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    num_.check_same_vars(o.num_);
    if (is_polynomial() && o.is_polynomial()) return RatFunc(num_ * o.num_);
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw DegreeError("division by zero rational function");
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

bool RatFunc::operator<(const RatFunc& o) const {
    if (num_ < o.num_) return true;
    if (o.num_ < num_) return false;
    return den_ < o.den_;
}

RatFunc RatFunc::scaled(const Rational& c) const {
    if (c.is_zero()) return RatFunc(Poly(vars()));
    RatFunc r = *this;
    r.num_ = r.num_.scaled(c);
    return r;
}

RatFunc RatFunc::derivative(int var) const {
    if (is_polynomial()) {
        Rational d = den_.constant_term();
        return RatFunc(num_.derivative(var).scaled(d.inverse()));
    }
    Poly n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
    return RatFunc(n, den_ * den_);
}

Rational RatFunc::eval_zero() const {
    Rational d = den_.constant_term();
    if (d.is_zero()) throw DegreeError("denominator vanishes at the base point");
    return num_.constant_term() / d;
}

std::string RatFunc::to_string() const {
    if (is_polynomial()) {
        Rational d = den_.constant_term();
        return d.is_one() ? num_.to_string() : num_.scaled(d.inverse()).to_string();
    }
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.to_string(); }

} // namespace defq
