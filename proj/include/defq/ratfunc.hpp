// Rational functions p/q over the polynomial ring. Canonical form:
// gcd(p, q) = 1 and q monic in grlex order; equality is representational.
#pragma once

#include "defq/poly.hpp"

#include <string>

namespace defq {

class RatFunc {
public:
    RatFunc() = default;
    RatFunc(Poly num, Poly den); // normalizes; throws on zero denominator
    explicit RatFunc(Poly num);  // denominator 1

    static RatFunc constant(std::vector<std::string> vars, const Rational& c);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const std::vector<std::string>& vars() const { return num_.vars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o) { *this = *this + o; return *this; }
    RatFunc& operator-=(const RatFunc& o) { *this = *this - o; return *this; }
    RatFunc& operator*=(const RatFunc& o) { *this = *this * o; return *this; }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }
    bool operator<(const RatFunc& o) const;

    RatFunc scaled(const Rational& c) const;
    RatFunc derivative(int var) const; // quotient rule
    Rational eval_zero() const;        // throws if denominator vanishes at 0

    std::string to_string() const;

private:
    void normalize();
    Poly num_;
    Poly den_ = Poly::constant({}, 1);
};

std::ostream& operator<<(std::ostream& os, const RatFunc& f);

} // namespace defq
