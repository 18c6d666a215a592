// Exact rationals over arbitrary-precision integers (GMP mpq under the hood).
// Always stored canonically: lowest terms, positive denominator.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace defq {

class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {} // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    static Rational from_string(const std::string& s); // "p" or "p/q"

    Rational operator+(const Rational& o) const { return Rational(q_ + o.q_); }
    Rational operator-(const Rational& o) const { return Rational(q_ - o.q_); }
    Rational operator*(const Rational& o) const { return Rational(q_ * o.q_); }
    Rational operator/(const Rational& o) const; // throws on division by zero
    Rational operator-() const { return Rational(-q_); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }

    bool operator==(const Rational& o) const { return q_ == o.q_; }
    bool operator!=(const Rational& o) const { return q_ != o.q_; }
    bool operator<(const Rational& o) const { return q_ < o.q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    int sign() const { return sgn(q_); }

    Rational inverse() const;
    Rational abs() const { return Rational(::abs(q_)); }

    std::string numerator_str() const { return q_.get_num().get_str(); }
    std::string denominator_str() const { return q_.get_den().get_str(); }
    std::string to_string() const;

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational rat(long n, long d = 1) { return Rational(n, d); }

} // namespace defq
