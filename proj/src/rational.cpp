#include "defq/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace defq {

Rational::Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_.canonicalize();
}

Rational Rational::from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::domain_error("bad rational literal: " + s);
    if (sgn(q.get_den()) == 0) throw std::domain_error("rational with zero denominator: " + s);
    q.canonicalize();
    return Rational(std::move(q));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    return Rational(q_ / o.q_);
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return Rational(1 / q_);
}

std::string Rational::to_string() const {
    return q_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
}

} // namespace defq
