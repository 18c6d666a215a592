// Sparse multivariate polynomials over Rational with a fixed, ordered
// variable list. Canonical form: graded-lex term order, no zero coefficients.
#pragma once

#include "defq/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace defq {

using Exponents = std::vector<int>;

// Graded lexicographic order on equal-length exponent vectors.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

class Poly {
public:
    using TermMap = std::map<Exponents, Rational, GrlexLess>;

    Poly() = default; // zero polynomial in zero variables
    explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Poly constant(std::vector<std::string> vars, const Rational& c);
    static Poly variable(std::vector<std::string> vars, int index);
    static Poly monomial(std::vector<std::string> vars, Exponents e, const Rational& c);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    int nvars() const { return static_cast<int>(vars_.size()); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const; // coefficient of the zero monomial
    int total_degree() const;       // -1 for the zero polynomial

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
    Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    bool operator==(const Poly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    bool operator<(const Poly& o) const; // for use as a map key

    Poly scaled(const Rational& c) const;
    Poly pow(int n) const;
    Poly derivative(int var) const;
    Rational eval_zero() const { return constant_term(); }

    // Leading data in grlex order; polynomial must be nonzero.
    const Exponents& leading_exponents() const;
    const Rational& leading_coefficient() const;

    void add_term(const Exponents& e, const Rational& c); // canonicalizing insert

    std::string to_string() const; // grlex-descending, deterministic

    void check_same_vars(const Poly& o) const; // throws DegreeError on mismatch

private:
    std::vector<std::string> vars_;
    TermMap terms_;

    friend Poly poly_mul_serial(const Poly&, const Poly&);
    friend Poly poly_mul_parallel(const Poly&, const Poly&);
};

// Exact division: returns true and sets q if b divides a exactly.
bool poly_divide_exact(const Poly& a, const Poly& b, Poly* q);

// Multivariate gcd over the rationals via primitive pseudo-remainder
// sequences. Result is monic in grlex order (leading coefficient 1);
// gcd(0,0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);

std::ostream& operator<<(std::ostream& os, const Poly& p);

} // namespace defq
