#include "defq/kernels.hpp"
#include "defq/parser.hpp"
#include "defq/poly.hpp"
#include "defq/ratfunc.hpp"
#include "defq/rng.hpp"
#include "defq/series.hpp"

#include <doctest.h>

using namespace defq;

namespace {

const std::vector<std::string> XY{"x", "y"};

Poly parse_poly(const std::string& s, const std::vector<std::string>& vars = XY) {
    return parse_scalar_series(s, vars, 0).coeff(0);
}

Poly random_poly(Rng& rng, int terms, const std::vector<std::string>& vars = XY) {
    Poly p(vars);
    for (int t = 0; t < terms; ++t) {
        Exponents e(vars.size());
        for (auto& x : e) x = static_cast<int>(rng.below(3));
        p.add_term(e, Rational(rng.range(-5, 5)));
    }
    return p;
}

} // namespace

TEST_CASE("rationals are canonical and exact") {
    CHECK(Rational(2, 6) == Rational(1, 3));
    CHECK(Rational(-2, -6) == Rational(1, 3));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 4).to_string() == "1/2");
    CHECK(Rational::from_string("-7/21") == Rational(-1, 3));
    CHECK_THROWS(Rational(1, 0));
    // big values stay exact
    Rational big(1);
    for (int i = 0; i < 40; ++i) big *= Rational(10);
    CHECK(big.numerator_str() == "1" + std::string(40, '0'));
}

TEST_CASE("poly arithmetic matches ring identities") {
    CHECK(parse_poly("(x+1)*(x-1)") == parse_poly("x^2-1"));
    CHECK((parse_poly("x+y") * Poly(XY)).is_zero());
    // coefficient of x y^2 in (x+y)^3 is 3
    Poly cube = parse_poly("(x+y)^3");
    auto it = cube.terms().find(Exponents{1, 2});
    REQUIRE(it != cube.terms().end());
    CHECK(it->second == Rational(3));
    CHECK_THROWS_AS(parse_poly("x") + parse_poly("z", {"z"}), DegreeError);
}

TEST_CASE("poly ring axioms on random inputs") {
    Rng rng(11);
    for (int t = 0; t < 40; ++t) {
        Poly a = random_poly(rng, 3), b = random_poly(rng, 3), c = random_poly(rng, 3);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a - a).is_zero()); // canonical forms are unique
    }
}

TEST_CASE("serial and parallel multiplication kernels agree exactly") {
    Rng rng(23);
    for (int t = 0; t < 10; ++t) {
        Poly a = random_poly(rng, 40, {"x", "y", "z"});
        Poly b = random_poly(rng, 40, {"x", "y", "z"});
        CHECK(poly_mul_serial(a, b) == poly_mul_parallel(a, b));
    }
}

TEST_CASE("exact division and gcd") {
    Poly a = parse_poly("x^2-1");
    Poly b = parse_poly("x-1");
    Poly q;
    REQUIRE(poly_divide_exact(a, b, &q));
    CHECK(q == parse_poly("x+1"));
    CHECK_FALSE(poly_divide_exact(parse_poly("x^2+1"), b, nullptr));

    CHECK(poly_gcd(parse_poly("x^2-1"), parse_poly("x^2-2*x+1")) == parse_poly("x-1"));
    CHECK(poly_gcd(parse_poly("x^2*y+x*y^2"), parse_poly("x*y")) == parse_poly("x*y"));
    CHECK(poly_gcd(parse_poly("2*x"), parse_poly("3*y")) == parse_poly("1"));
    // gcd of a common multiple is divisible by the common factor
    Rng rng(5);
    for (int t = 0; t < 15; ++t) {
        Poly f = random_poly(rng, 2), g = random_poly(rng, 2), h = random_poly(rng, 2);
        if (h.is_zero()) continue;
        Poly gg = poly_gcd(f * h, g * h);
        if ((f * h).is_zero() || (g * h).is_zero()) continue;
        CHECK(poly_divide_exact(gg, poly_gcd(f, g) * h, nullptr) |
              poly_divide_exact(poly_gcd(f, g) * h, gg, nullptr));
    }
}

TEST_CASE("rational functions normalize to reduced monic form") {
    RatFunc f(parse_poly("x^2-1"), parse_poly("2*x-2"));
    CHECK(f.num() == parse_poly("1/2*x+1/2"));
    CHECK(f.den() == parse_poly("1"));
    RatFunc g(parse_poly("x"), parse_poly("y"));
    RatFunc h(parse_poly("x"), parse_poly("y"));
    CHECK(g == h);
    CHECK((g - h).is_zero());
    CHECK_THROWS_AS(RatFunc(parse_poly("1"), Poly(XY)), DegreeError);

    Rng rng(17);
    for (int t = 0; t < 25; ++t) {
        Poly d1 = random_poly(rng, 2), d2 = random_poly(rng, 2);
        if (d1.is_zero() || d2.is_zero()) continue;
        RatFunc a(random_poly(rng, 2), d1), b(random_poly(rng, 2), d2), c(random_poly(rng, 2));
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("h-series arithmetic is exact modulo the truncation") {
    auto one = HbarSeries<Poly>(1, Poly(XY));
    auto s1 = parse_scalar_series("(1+h)*(1-h)", XY, 1);
    auto expect1 = parse_scalar_series("1", XY, 1);
    CHECK(s1 == expect1); // the h^2 term is discarded at N=1

    auto zero = HbarSeries<Poly>(2, Poly(XY));
    CHECK((parse_scalar_series("1+h", XY, 2) * zero).is_zero());

    // geometric series times (1-h) telescopes; oracle: direct convolution
    int N = 4;
    HbarSeries<Poly> geo(N, Poly(XY));
    for (int i = 0; i <= N; ++i) geo.set_coeff(i, Poly::constant(XY, 1));
    auto lhs = geo * parse_scalar_series("1-h", XY, N);
    HbarSeries<Poly> conv(N, Poly(XY));
    for (int i = 0; i <= N; ++i)
        for (int j = 0; i + j <= N; ++j) {
            Poly oneb = Poly::constant(XY, (j == 0) ? 1 : (j == 1 ? -1 : 0));
            conv.set_coeff(i + j, conv.coeff(i + j) + geo.coeff(i) * oneb);
        }
    CHECK(lhs == conv);
    CHECK(lhs == parse_scalar_series("1", XY, N));

    CHECK_THROWS_AS(one * zero, DegreeError); // order mismatch
}

TEST_CASE("series filtration and truncation morphism") {
    auto s = parse_scalar_series("h^2*x", XY, 3);
    CHECK(s.is_zero_mod(2));
    CHECK_FALSE(s.is_zero_mod(3));
    // product of two series in (h) lands in (h^2)
    auto a = parse_scalar_series("h*x", XY, 3);
    auto b = parse_scalar_series("h*y + h^2", XY, 3);
    CHECK((a * b).is_zero_mod(2));

    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        HbarSeries<Poly> u(3, Poly(XY)), v(3, Poly(XY));
        for (int i = 0; i <= 3; ++i) {
            u.set_coeff(i, random_poly(rng, 2));
            v.set_coeff(i, random_poly(rng, 2));
        }
        CHECK(u * v == v * u);
        // truncation is a ring morphism
        for (int m = 0; m <= 3; ++m)
            CHECK((u * v).truncate(m) == u.truncate(m) * v.truncate(m));
    }
}

TEST_CASE("expression grammar") {
    CHECK(parse_poly("2*x^2*y - 1/2") == parse_poly("2*x*x*y - 1/2"));
    CHECK(parse_scalar_series("h^3", XY, 2).is_zero()); // truncated away
    CHECK_THROWS_AS(parse_scalar_series("q", XY, 1), ParseError);
    CHECK_THROWS_AS(parse_scalar_series("1 +", XY, 1), ParseError);
    CHECK_THROWS_AS(parse_scalar_series("e[1]", XY, 1), ParseError); // no basis symbols here

    ParsedElement e = parse_element("h*D[1,0|0,1] + 3*e[1,2]", XY, 2, 2);
    CHECK(e.size() == 2);
    CHECK_THROWS_AS(parse_element("e[1]*e[2]", XY, 2, 1), ParseError);
    CHECK_THROWS_AS(parse_element("e[2,1]", XY, 2, 1), ParseError); // must increase
    CHECK_THROWS_AS(parse_element("D[1|1]", XY, 2, 1), ParseError); // slot length = rank
}
