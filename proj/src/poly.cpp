#include "defq/poly.hpp"

#include "defq/errors.hpp"
#include "defq/kernels.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

namespace defq {

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
    long da = std::accumulate(a.begin(), a.end(), 0L);
    long db = std::accumulate(b.begin(), b.end(), 0L);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Poly Poly::constant(std::vector<std::string> vars, const Rational& c) {
    Poly p(std::move(vars));
    if (!c.is_zero()) p.terms_[Exponents(p.vars_.size(), 0)] = c;
    return p;
}

Poly Poly::variable(std::vector<std::string> vars, int index) {
    Poly p(std::move(vars));
    if (index < 0 || index >= p.nvars()) throw DegreeError("variable index out of range");
    Exponents e(p.vars_.size(), 0);
    e[index] = 1;
    p.terms_[e] = Rational(1);
    return p;
}

Poly Poly::monomial(std::vector<std::string> vars, Exponents e, const Rational& c) {
    Poly p(std::move(vars));
    if (static_cast<int>(e.size()) != p.nvars())
        throw DegreeError("exponent vector length does not match variable list");
    if (!c.is_zero()) p.terms_[std::move(e)] = c;
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational Poly::constant_term() const {
    Exponents zero(vars_.size(), 0);
    auto it = terms_.find(zero);
    return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    const auto& e = terms_.rbegin()->first; // grlex max has max total degree
    return std::accumulate(e.begin(), e.end(), 0);
}

void Poly::check_same_vars(const Poly& o) const {
    if (vars_ != o.vars_) throw DegreeError("variable-list mismatch");
}

void Poly::add_term(const Exponents& e, const Rational& c) {
    if (static_cast<int>(e.size()) != nvars())
        throw DegreeError("exponent vector length does not match variable list");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_[e] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    check_same_vars(o);
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    check_same_vars(o);
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

Poly Poly::operator-() const {
    Poly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    check_same_vars(o);
    return poly_mul_dispatch(*this, o);
}

bool Poly::operator<(const Poly& o) const {
    if (vars_ != o.vars_) return vars_ < o.vars_;
    return std::lexicographical_compare(
        terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
        [](const auto& x, const auto& y) {
            GrlexLess less;
            if (less(x.first, y.first)) return true;
            if (less(y.first, x.first)) return false;
            return x.second < y.second;
        });
}

Poly Poly::scaled(const Rational& c) const {
    Poly r(vars_);
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
    return r;
}

Poly Poly::pow(int n) const {
    if (n < 0) throw DegreeError("negative polynomial power");
    Poly r = Poly::constant(vars_, 1);
    Poly base = *this;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

Poly Poly::derivative(int var) const {
    if (var < 0 || var >= nvars()) throw DegreeError("derivative variable out of range");
    Poly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents e2 = e;
        e2[var] -= 1;
        r.add_term(e2, c * Rational(e[var]));
    }
    return r;
}

const Exponents& Poly::leading_exponents() const {
    if (terms_.empty()) throw InternalError("leading term of zero polynomial");
    return terms_.rbegin()->first;
}

const Rational& Poly::leading_coefficient() const {
    if (terms_.empty()) throw InternalError("leading term of zero polynomial");
    return terms_.rbegin()->second;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // grlex descending for display
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rational& c = it->second;
        Rational ac = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        bool has_vars = std::any_of(it->first.begin(), it->first.end(), [](int x) { return x > 0; });
        if (!ac.is_one() || !has_vars) {
            os << ac.to_string();
            if (has_vars) os << "*";
        }
        bool first_var = true;
        for (int i = 0; i < nvars(); ++i) {
            int k = it->first[i];
            if (k == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << vars_[i];
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

bool poly_divide_exact(const Poly& a, const Poly& b, Poly* q) {
    a.check_same_vars(b);
    if (b.is_zero()) return false;
    Poly quot(a.vars());
    Poly rem = a;
    const Exponents& lb = b.leading_exponents();
    while (!rem.is_zero()) {
        const Exponents& lr = rem.leading_exponents();
        Exponents diff(lr.size());
        for (size_t i = 0; i < lr.size(); ++i) {
            diff[i] = lr[i] - lb[i];
            if (diff[i] < 0) return false;
        }
        Rational coeff = rem.leading_coefficient() / b.leading_coefficient();
        Poly t = Poly::monomial(a.vars(), diff, coeff);
        quot += t;
        rem -= t * b;
    }
    if (q) *q = quot;
    return true;
}

namespace {

// Univariate view in variable `k`: degree-in-k -> coefficient with e[k] zeroed.
std::map<int, Poly> univariate_view(const Poly& p, int k) {
    std::map<int, Poly> view;
    for (const auto& [e, c] : p.terms()) {
        Exponents rest = e;
        int d = rest[k];
        rest[k] = 0;
        auto it = view.find(d);
        if (it == view.end()) it = view.emplace(d, Poly(p.vars())).first;
        it->second.add_term(rest, c);
    }
    return view;
}

Poly from_univariate(const std::map<int, Poly>& view, int k, const std::vector<std::string>& vars) {
    Poly r(vars);
    for (const auto& [d, coeff] : view) {
        for (const auto& [e, c] : coeff.terms()) {
            Exponents e2 = e;
            e2[k] += d;
            r.add_term(e2, c);
        }
    }
    return r;
}

int degree_in(const Poly& p, int k) {
    int d = -1;
    for (const auto& [e, c] : p.terms()) d = std::max(d, e[k]);
    return d;
}

int top_variable(const Poly& a, const Poly& b) {
    for (int k = a.nvars() - 1; k >= 0; --k)
        if (degree_in(a, k) > 0 || degree_in(b, k) > 0) return k;
    return -1;
}

Poly content_in(const Poly& p, int k) {
    Poly g(p.vars());
    for (const auto& [d, coeff] : univariate_view(p, k)) g = poly_gcd(g, coeff);
    return g;
}

// Pseudo-remainder of a by b in variable k (deg_k a >= deg_k b > iterate).
Poly pseudo_rem(const Poly& a, const Poly& b, int k) {
    auto ua = univariate_view(a, k);
    auto ub = univariate_view(b, k);
    int db = ub.rbegin()->first;
    Poly lb = ub.rbegin()->second;
    Poly r = a;
    while (!r.is_zero()) {
        auto ur = univariate_view(r, k);
        int dr = ur.rbegin()->first;
        if (dr < db) break;
        Poly lr = ur.rbegin()->second;
        // r <- lb * r - lr * x^(dr-db) * b
        Poly shift = Poly::monomial(a.vars(), [&] {
            Exponents e(a.vars().size(), 0);
            e[k] = dr - db;
            return e;
        }(), Rational(1));
        r = lb * r - lr * shift * b;
    }
    return r;
}

Poly make_monic(const Poly& p) {
    if (p.is_zero()) return p;
    return p.scaled(p.leading_coefficient().inverse());
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return make_monic(b);
    if (b.is_zero()) return make_monic(a);
    if (a.is_constant() || b.is_constant()) return Poly::constant(a.vars(), 1);

    int k = top_variable(a, b);
    if (k < 0) return Poly::constant(a.vars(), 1);
    int da = degree_in(a, k);
    int db = degree_in(b, k);
    if (da == 0 || db == 0) {
        // k occurs in only one operand: gcd lives in its k-content
        const Poly& flat = (da == 0) ? a : b;
        const Poly& tall = (da == 0) ? b : a;
        return poly_gcd(flat, content_in(tall, k));
    }

    Poly ca = content_in(a, k);
    Poly cb = content_in(b, k);
    Poly pa, pb;
    if (!poly_divide_exact(a, ca, &pa) || !poly_divide_exact(b, cb, &pb))
        throw InternalError("content does not divide its polynomial");

    Poly r0 = (degree_in(pa, k) >= degree_in(pb, k)) ? pa : pb;
    Poly r1 = (degree_in(pa, k) >= degree_in(pb, k)) ? pb : pa;
    while (!r1.is_zero()) {
        Poly r2 = pseudo_rem(r0, r1, k);
        if (!r2.is_zero()) {
            Poly c2 = content_in(r2, k);
            Poly pp;
            if (!poly_divide_exact(r2, c2, &pp))
                throw InternalError("content does not divide pseudo-remainder");
            r2 = pp;
        }
        r0 = r1;
        r1 = r2;
    }
    Poly g = poly_gcd(ca, cb) * r0;
    g = make_monic(g);
    // primitive PRS can pick up parasitic content; keep only a true divisor
    if (!poly_divide_exact(a, g, nullptr) || !poly_divide_exact(b, g, nullptr)) {
        Poly cg = content_in(g, k);
        Poly pg;
        if (!poly_divide_exact(g, cg, &pg)) throw InternalError("gcd content division failed");
        g = make_monic(poly_gcd(ca, cb) * pg);
        if (!poly_divide_exact(a, g, nullptr) || !poly_divide_exact(b, g, nullptr))
            throw InternalError("gcd candidate does not divide inputs");
    }
    return g;
}

} // namespace defq
