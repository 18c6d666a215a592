#include "defq/polyvec.hpp"

#include "defq/errors.hpp"

#include <algorithm>
#include <sstream>

namespace defq {

namespace {

// Sort indices ascending; returns the permutation sign, 0 on duplicates.
int sort_sign(WedgeIdx& idx) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i)
        for (size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
            std::swap(idx[j], idx[j - 1]);
            sign = -sign;
        }
    for (size_t i = 1; i < idx.size(); ++i)
        if (idx[i] == idx[i - 1]) return 0;
    return sign;
}

} // namespace

LPolyVector pv_zero(int ext) {
    LPolyVector p;
    p.ext = ext;
    return p;
}

LPolyVector pv_scalar(const AlgebroidModel& model, const RatFunc& f) {
    (void)model;
    LPolyVector p;
    p.ext = 0;
    if (!f.is_zero()) p.terms[WedgeIdx{}] = f;
    return p;
}

LPolyVector pv_monomial(int ext, WedgeIdx idx, const RatFunc& c) {
    if (static_cast<int>(idx.size()) != ext) throw DegreeError("wedge monomial length mismatch");
    LPolyVector p;
    p.ext = ext;
    WedgeIdx s = idx;
    int sign = sort_sign(s);
    if (sign != 0 && !c.is_zero())
        p.terms[s] = (sign > 0) ? c : -c;
    return p;
}

void pv_add_term(LPolyVector& p, const WedgeIdx& idx, const RatFunc& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(idx.size()) != p.ext) throw DegreeError("wedge term length mismatch");
    auto it = p.terms.find(idx);
    if (it == p.terms.end()) {
        p.terms[idx] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) p.terms.erase(it);
    }
}

LPolyVector pv_add(const LPolyVector& a, const LPolyVector& b) {
    if (a.ext != b.ext) throw DegreeError("exterior degree mismatch in polyvector addition");
    LPolyVector r = a;
    for (const auto& [i, c] : b.terms) pv_add_term(r, i, c);
    return r;
}

LPolyVector pv_scale(const Rational& c, const LPolyVector& a) {
    LPolyVector r = pv_zero(a.ext);
    if (c.is_zero()) return r;
    for (const auto& [i, x] : a.terms) r.terms[i] = x.scaled(c);
    return r;
}

LPolyVector pv_scale_fn(const RatFunc& c, const LPolyVector& a) {
    LPolyVector r = pv_zero(a.ext);
    if (c.is_zero()) return r;
    for (const auto& [i, x] : a.terms) {
        RatFunc y = x * c;
        if (!y.is_zero()) r.terms[i] = std::move(y);
    }
    return r;
}

LPolyVector pv_wedge(const LPolyVector& a, const LPolyVector& b) {
    LPolyVector r = pv_zero(a.ext + b.ext);
    for (const auto& [ia, ca] : a.terms)
        for (const auto& [ib, cb] : b.terms) {
            WedgeIdx idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            int sign = sort_sign(idx);
            if (sign == 0) continue;
            RatFunc c = ca * cb;
            pv_add_term(r, idx, sign > 0 ? c : -c);
        }
    return r;
}

bool pv_equal(const LPolyVector& a, const LPolyVector& b) {
    return a.ext == b.ext && a.terms == b.terms;
}

namespace {

int lie_degree(const LPolyVector& v) { return v.ext - 1; }

// [theta_a, w]: even derivation by a generator.
LPolyVector gen_bracket(const AlgebroidModel& model, int a, const LPolyVector& w) {
    LPolyVector r = pv_zero(w.ext);
    for (const auto& [J, c] : w.terms) {
        // anchor on the coefficient
        pv_add_term(r, J, model.anchor_apply(a, c));
        // structure constants, one slot at a time
        for (size_t k = 0; k < J.size(); ++k) {
            Section f = model.bracket_of_generators(a, J[k]);
            for (int b = 0; b < model.rank(); ++b) {
                const RatFunc& fc = f[static_cast<size_t>(b)];
                if (fc.is_zero()) continue;
                WedgeIdx idx = J;
                idx[k] = b;
                WedgeIdx s = idx;
                int sign = sort_sign(s);
                if (sign == 0) continue;
                RatFunc coeff = c * fc;
                pv_add_term(r, s, sign > 0 ? coeff : -coeff);
            }
        }
    }
    return r;
}

LPolyVector term_bracket(const AlgebroidModel& model, const RatFunc& c, const WedgeIdx& I,
                         const LPolyVector& v);

LPolyVector bracket_impl(const AlgebroidModel& model, const LPolyVector& u,
                         const LPolyVector& v) {
    LPolyVector r = pv_zero(u.ext + v.ext - 2 + 1); // Lie degrees add; ext = |u|+|v|+1
    for (const auto& [I, c] : u.terms) r = pv_add(r, term_bracket(model, c, I, v));
    return r;
}

LPolyVector term_bracket(const AlgebroidModel& model, const RatFunc& c, const WedgeIdx& I,
                         const LPolyVector& v) {
    int result_ext = static_cast<int>(I.size()) + v.ext - 1;
    if (I.empty()) {
        // [c, v] = (-1)^{ext(v)} [v, c]
        if (v.ext == 0) return pv_zero(result_ext);
        LPolyVector cs;
        cs.ext = 0;
        cs.terms[WedgeIdx{}] = c;
        LPolyVector w = bracket_impl(model, v, cs);
        return (v.ext % 2 == 0) ? w : pv_scale(Rational(-1), w);
    }
    if (I.size() == 1) {
        // [c theta_a, w] = -[w, c] ^ theta_a + c [theta_a, w]
        int a = I[0];
        LPolyVector cs;
        cs.ext = 0;
        cs.terms[WedgeIdx{}] = c;
        LPolyVector wc = bracket_impl(model, v, cs); // [w, c]
        LPolyVector theta = pv_monomial(1, WedgeIdx{a}, model.one_fn());
        LPolyVector t1 = pv_scale(Rational(-1), pv_wedge(wc, theta));
        LPolyVector t2 = pv_scale_fn(c, gen_bracket(model, a, v));
        return pv_add(t1, t2);
    }
    // peel from the right: u = S ^ theta_m
    int m = I.back();
    WedgeIdx rest(I.begin(), I.end() - 1);
    // [S ^ theta_m, w] = (-1)^{|w|} [S, w] ^ theta_m + S ^ [theta_m, w]
    LPolyVector sw = term_bracket(model, c, rest, v);
    LPolyVector theta = pv_monomial(1, WedgeIdx{m}, model.one_fn());
    LPolyVector t1 = pv_wedge(sw, theta);
    if (lie_degree(v) % 2 != 0) t1 = pv_scale(Rational(-1), t1);
    LPolyVector s_part;
    s_part.ext = static_cast<int>(rest.size());
    s_part.terms[rest] = c;
    LPolyVector t2 = pv_wedge(s_part, gen_bracket(model, m, v));
    return pv_add(t1, t2);
}

} // namespace

LPolyVector schouten(const AlgebroidModel& model, const LPolyVector& u, const LPolyVector& v) {
    return bracket_impl(model, u, v);
}

std::string pv_to_string(const LPolyVector& p) {
    if (p.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : p.terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        if (!i.empty()) {
            os << "*e[";
            for (size_t k = 0; k < i.size(); ++k) {
                if (k) os << ",";
                os << i[k] + 1;
            }
            os << "]";
        }
    }
    return os.str();
}

Value PolyVectorDgla::random_value(int degree, Rng& rng, int complexity) const {
    int ext = degree + 1;
    LPolyVector p = pv_zero(ext);
    if (ext > model_->rank()) return Value(std::move(p)); // zero space
    int nterms = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(complexity) + 1));
    for (int t = 0; t < nterms; ++t) {
        // random strictly increasing index tuple
        std::vector<int> pool;
        for (int i = 0; i < model_->rank(); ++i) pool.push_back(i);
        WedgeIdx idx;
        for (int k = 0; k < ext; ++k) {
            size_t at = rng.below(pool.size());
            idx.push_back(pool[at]);
            pool.erase(pool.begin() + static_cast<long>(at));
        }
        std::sort(idx.begin(), idx.end());
        pv_add_term(p, idx, random_ratfunc(model_->vars(), rng, complexity));
    }
    return Value(std::move(p));
}

bool PolyVectorDgla::value_allowed(int, const Value& v, const std::vector<Poly>& allowed) const {
    for (const auto& [i, c] : v.as<LPolyVector>().terms)
        if (!ratfunc_allowed(c, allowed)) return false;
    return true;
}

RatFunc random_ratfunc(const std::vector<std::string>& vars, Rng& rng, int complexity) {
    Poly p(vars);
    int nterms = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(complexity)));
    for (int t = 0; t < nterms; ++t) {
        Exponents e(vars.size(), 0);
        for (auto& x : e) x = static_cast<int>(rng.below(3));
        long c = rng.range(-3, 3);
        if (c != 0) p.add_term(e, Rational(c));
    }
    if (p.is_zero()) p = Poly::constant(vars, Rational(rng.range(1, 3)));
    return RatFunc(std::move(p));
}

bool ratfunc_allowed(const RatFunc& f, const std::vector<Poly>& allowed) {
    if (f.is_polynomial()) return true;
    Poly den = f.den();
    bool progress = true;
    while (!den.is_constant() && progress) {
        progress = false;
        for (const Poly& d : allowed) {
            if (d.is_constant()) continue;
            Poly q;
            while (!den.is_constant() && poly_divide_exact(den, d, &q)) {
                den = q;
                progress = true;
            }
        }
    }
    return den.is_constant();
}

} // namespace defq
