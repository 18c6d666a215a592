#include "defq/ualg.hpp"

#include "defq/errors.hpp"

#include <numeric>
#include <sstream>

namespace defq {

int multi_total(const MultiIndex& m) { return std::accumulate(m.begin(), m.end(), 0); }

MultiIndex multi_zero(int rank) { return MultiIndex(static_cast<size_t>(rank), 0); }

void u_add_term(UElem& u, const MultiIndex& m, const RatFunc& c) {
    if (c.is_zero()) return;
    auto it = u.find(m);
    if (it == u.end()) {
        u[m] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) u.erase(it);
    }
}

UElem u_add(const UElem& a, const UElem& b) {
    UElem r = a;
    for (const auto& [m, c] : b) u_add_term(r, m, c);
    return r;
}

UElem u_scale(const RatFunc& c, const UElem& a) {
    UElem r;
    if (c.is_zero()) return r;
    for (const auto& [m, x] : a) r[m] = c * x;
    return r;
}

bool u_is_zero(const UElem& a) { return a.empty(); }

namespace {

int min_present(const MultiIndex& m) {
    for (size_t a = 0; a < m.size(); ++a)
        if (m[a] > 0) return static_cast<int>(a);
    return -1;
}

UElem gen_mul(const AlgebroidModel& model, int a, const UElem& x);

// e_a * e^gamma, normal-ordered.
UElem insert_gen(const AlgebroidModel& model, int a, const MultiIndex& gamma) {
    int b = min_present(gamma);
    if (b < 0 || a <= b) {
        MultiIndex m = gamma;
        m[static_cast<size_t>(a)] += 1;
        UElem r;
        r[m] = model.one_fn();
        return r;
    }
    // e_a e_b e^gamma' = e_b (e_a e^gamma') + [e_a, e_b] e^gamma'
    MultiIndex rest = gamma;
    rest[static_cast<size_t>(b)] -= 1;
    UElem t1 = gen_mul(model, b, insert_gen(model, a, rest));
    Section f = model.bracket_of_generators(a, b);
    UElem braket;
    for (int c = 0; c < model.rank(); ++c) {
        if (f[static_cast<size_t>(c)].is_zero()) continue;
        MultiIndex ec = multi_zero(model.rank());
        ec[static_cast<size_t>(c)] = 1;
        u_add_term(braket, ec, f[static_cast<size_t>(c)]);
    }
    UElem rest_elem;
    rest_elem[rest] = model.one_fn();
    return u_add(t1, u_mul(model, braket, rest_elem));
}

UElem gen_mul(const AlgebroidModel& model, int a, const UElem& x) {
    UElem r;
    for (const auto& [gamma, c] : x) {
        u_add_term(r, gamma, model.anchor_apply(a, c)); // rho_a(c) e^gamma
        UElem shifted = insert_gen(model, a, gamma);
        for (const auto& [m, k] : shifted) u_add_term(r, m, c * k);
    }
    return r;
}

} // namespace

UElem u_mul(const AlgebroidModel& model, const UElem& a, const UElem& b) {
    UElem r;
    for (const auto& [beta, c] : a) {
        UElem x = b;
        // multiply by the word e_1^b1 .. e_r^br, rightmost factor first
        for (int g = model.rank() - 1; g >= 0; --g)
            for (int k = 0; k < beta[static_cast<size_t>(g)]; ++k) x = gen_mul(model, g, x);
        for (const auto& [m, k] : x) u_add_term(r, m, c * k);
    }
    return r;
}

RatFunc u_act_monomial(const AlgebroidModel& model, const MultiIndex& m, const RatFunc& f) {
    RatFunc r = f;
    for (int a = model.rank() - 1; a >= 0; --a)
        for (int k = 0; k < m[static_cast<size_t>(a)]; ++k) r = model.anchor_apply(a, r);
    return r;
}

RatFunc u_act(const AlgebroidModel& model, const UElem& a, const RatFunc& f) {
    RatFunc r = model.zero_fn();
    for (const auto& [m, c] : a) r += c * u_act_monomial(model, m, f);
    return r;
}

namespace {

Rational binomial(int n, int k) {
    Rational r(1);
    for (int i = 0; i < k; ++i) r = r * Rational(n - i) / Rational(i + 1);
    return r;
}

void split_rec(const MultiIndex& remaining, int parts, std::vector<MultiIndex>& acc,
               Rational coeff,
               const std::function<void(const std::vector<MultiIndex>&, const Rational&)>& emit) {
    if (parts == 1) {
        acc.push_back(remaining);
        emit(acc, coeff);
        acc.pop_back();
        return;
    }
    // enumerate gamma <= remaining componentwise
    MultiIndex gamma = multi_zero(static_cast<int>(remaining.size()));
    while (true) {
        Rational c = coeff;
        for (size_t i = 0; i < gamma.size(); ++i) c = c * binomial(remaining[i], gamma[i]);
        MultiIndex rest(remaining.size());
        for (size_t i = 0; i < gamma.size(); ++i) rest[i] = remaining[i] - gamma[i];
        acc.push_back(gamma);
        split_rec(rest, parts - 1, acc, c, emit);
        acc.pop_back();
        // advance odometer
        size_t pos = 0;
        while (pos < gamma.size()) {
            if (gamma[pos] < remaining[pos]) {
                gamma[pos] += 1;
                break;
            }
            gamma[pos] = 0;
            ++pos;
        }
        if (pos == gamma.size()) break;
    }
}

} // namespace

void u_coproduct(const MultiIndex& beta, int parts,
                 const std::function<void(const std::vector<MultiIndex>&, const Rational&)>& emit) {
    if (parts <= 0) throw InternalError("coproduct needs at least one output channel");
    std::vector<MultiIndex> acc;
    split_rec(beta, parts, acc, Rational(1), emit);
}

std::string multi_to_string(const MultiIndex& m) {
    std::ostringstream os;
    for (size_t i = 0; i < m.size(); ++i) {
        if (i) os << ",";
        os << m[i];
    }
    return os.str();
}

std::string u_to_string(const AlgebroidModel& model, const UElem& a) {
    (void)model;
    if (a.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : a) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")*E[" << multi_to_string(m) << "]";
    }
    return os.str();
}

} // namespace defq
