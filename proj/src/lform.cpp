#include "defq/lform.hpp"

#include "defq/errors.hpp"

#include <algorithm>
#include <sstream>

namespace defq {

namespace {

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

LForm lf_zero(int deg) {
    LForm f;
    f.deg = deg;
    return f;
}

LForm lf_monomial(int deg, WedgeIdx idx, const RatFunc& c) {
    if (static_cast<int>(idx.size()) != deg) throw DegreeError("form monomial length mismatch");
    LForm f;
    f.deg = deg;
    int sign = sort_sign(idx);
    if (sign != 0 && !c.is_zero()) f.terms[idx] = sign > 0 ? c : -c;
    return f;
}

void lf_add_term(LForm& f, const WedgeIdx& idx, const RatFunc& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(idx.size()) != f.deg) throw DegreeError("form term length mismatch");
    auto it = f.terms.find(idx);
    if (it == f.terms.end()) {
        f.terms[idx] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) f.terms.erase(it);
    }
}

LForm lf_add(const LForm& a, const LForm& b) {
    if (a.deg != b.deg) throw DegreeError("form degree mismatch in addition");
    LForm r = a;
    for (const auto& [i, c] : b.terms) lf_add_term(r, i, c);
    return r;
}

LForm lf_scale(const Rational& c, const LForm& a) {
    LForm r = lf_zero(a.deg);
    if (c.is_zero()) return r;
    for (const auto& [i, x] : a.terms) r.terms[i] = x.scaled(c);
    return r;
}

LForm lf_scale_fn(const RatFunc& c, const LForm& a) {
    LForm r = lf_zero(a.deg);
    if (c.is_zero()) return r;
    for (const auto& [i, x] : a.terms) {
        RatFunc y = x * c;
        if (!y.is_zero()) r.terms[i] = std::move(y);
    }
    return r;
}

LForm lf_wedge(const LForm& a, const LForm& b) {
    LForm r = lf_zero(a.deg + b.deg);
    for (const auto& [ia, ca] : a.terms)
        for (const auto& [ib, cb] : b.terms) {
            WedgeIdx idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            int sign = sort_sign(idx);
            if (sign == 0) continue;
            RatFunc c = ca * cb;
            lf_add_term(r, idx, sign > 0 ? c : -c);
        }
    return r;
}

bool lf_equal(const LForm& a, const LForm& b) { return a.deg == b.deg && a.terms == b.terms; }

std::string lf_to_string(const LForm& f) {
    if (f.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : f.terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        if (!i.empty()) {
            os << "*eps[";
            for (size_t k = 0; k < i.size(); ++k) {
                if (k) os << ",";
                os << i[k] + 1;
            }
            os << "]";
        }
    }
    return os.str();
}

RatFunc lf_eval_basis(const LForm& eta, const WedgeIdx& indices, const AlgebroidModel& model) {
    if (static_cast<int>(indices.size()) != eta.deg)
        throw DegreeError("form evaluated on the wrong number of sections");
    WedgeIdx s = indices;
    int sign = sort_sign(s);
    if (sign == 0) return model.zero_fn();
    auto it = eta.terms.find(s);
    if (it == eta.terms.end()) return model.zero_fn();
    return sign > 0 ? it->second : -it->second;
}

RatFunc lf_eval_section_first(const LForm& eta, const Section& w, const WedgeIdx& rest,
                              const AlgebroidModel& model) {
    RatFunc r = model.zero_fn();
    for (int a = 0; a < model.rank(); ++a) {
        const RatFunc& wa = w[static_cast<size_t>(a)];
        if (wa.is_zero()) continue;
        WedgeIdx idx;
        idx.push_back(a);
        idx.insert(idx.end(), rest.begin(), rest.end());
        RatFunc v = lf_eval_basis(eta, idx, model);
        if (!v.is_zero()) r += wa * v;
    }
    return r;
}

LForm contract(const LPolyVector& u, const LForm& eta) {
    if (u.ext > eta.deg) return lf_zero(0); // overflow contracts to zero
    LForm r = lf_zero(eta.deg - u.ext);
    for (const auto& [A, cu] : u.terms) {
        for (const auto& [B, ce] : eta.terms) {
            // A must embed into B; remaining indices keep order
            WedgeIdx rest;
            bool ok = true;
            {
                std::vector<bool> used(B.size(), false);
                for (int a : A) {
                    auto it = std::find(B.begin(), B.end(), a);
                    if (it == B.end()) {
                        ok = false;
                        break;
                    }
                    used[static_cast<size_t>(it - B.begin())] = true;
                }
                if (ok)
                    for (size_t k = 0; k < B.size(); ++k)
                        if (!used[k]) rest.push_back(B[k]);
            }
            if (!ok) continue;
            // sign of the permutation sending (A, rest) to B ascending
            WedgeIdx perm = A;
            perm.insert(perm.end(), rest.begin(), rest.end());
            int sign = sort_sign(perm);
            if (sign == 0) continue;
            RatFunc c = cu * ce;
            lf_add_term(r, rest, sign > 0 ? c : -c);
        }
    }
    return r;
}

LForm lde_rham(const AlgebroidModel& model, const LForm& eta) {
    int p = eta.deg;
    LForm r = lf_zero(p + 1);
    // iterate over strictly increasing tuples of length p+1
    std::vector<int> idx(static_cast<size_t>(p) + 1);
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    if (static_cast<int>(idx.size()) > model.rank()) return r;
    while (true) {
        RatFunc acc = model.zero_fn();
        for (size_t i = 0; i < idx.size(); ++i) {
            WedgeIdx rest;
            for (size_t k = 0; k < idx.size(); ++k)
                if (k != i) rest.push_back(idx[k]);
            RatFunc v = lf_eval_basis(eta, rest, model);
            if (!v.is_zero()) {
                RatFunc t = model.anchor_apply(idx[i], v);
                acc = (i % 2 == 0) ? acc + t : acc - t;
            }
        }
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = i + 1; j < idx.size(); ++j) {
                Section br = model.bracket_of_generators(idx[i], idx[j]);
                WedgeIdx rest;
                for (size_t k = 0; k < idx.size(); ++k)
                    if (k != i && k != j) rest.push_back(idx[k]);
                RatFunc v = lf_eval_section_first(eta, br, rest, model);
                if (v.is_zero()) continue;
                acc = ((i + j) % 2 == 0) ? acc + v : acc - v;
            }
        lf_add_term(r, idx, acc);
        // next strictly increasing tuple
        int pos = static_cast<int>(idx.size()) - 1;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] ==
                               model.rank() - static_cast<int>(idx.size()) + pos)
            --pos;
        if (pos < 0) break;
        idx[static_cast<size_t>(pos)] += 1;
        for (size_t k = static_cast<size_t>(pos) + 1; k < idx.size(); ++k)
            idx[k] = idx[k - 1] + 1;
    }
    return r;
}

LForm lie_derivative(const AlgebroidModel& model, const LPolyVector& u, const LForm& eta) {
    int k = u.ext - 1;
    LForm t1 = lde_rham(model, contract(u, eta));
    LForm t2 = contract(u, lde_rham(model, eta));
    if (t1.deg != t2.deg) {
        // contraction overflow produced a zero of the wrong shape
        if (t1.is_zero()) t1 = lf_zero(t2.deg);
        if (t2.is_zero() && t1.deg != t2.deg) t2 = lf_zero(t1.deg);
    }
    return lf_add(t1, (k % 2 == 0) ? t2 : lf_scale(Rational(-1), t2));
}

CartanReport cartan_check(const AlgebroidModel& model, int trials, std::uint64_t seed,
                          const CartanOptions& options) {
    Rng root(seed);
    CartanReport rep;
    for (int t = 0; t < trials; ++t) {
        Rng rng = root.child(static_cast<std::uint64_t>(t));
        int ku = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(options.max_ext)));
        int kv = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(options.max_ext)));
        ku = std::min(ku, model.rank());
        kv = std::min(kv, model.rank());
        int pe = static_cast<int>(rng.below(static_cast<std::uint64_t>(model.rank()) + 1));

        auto rand_pv = [&](int ext) {
            LPolyVector p = pv_zero(ext);
            std::vector<int> pool;
            for (int i = 0; i < model.rank(); ++i) pool.push_back(i);
            WedgeIdx idx;
            for (int k = 0; k < ext; ++k) {
                size_t at = rng.below(pool.size());
                idx.push_back(pool[at]);
                pool.erase(pool.begin() + static_cast<long>(at));
            }
            std::sort(idx.begin(), idx.end());
            pv_add_term(p, idx, random_ratfunc(model.vars(), rng, options.complexity));
            return p;
        };
        auto rand_form = [&](int deg) {
            LForm f = lf_zero(deg);
            std::vector<int> pool;
            for (int i = 0; i < model.rank(); ++i) pool.push_back(i);
            WedgeIdx idx;
            for (int k = 0; k < deg; ++k) {
                size_t at = rng.below(pool.size());
                idx.push_back(pool[at]);
                pool.erase(pool.begin() + static_cast<long>(at));
            }
            std::sort(idx.begin(), idx.end());
            lf_add_term(f, idx, random_ratfunc(model.vars(), rng, options.complexity));
            return f;
        };

        LPolyVector u = rand_pv(ku), v = rand_pv(kv);
        LForm eta = rand_form(pe);
        int lu = ku - 1, lv = kv - 1;

        // (1) L_u = d iota_u + (-1)^{lu} iota_u d  (definitional; checked for drift)
        {
            LForm lhs = lie_derivative(model, u, eta);
            LForm t1 = lde_rham(model, contract(u, eta));
            LForm t2 = contract(u, lde_rham(model, eta));
            if (t2.deg != t1.deg && t2.is_zero()) t2 = lf_zero(t1.deg);
            LForm rhs = lf_add(t1, (lu % 2 == 0) ? t2 : lf_scale(Rational(-1), t2));
            if (!lf_equal(lhs, rhs)) {
                rep.passed = false;
                rep.failed_identity = 1;
                rep.witness = "trial " + std::to_string(t);
                return rep;
            }
        }
        // (2) L_u L_v - (-1)^{lu lv} L_v L_u = L_{[u,v]}
        {
            LForm a1 = lie_derivative(model, u, lie_derivative(model, v, eta));
            LForm a2 = lie_derivative(model, v, lie_derivative(model, u, eta));
            LForm lhs = lf_add(a1, ((lu * lv) % 2 == 0) ? lf_scale(Rational(-1), a2) : a2);
            LForm rhs = lie_derivative(model, schouten(model, u, v), eta);
            if (lhs.deg != rhs.deg) {
                if (lhs.is_zero()) lhs = lf_zero(rhs.deg);
                if (rhs.is_zero()) rhs = lf_zero(lhs.deg);
            }
            if (!lf_equal(lhs, rhs)) {
                rep.passed = false;
                rep.failed_identity = 2;
                rep.witness = "trial " + std::to_string(t) + ": u=" + pv_to_string(u) +
                              " v=" + pv_to_string(v) + " eta=" + lf_to_string(eta);
                return rep;
            }
        }
        // (3) L_u iota_v - (-1)^{lu(lv+1)} iota_v L_u = (-1)^{lu} iota_{[u,v]}
        {
            LForm a1 = lie_derivative(model, u, contract(v, eta));
            LForm a2 = contract(v, lie_derivative(model, u, eta));
            int s = (lu * (lv + 1)) % 2;
            LForm lhs = lf_add(a1, (s == 0) ? lf_scale(Rational(-1), a2) : a2);
            LForm rhs = contract(schouten(model, u, v), eta);
            int s2 = lu % 2;
            if (options.inject_sign_fault) s2 ^= 1;
            if (s2 == 1) rhs = lf_scale(Rational(-1), rhs);
            if (lhs.deg != rhs.deg) {
                if (lhs.is_zero()) lhs = lf_zero(rhs.deg);
                if (rhs.is_zero()) rhs = lf_zero(lhs.deg);
            }
            if (!lf_equal(lhs, rhs)) {
                rep.passed = false;
                rep.failed_identity = 3;
                rep.witness = "trial " + std::to_string(t) + ": u=" + pv_to_string(u) +
                              " v=" + pv_to_string(v) + " eta=" + lf_to_string(eta);
                return rep;
            }
        }
        // (4) d.d = 0
        {
            LForm dd = lde_rham(model, lde_rham(model, eta));
            if (!dd.is_zero()) {
                rep.passed = false;
                rep.failed_identity = 4;
                rep.witness = "trial " + std::to_string(t) + ": eta=" + lf_to_string(eta);
                return rep;
            }
        }
    }
    return rep;
}

SharpJ sharp_and_J(const AlgebroidModel& model, const LPolyVector& pi) {
    if (pi.ext != 2) throw DegreeError("sharp needs a bivector");
    int r = model.rank();
    SharpJ sj;
    // pairing pi(eps^a, eps^b)
    auto pair_of = [&](int a, int b) {
        if (a == b) return model.zero_fn();
        WedgeIdx key{std::min(a, b), std::max(a, b)};
        auto it = pi.terms.find(key);
        if (it == pi.terms.end()) return model.zero_fn();
        return (a < b) ? it->second : -it->second;
    };
    // sharp[b][a] = coefficient of e_b in pi-sharp(eps^a) = pi(eps^a, eps^b)
    sj.sharp.assign(static_cast<size_t>(r), std::vector<RatFunc>());
    for (int b = 0; b < r; ++b) {
        sj.sharp[static_cast<size_t>(b)].assign(static_cast<size_t>(r), model.zero_fn());
        for (int a = 0; a < r; ++a) sj.sharp[static_cast<size_t>(b)][static_cast<size_t>(a)] = pair_of(a, b);
    }
    // invert over the fraction field
    std::vector<std::vector<RatFunc>> m = sj.sharp;
    std::vector<std::vector<RatFunc>> inv(static_cast<size_t>(r), std::vector<RatFunc>());
    for (int i = 0; i < r; ++i) {
        inv[static_cast<size_t>(i)].assign(static_cast<size_t>(r), model.zero_fn());
        inv[static_cast<size_t>(i)][static_cast<size_t>(i)] = model.one_fn();
    }
    for (int col = 0; col < r; ++col) {
        int piv = col;
        while (piv < r && m[static_cast<size_t>(piv)][static_cast<size_t>(col)].is_zero()) ++piv;
        if (piv == r) throw DegreeError("bivector is not invertible");
        std::swap(m[static_cast<size_t>(piv)], m[static_cast<size_t>(col)]);
        std::swap(inv[static_cast<size_t>(piv)], inv[static_cast<size_t>(col)]);
        RatFunc d = m[static_cast<size_t>(col)][static_cast<size_t>(col)];
        for (int j = 0; j < r; ++j) {
            m[static_cast<size_t>(col)][static_cast<size_t>(j)] =
                m[static_cast<size_t>(col)][static_cast<size_t>(j)] / d;
            inv[static_cast<size_t>(col)][static_cast<size_t>(j)] =
                inv[static_cast<size_t>(col)][static_cast<size_t>(j)] / d;
        }
        for (int row = 0; row < r; ++row) {
            if (row == col) continue;
            RatFunc f = m[static_cast<size_t>(row)][static_cast<size_t>(col)];
            if (f.is_zero()) continue;
            for (int j = 0; j < r; ++j) {
                m[static_cast<size_t>(row)][static_cast<size_t>(j)] -=
                    f * m[static_cast<size_t>(col)][static_cast<size_t>(j)];
                inv[static_cast<size_t>(row)][static_cast<size_t>(j)] -=
                    f * inv[static_cast<size_t>(col)][static_cast<size_t>(j)];
            }
        }
    }
    sj.inverse = inv; // column a of inv = J(e_a) expressed in eps basis
    sj.omega = j_apply(model, sj, pi);
    return sj;
}

LForm j_apply(const AlgebroidModel& model, const SharpJ& sj, const LPolyVector& u) {
    LForm r = lf_zero(u.ext);
    for (const auto& [A, c] : u.terms) {
        LForm acc = lf_monomial(0, {}, model.one_fn());
        for (int a : A) {
            LForm cov = lf_zero(1);
            for (int b = 0; b < model.rank(); ++b) {
                const RatFunc& x = sj.inverse[static_cast<size_t>(b)][static_cast<size_t>(a)];
                if (!x.is_zero()) lf_add_term(cov, {b}, x);
            }
            acc = lf_wedge(acc, cov);
        }
        for (const auto& [B, cb] : acc.terms) {
            RatFunc v = c * cb;
            lf_add_term(r, B, v);
        }
    }
    return r;
}

bool j_intertwines(const AlgebroidModel& model, const SharpJ& sj, const LPolyVector& pi,
                   const LPolyVector& u) {
    LPolyVector br = schouten(model, u, pi);
    LForm lhs = j_apply(model, sj, br);
    LForm rhs = lde_rham(model, j_apply(model, sj, u));
    int lie = u.ext - 1;
    if (((lie % 2) + 2) % 2 == 1) rhs = lf_scale(Rational(-1), rhs);
    return lf_equal(lhs, rhs);
}

} // namespace defq
