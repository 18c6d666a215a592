#include "defq/diffop.hpp"

#include "defq/errors.hpp"

#include <sstream>

namespace defq {

LPolyDiffOp op_zero(int slots) {
    LPolyDiffOp p;
    p.slots = slots;
    return p;
}

LPolyDiffOp op_scalar(const AlgebroidModel& model, const RatFunc& f) {
    (void)model;
    LPolyDiffOp p;
    p.slots = 0;
    if (!f.is_zero()) p.terms[SlotKey{}] = f;
    return p;
}

LPolyDiffOp op_monomial(int slots, SlotKey key, const RatFunc& c) {
    if (static_cast<int>(key.size()) != slots) throw DegreeError("slot count mismatch");
    LPolyDiffOp p;
    p.slots = slots;
    if (!c.is_zero()) p.terms[std::move(key)] = c;
    return p;
}

void op_add_term(LPolyDiffOp& p, const SlotKey& key, const RatFunc& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(key.size()) != p.slots) throw DegreeError("slot count mismatch");
    auto it = p.terms.find(key);
    if (it == p.terms.end()) {
        p.terms[key] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) p.terms.erase(it);
    }
}

LPolyDiffOp op_add(const LPolyDiffOp& a, const LPolyDiffOp& b) {
    if (a.slots != b.slots) throw DegreeError("degree mismatch in operator addition");
    LPolyDiffOp r = a;
    for (const auto& [k, c] : b.terms) op_add_term(r, k, c);
    return r;
}

LPolyDiffOp op_scale(const Rational& c, const LPolyDiffOp& a) {
    LPolyDiffOp r = op_zero(a.slots);
    if (c.is_zero()) return r;
    for (const auto& [k, x] : a.terms) r.terms[k] = x.scaled(c);
    return r;
}

bool op_equal(const LPolyDiffOp& a, const LPolyDiffOp& b) {
    return a.slots == b.slots && a.terms == b.terms;
}

std::string op_to_string(const LPolyDiffOp& p) {
    if (p.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : p.terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        if (!k.empty()) {
            os << "*D[";
            for (size_t s = 0; s < k.size(); ++s) {
                if (s) os << "|";
                os << multi_to_string(k[s]);
            }
            os << "]";
        }
    }
    return os.str();
}

LPolyDiffOp op_mu(const AlgebroidModel& model) {
    SlotKey key{multi_zero(model.rank()), multi_zero(model.rank())};
    return op_monomial(2, std::move(key), model.one_fn());
}

RatFunc op_apply(const AlgebroidModel& model, const LPolyDiffOp& p,
                 const std::vector<RatFunc>& args) {
    if (static_cast<int>(args.size()) != p.slots)
        throw DegreeError("operator applied to the wrong number of arguments");
    RatFunc r = model.zero_fn();
    for (const auto& [k, c] : p.terms) {
        RatFunc t = c;
        for (size_t s = 0; s < k.size() && !t.is_zero(); ++s)
            t *= u_act_monomial(model, k[s], args[s]);
        r += t;
    }
    return r;
}

LPolyDiffOp op_insert(const AlgebroidModel& model, const LPolyDiffOp& p, int i,
                      const LPolyDiffOp& q) {
    if (i < 0 || i >= p.slots) throw DegreeError("insertion slot out of range");
    int out_slots = p.slots - 1 + q.slots;
    LPolyDiffOp r = op_zero(out_slots);
    int channels = q.slots + 1; // one for q's coefficient, one per q slot
    for (const auto& [pk, pc] : p.terms) {
        for (const auto& [qk, qc] : q.terms) {
            u_coproduct(pk[static_cast<size_t>(i)], channels,
                        [&](const std::vector<MultiIndex>& parts, const Rational& mult) {
                            // channel 0 acts on q's coefficient
                            RatFunc coeff =
                                pc * u_act_monomial(model, parts[0], qc).scaled(mult);
                            if (coeff.is_zero()) return;
                            // channels 1..q.slots compose with q's slot monomials
                            std::vector<UElem> slot_elems;
                            slot_elems.reserve(static_cast<size_t>(q.slots));
                            for (int j = 0; j < q.slots; ++j) {
                                UElem gamma;
                                gamma[parts[static_cast<size_t>(j) + 1]] = model.one_fn();
                                UElem n;
                                n[qk[static_cast<size_t>(j)]] = model.one_fn();
                                slot_elems.push_back(u_mul(model, gamma, n));
                            }
                            // distribute the products over all combinations
                            std::vector<std::pair<SlotKey, RatFunc>> partial;
                            partial.emplace_back(SlotKey{}, coeff);
                            for (const UElem& se : slot_elems) {
                                std::vector<std::pair<SlotKey, RatFunc>> next;
                                for (const auto& [key, cf] : partial)
                                    for (const auto& [m, mc] : se) {
                                        RatFunc nc = cf * mc;
                                        if (nc.is_zero()) continue;
                                        SlotKey nk = key;
                                        nk.push_back(m);
                                        next.emplace_back(std::move(nk), std::move(nc));
                                    }
                                partial = std::move(next);
                            }
                            for (auto& [mid, cf] : partial) {
                                SlotKey key;
                                key.reserve(static_cast<size_t>(out_slots));
                                for (int s = 0; s < i; ++s) key.push_back(pk[static_cast<size_t>(s)]);
                                key.insert(key.end(), mid.begin(), mid.end());
                                for (int s = i + 1; s < p.slots; ++s)
                                    key.push_back(pk[static_cast<size_t>(s)]);
                                op_add_term(r, key, cf);
                            }
                        });
        }
    }
    return r;
}

namespace {

LPolyDiffOp op_circ(const AlgebroidModel& model, const LPolyDiffOp& p, const LPolyDiffOp& q) {
    int qdeg = q.slots - 1;
    LPolyDiffOp r = op_zero(p.slots - 1 + q.slots);
    for (int i = 0; i < p.slots; ++i) {
        LPolyDiffOp t = op_insert(model, p, i, q);
        bool negatives = ((i * qdeg) % 2) != 0;
        r = op_add(r, negatives ? op_scale(Rational(-1), t) : t);
    }
    return r;
}

} // namespace

LPolyDiffOp gerstenhaber(const AlgebroidModel& model, const LPolyDiffOp& p,
                         const LPolyDiffOp& q) {
    int pdeg = p.slots - 1, qdeg = q.slots - 1;
    LPolyDiffOp a = op_circ(model, p, q);
    LPolyDiffOp b = op_circ(model, q, p);
    bool flip = ((pdeg * qdeg) % 2) == 0;
    return op_add(a, flip ? op_scale(Rational(-1), b) : b);
}

LPolyDiffOp hochschild_diff(const AlgebroidModel& model, const LPolyDiffOp& p) {
    return gerstenhaber(model, op_mu(model), p);
}

LPolyDiffOp op_slotwise_mul(const AlgebroidModel& model, const LPolyDiffOp& a,
                            const LPolyDiffOp& b) {
    if (a.slots != b.slots) throw DegreeError("slotwise product needs equal arity");
    LPolyDiffOp r = op_zero(a.slots);
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) {
            std::vector<std::pair<SlotKey, RatFunc>> partial;
            partial.emplace_back(SlotKey{}, ca * cb);
            for (int s = 0; s < a.slots; ++s) {
                UElem x, y;
                x[ka[static_cast<size_t>(s)]] = model.one_fn();
                y[kb[static_cast<size_t>(s)]] = model.one_fn();
                UElem prod = u_mul(model, x, y);
                std::vector<std::pair<SlotKey, RatFunc>> next;
                for (const auto& [key, cf] : partial)
                    for (const auto& [m, mc] : prod) {
                        RatFunc nc = cf * mc;
                        if (nc.is_zero()) continue;
                        SlotKey nk = key;
                        nk.push_back(m);
                        next.emplace_back(std::move(nk), std::move(nc));
                    }
                partial = std::move(next);
            }
            for (auto& [key, cf] : partial) op_add_term(r, key, cf);
        }
    return r;
}

bool normalized_subcomplex_check(const LPolyDiffOp& p) {
    if (p.slots == 0) return true; // O itself
    for (const auto& [k, c] : p.terms)
        for (const auto& m : k)
            if (multi_total(m) == 0) return false;
    return true;
}

Value DiffOpDgla::random_value(int degree, Rng& rng, int complexity) const {
    int slots = degree + 1;
    if (slots == 0)
        return Value(op_scalar(*model_, random_ratfunc(model_->vars(), rng, complexity)));
    LPolyDiffOp p = op_zero(slots);
    int nterms = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(complexity) + 1));
    for (int t = 0; t < nterms; ++t) {
        SlotKey key;
        for (int s = 0; s < slots; ++s) {
            MultiIndex m = multi_zero(model_->rank());
            // normalized: at least one derivative per slot
            m[static_cast<size_t>(rng.below(static_cast<std::uint64_t>(model_->rank())))] += 1;
            if (rng.below(3) == 0)
                m[static_cast<size_t>(rng.below(static_cast<std::uint64_t>(model_->rank())))] += 1;
            key.push_back(std::move(m));
        }
        op_add_term(p, key, random_ratfunc(model_->vars(), rng, complexity));
    }
    return Value(std::move(p));
}

bool DiffOpDgla::value_allowed(int, const Value& v, const std::vector<Poly>& allowed) const {
    for (const auto& [k, c] : v.as<LPolyDiffOp>().terms)
        if (!ratfunc_allowed(c, allowed)) return false;
    return true;
}

GradedElement moyal_generate(const std::shared_ptr<const DiffOpDgla>& dgla,
                             const LPolyVector& pi, int order) {
    const AlgebroidModel& model = *dgla->algebroid();
    if (pi.ext != 2) throw DegreeError("star-product generator needs a bivector");
    for (const auto& [idx, c] : pi.terms)
        if (!c.is_polynomial() || !c.num().is_constant())
            throw DegreeError("nonconstant bivector refused: general weights are out of scope");
    // P = sum_{a<b} pi^{ab} e_a (x) e_b
    LPolyDiffOp p = op_zero(2);
    for (const auto& [idx, c] : pi.terms) {
        MultiIndex ma = multi_zero(model.rank());
        MultiIndex mb = multi_zero(model.rank());
        ma[static_cast<size_t>(idx[0])] = 1;
        mb[static_cast<size_t>(idx[1])] = 1;
        op_add_term(p, SlotKey{ma, mb}, c);
    }
    GradedElement result(dgla, 1, order);
    LPolyDiffOp pn = p; // P^n
    Rational inv_fact(1);
    for (int n = 1; n <= order; ++n) {
        inv_fact = inv_fact / Rational(n);
        result.set_coeff(n, Value(op_scale(inv_fact, pn)));
        if (n < order) pn = op_slotwise_mul(model, pn, p);
    }
    return result;
}

SkewResult skew_symmetrize(const AlgebroidModel& model, const LPolyDiffOp& b) {
    if (b.slots != 2) throw DegreeError("skew-symmetrization needs a bidifferential operator");
    LPolyDiffOp skew = b;
    for (const auto& [k, c] : b.terms) {
        SlotKey swapped{k[1], k[0]};
        op_add_term(skew, swapped, -c);
    }
    SkewResult res;
    res.bivector = pv_zero(2);
    for (const auto& [k, c] : skew.terms) {
        if (multi_total(k[0]) != 1 || multi_total(k[1]) != 1) {
            res.first_order = false;
            continue;
        }
        int a = -1, bb = -1;
        for (int i = 0; i < model.rank(); ++i) {
            if (k[0][static_cast<size_t>(i)] == 1) a = i;
            if (k[1][static_cast<size_t>(i)] == 1) bb = i;
        }
        if (a == bb) continue;
        if (a < bb) pv_add_term(res.bivector, WedgeIdx{a, bb}, c);
        // terms with a > bb are the antisymmetric mirrors; counted once
    }
    return res;
}

} // namespace defq
