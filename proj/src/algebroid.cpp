#include "defq/algebroid.hpp"

#include "defq/errors.hpp"

#include <sstream>

namespace defq {

AlgebroidModel::AlgebroidModel(std::string label, std::vector<std::string> vars, int rank,
                               std::vector<Section> anchor_columns,
                               std::map<std::pair<int, int>, Section> brackets)
    : label_(std::move(label)), vars_(std::move(vars)), rank_(rank),
      anchor_(std::move(anchor_columns)), brackets_(std::move(brackets)) {
    if (rank_ <= 0) throw DegreeError("algebroid rank must be positive");
    if (vars_.empty()) throw DegreeError("algebroid base needs at least one variable");
    if (static_cast<int>(anchor_.size()) != rank_)
        throw DegreeError("anchor needs one column per basis section");
    for (const auto& col : anchor_)
        if (static_cast<int>(col.size()) != dim())
            throw DegreeError("anchor column length must equal the number of variables");
    for (const auto& [key, sec] : brackets_) {
        if (key.first < 0 || key.second >= rank_ || key.first >= key.second)
            throw DegreeError("bracket keys must be pairs a < b of section indices");
        if (static_cast<int>(sec.size()) != rank_)
            throw DegreeError("bracket value must be a section");
    }
}

RatFunc AlgebroidModel::anchor_apply(int a, const RatFunc& f) const {
    RatFunc r = zero_fn();
    for (int i = 0; i < dim(); ++i) {
        const RatFunc& c = anchor_[static_cast<size_t>(a)][static_cast<size_t>(i)];
        if (c.is_zero()) continue;
        r += c * f.derivative(i);
    }
    return r;
}

RatFunc AlgebroidModel::anchor_apply(const Section& u, const RatFunc& f) const {
    RatFunc r = zero_fn();
    for (int a = 0; a < rank_; ++a) {
        if (u[static_cast<size_t>(a)].is_zero()) continue;
        r += u[static_cast<size_t>(a)] * anchor_apply(a, f);
    }
    return r;
}

Section AlgebroidModel::bracket_of_generators(int a, int b) const {
    if (a == b) return zero_section();
    bool flip = a > b;
    if (flip) std::swap(a, b);
    auto it = brackets_.find({a, b});
    Section r = (it == brackets_.end()) ? zero_section() : it->second;
    if (flip)
        for (auto& c : r) c = -c;
    return r;
}

Section AlgebroidModel::basis_section(int a) const {
    Section s = zero_section();
    s[static_cast<size_t>(a)] = one_fn();
    return s;
}

Section AlgebroidModel::bracket_sections(const Section& u, const Section& v) const {
    // [sum u_a e_a, sum v_b e_b] =
    //   sum u_a v_b [e_a,e_b] + sum u_a rho_a(v_b) e_b - sum v_b rho_b(u_a) e_a
    Section r = zero_section();
    for (int a = 0; a < rank_; ++a) {
        const RatFunc& ua = u[static_cast<size_t>(a)];
        for (int b = 0; b < rank_; ++b) {
            const RatFunc& vb = v[static_cast<size_t>(b)];
            if (!ua.is_zero() && !vb.is_zero()) {
                Section g = bracket_of_generators(a, b);
                for (int c = 0; c < rank_; ++c)
                    if (!g[static_cast<size_t>(c)].is_zero())
                        r[static_cast<size_t>(c)] += ua * vb * g[static_cast<size_t>(c)];
            }
        }
        if (!ua.is_zero())
            for (int b = 0; b < rank_; ++b)
                r[static_cast<size_t>(b)] += ua * anchor_apply(a, v[static_cast<size_t>(b)]);
    }
    for (int b = 0; b < rank_; ++b) {
        const RatFunc& vb = v[static_cast<size_t>(b)];
        if (vb.is_zero()) continue;
        for (int a = 0; a < rank_; ++a)
            r[static_cast<size_t>(a)] -= vb * anchor_apply(b, u[static_cast<size_t>(a)]);
    }
    return r;
}

void AlgebroidModel::validate() const {
    // anchor is a Lie morphism: rho([e_a,e_b]) = [rho(e_a), rho(e_b)]
    for (int a = 0; a < rank_; ++a) {
        for (int b = a + 1; b < rank_; ++b) {
            Section f = bracket_of_generators(a, b);
            for (int i = 0; i < dim(); ++i) {
                // lhs coefficient of d/dx_i
                RatFunc lhs = zero_fn();
                for (int c = 0; c < rank_; ++c)
                    lhs += f[static_cast<size_t>(c)] *
                           anchor_[static_cast<size_t>(c)][static_cast<size_t>(i)];
                // commutator of derivations
                RatFunc rhs = zero_fn();
                for (int j = 0; j < dim(); ++j) {
                    rhs += anchor_[static_cast<size_t>(a)][static_cast<size_t>(j)] *
                           anchor_[static_cast<size_t>(b)][static_cast<size_t>(i)].derivative(j);
                    rhs -= anchor_[static_cast<size_t>(b)][static_cast<size_t>(j)] *
                           anchor_[static_cast<size_t>(a)][static_cast<size_t>(i)].derivative(j);
                }
                if (lhs != rhs)
                    throw DegreeError("anchor is not a Lie morphism at generators (" +
                                      std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
            }
        }
    }
    // Jacobi on generators
    for (int a = 0; a < rank_; ++a)
        for (int b = a + 1; b < rank_; ++b)
            for (int c = b + 1; c < rank_; ++c) {
                Section ea = basis_section(a), eb = basis_section(b), ec = basis_section(c);
                Section j1 = bracket_sections(bracket_sections(ea, eb), ec);
                Section j2 = bracket_sections(bracket_sections(eb, ec), ea);
                Section j3 = bracket_sections(bracket_sections(ec, ea), eb);
                for (int k = 0; k < rank_; ++k) {
                    RatFunc s = j1[static_cast<size_t>(k)] + j2[static_cast<size_t>(k)] +
                                j3[static_cast<size_t>(k)];
                    if (!s.is_zero())
                        throw DegreeError("bracket fails Jacobi at generators (" +
                                          std::to_string(a + 1) + "," + std::to_string(b + 1) +
                                          "," + std::to_string(c + 1) + ")");
                }
            }
}

bool AlgebroidModel::flat() const {
    for (const auto& [k, sec] : brackets_)
        for (const auto& c : sec)
            if (!c.is_zero()) return false;
    return true;
}

AlgebroidPtr tangent_algebroid(std::vector<std::string> vars, std::string label) {
    int d = static_cast<int>(vars.size());
    std::vector<Section> anchor;
    for (int a = 0; a < d; ++a) {
        Section col(static_cast<size_t>(d), RatFunc(Poly(vars)));
        col[static_cast<size_t>(a)] = RatFunc(Poly::constant(vars, 1));
        anchor.push_back(std::move(col));
    }
    if (label.empty()) {
        label = "tangent(";
        for (size_t i = 0; i < vars.size(); ++i) label += (i ? "," : "") + vars[i];
        label += ")";
    }
    auto m = std::make_shared<AlgebroidModel>(label, vars, d, std::move(anchor),
                                              std::map<std::pair<int, int>, Section>{});
    m->validate();
    return m;
}

} // namespace defq
