#include "defq/splitting.hpp"

#include "defq/errors.hpp"

namespace defq {

namespace {

// Postcondition shared by all oracles: db must equal the input exactly, and
// each value must be legal on its tuple's coefficient ring.
bool finalize(const CechCochain& c, CechCochain& b) {
    if (!cochain_equal(cech_coboundary(b), c)) return false;
    for (const auto& [t, v] : b.values)
        if (!b.inner->value_allowed(b.degree, v, b.shape->denominators(t))) return false;
    return true;
}

CechCochain empty_like(const CechCochain& c) {
    CechCochain b;
    b.shape = c.shape;
    b.inner = c.inner;
    b.level = c.level - 1;
    b.degree = c.degree;
    return b;
}

} // namespace

std::optional<CechCochain> TrivialOracle::split(const CechCochain& c) const {
    if (c.level < 1) throw ShapeError("splitting needs level >= 1");
    if (c.shape->index_count() != 1) return std::nullopt;
    CechCochain b = empty_like(c);
    if (!finalize(c, b)) return std::nullopt;
    return b;
}

std::optional<CechCochain> ConeOracle::split(const CechCochain& c) const {
    if (c.level < 1) throw ShapeError("splitting needs level >= 1");
    if (!c.shape->cone_over_zero()) return std::nullopt;
    CechCochain b = empty_like(c);
    for (const auto& t : c.shape->tuples_of_size(c.level)) {
        if (t.front() == 0) continue; // (0,t) degenerate: contraction gives zero
        Tuple cone = t;
        cone.insert(cone.begin(), 0);
        if (!c.shape->has(cone)) return std::nullopt;
        Value v = c.at(cone);
        if (!c.inner->is_zero(c.degree, v)) b.values[t] = std::move(v);
    }
    if (!finalize(c, b)) return std::nullopt;
    return b;
}

std::optional<CechCochain> LinearOracle::split(const CechCochain& c) const {
    if (c.level < 1) throw ShapeError("splitting needs level >= 1");
    std::vector<Tuple> unknowns = c.shape->tuples_of_size(c.level);
    std::vector<Tuple> equations = c.shape->tuples_of_size(c.level + 1);

    struct Row {
        std::vector<Rational> a;
        Value rhs;
    };
    std::vector<Row> rows;
    for (const auto& eq : equations) {
        Row row;
        row.a.assign(unknowns.size(), Rational(0));
        for (size_t k = 0; k < eq.size(); ++k) {
            Tuple sub = eq;
            sub.erase(sub.begin() + static_cast<long>(k));
            auto it = std::find(unknowns.begin(), unknowns.end(), sub);
            if (it == unknowns.end()) throw InternalError("subtuple closure violated");
            size_t col = static_cast<size_t>(it - unknowns.begin());
            row.a[col] += Rational(k % 2 == 0 ? 1 : -1);
        }
        row.rhs = c.at(eq);
        rows.push_back(std::move(row));
    }

    // Gauss-Jordan over Q; the right-hand sides live in the coefficient space
    // and are carried along by the same row operations.
    auto add_rhs = [&](const Value& x, const Rational& s, const Value& y) {
        return c.inner->add(c.degree, x, c.inner->scale(c.degree, s, y));
    };
    size_t rank = 0;
    std::vector<long> pivot_of_col(unknowns.size(), -1);
    for (size_t col = 0; col < unknowns.size() && rank < rows.size(); ++col) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv].a[col].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        Rational inv = rows[rank].a[col].inverse();
        for (auto& x : rows[rank].a) x *= inv;
        rows[rank].rhs = c.inner->scale(c.degree, inv, rows[rank].rhs);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r].a[col].is_zero()) continue;
            Rational f = -rows[r].a[col];
            for (size_t j = 0; j < unknowns.size(); ++j)
                rows[r].a[j] += f * rows[rank].a[j];
            rows[r].rhs = add_rhs(rows[r].rhs, f, rows[rank].rhs);
        }
        pivot_of_col[col] = static_cast<long>(rank);
        ++rank;
    }
    for (size_t r = rank; r < rows.size(); ++r)
        if (!c.inner->is_zero(c.degree, rows[r].rhs)) return std::nullopt; // inconsistent

    CechCochain b = empty_like(c);
    for (size_t col = 0; col < unknowns.size(); ++col) {
        if (pivot_of_col[col] < 0) continue; // free unknown: zero
        const Value& v = rows[static_cast<size_t>(pivot_of_col[col])].rhs;
        if (!c.inner->is_zero(c.degree, v)) b.values[unknowns[col]] = v;
    }
    if (!finalize(c, b)) return std::nullopt;
    return b;
}

std::shared_ptr<SplittingOracle> make_oracle(const std::string& name) {
    if (name == "trivial") return std::make_shared<TrivialOracle>();
    if (name == "cone") return std::make_shared<ConeOracle>();
    if (name == "linear") return std::make_shared<LinearOracle>();
    throw ParseError("unknown oracle '" + name + "' (expected trivial|cone|linear)");
}

} // namespace defq
