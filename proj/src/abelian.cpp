#include "defq/abelian.hpp"

#include <sstream>

namespace defq {

namespace {

QVec matvec(const QMatrix& m, const QVec& v) {
    QVec r(m.size(), Rational(0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
    return r;
}

} // namespace

AbelianDgla::AbelianDgla(std::map<int, int> dims, std::map<int, QMatrix> diff)
    : dims_(std::move(dims)), diff_(std::move(diff)) {
    for (const auto& [deg, m] : diff_) {
        if (static_cast<int>(m.size()) != dim(deg + 1))
            throw DegreeError("differential matrix has wrong target dimension");
        for (const auto& row : m)
            if (static_cast<int>(row.size()) != dim(deg))
                throw DegreeError("differential matrix has wrong source dimension");
        // d.d = 0 on basis vectors
        auto next = diff_.find(deg + 1);
        if (next != diff_.end()) {
            for (int j = 0; j < dim(deg); ++j) {
                QVec e(static_cast<size_t>(dim(deg)), Rational(0));
                e[static_cast<size_t>(j)] = Rational(1);
                QVec dd = matvec(next->second, matvec(m, e));
                for (const auto& c : dd)
                    if (!c.is_zero()) throw DegreeError("differential does not square to zero");
            }
        }
    }
}

std::string AbelianDgla::name() const {
    std::ostringstream os;
    os << "abelian(";
    bool first = true;
    for (const auto& [deg, n] : dims_) {
        if (!first) os << ",";
        first = false;
        os << deg << ":" << n;
    }
    os << (diff_.empty() ? "" : ";d") << ")";
    return os.str();
}

int AbelianDgla::dim(int degree) const {
    auto it = dims_.find(degree);
    return it == dims_.end() ? 0 : it->second;
}

bool AbelianDgla::degree_ok(int) const { return true; } // missing degrees are zero spaces

bool AbelianDgla::quantum_type() const {
    for (const auto& [deg, n] : dims_)
        if (deg < -1 && n > 0) return false;
    return true;
}

Value AbelianDgla::zero(int degree) const {
    return Value(QVec(static_cast<size_t>(dim(degree)), Rational(0)));
}

bool AbelianDgla::is_zero(int, const Value& v) const {
    for (const auto& c : v.as<QVec>())
        if (!c.is_zero()) return false;
    return true;
}

Value AbelianDgla::add(int, const Value& a, const Value& b) const {
    QVec r = a.as<QVec>();
    const QVec& o = b.as<QVec>();
    if (r.size() != o.size()) throw DegreeError("vector dimension mismatch");
    for (size_t i = 0; i < r.size(); ++i) r[i] += o[i];
    return Value(std::move(r));
}

Value AbelianDgla::scale(int, const Rational& c, const Value& v) const {
    QVec r = v.as<QVec>();
    for (auto& x : r) x *= c;
    return Value(std::move(r));
}

Value AbelianDgla::differential(int degree, const Value& v) const {
    auto it = diff_.find(degree);
    if (it == diff_.end()) return zero(degree + 1);
    return Value(matvec(it->second, v.as<QVec>()));
}

Value AbelianDgla::bracket(int deg_a, const Value&, int deg_b, const Value&) const {
    return zero(deg_a + deg_b);
}

std::string AbelianDgla::to_string(int, const Value& v) const {
    std::ostringstream os;
    os << "[";
    const QVec& x = v.as<QVec>();
    for (size_t i = 0; i < x.size(); ++i) {
        if (i) os << ",";
        os << x[i];
    }
    os << "]";
    return os.str();
}

Value AbelianDgla::random_value(int degree, Rng& rng, int complexity) const {
    QVec r(static_cast<size_t>(dim(degree)), Rational(0));
    long bound = std::max(1, complexity);
    for (auto& x : r) x = Rational(rng.range(-bound, bound));
    return Value(std::move(r));
}

} // namespace defq
