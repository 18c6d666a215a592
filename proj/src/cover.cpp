#include "defq/cover.hpp"

#include "defq/errors.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace defq {

namespace {

bool strictly_increasing(const Tuple& t) {
    for (size_t i = 1; i < t.size(); ++i)
        if (t[i] <= t[i - 1]) return false;
    return true;
}

} // namespace

CoverShape::CoverShape(int index_count, std::set<Tuple> nonempty,
                       std::map<Tuple, std::vector<Poly>> denominators)
    : index_count_(index_count), nonempty_(std::move(nonempty)), denoms_(std::move(denominators)) {
    if (index_count <= 0) throw ShapeError("cover needs at least one index");
    for (int i = 0; i < index_count; ++i) nonempty_.insert(Tuple{i});
    for (const auto& t : nonempty_) {
        if (t.empty()) throw ShapeError("empty tuple in cover shape");
        if (!strictly_increasing(t)) throw ShapeError("cover tuples must be strictly increasing");
        if (t.front() < 0 || t.back() >= index_count) throw ShapeError("cover index out of range");
        // subtuple closure: dropping any entry stays in the shape
        if (t.size() > 1) {
            for (size_t k = 0; k < t.size(); ++k) {
                Tuple sub = t;
                sub.erase(sub.begin() + static_cast<long>(k));
                if (nonempty_.count(sub) == 0)
                    throw ShapeError("cover is not closed under subtuples: missing " +
                                     tuple_to_string(sub));
            }
        }
    }
    for (const auto& [t, d] : denoms_)
        if (nonempty_.count(t) == 0)
            throw ShapeError("denominators declared on a tuple outside the shape");
}

const std::vector<Poly>& CoverShape::denominators(const Tuple& t) const {
    auto it = denoms_.find(t);
    return it == denoms_.end() ? no_denoms_ : it->second;
}

std::vector<Tuple> CoverShape::tuples_of_size(int k) const {
    std::vector<Tuple> out;
    for (const auto& t : nonempty_)
        if (static_cast<int>(t.size()) == k) out.push_back(t);
    return out;
}

bool CoverShape::cone_over_zero() const {
    for (const auto& t : nonempty_) {
        Tuple u = t;
        if (u.front() != 0) u.insert(u.begin(), 0);
        if (nonempty_.count(u) == 0) return false;
    }
    return true;
}

std::string CoverShape::to_string() const {
    std::ostringstream os;
    os << "cover(" << index_count_ << "; ";
    bool first = true;
    for (const auto& t : nonempty_) {
        if (t.size() < 2) continue;
        if (!first) os << " ";
        first = false;
        os << tuple_to_string(t);
    }
    os << ")";
    return os.str();
}

Tuple support(const Tuple& t) {
    Tuple s = t;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

std::vector<Tuple> weak_tuples(const CoverShape& shape, int length) {
    std::vector<Tuple> out;
    Tuple cur;
    std::function<void(int)> rec = [&](int min_index) {
        if (static_cast<int>(cur.size()) == length) {
            if (shape.has(support(cur))) out.push_back(cur);
            return;
        }
        for (int i = min_index; i < shape.index_count(); ++i) {
            cur.push_back(i);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

std::string tuple_to_string(const Tuple& t) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) os << ",";
        os << t[i];
    }
    os << ")";
    return os.str();
}

} // namespace defq
