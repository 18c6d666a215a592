#include "defq/ordinal.hpp"

#include "defq/errors.hpp"

#include <algorithm>
#include <sstream>

namespace defq {

OrdinalMap::OrdinalMap(int src, int tgt, std::vector<int> im)
    : source(src), target(tgt), images(std::move(im)) {
    if (src < 0 || tgt < 0) throw DegreeError("negative ordinal");
    if (images.size() != static_cast<size_t>(src) + 1)
        throw DegreeError("ordinal map image list has wrong length");
    int prev = 0;
    for (size_t k = 0; k < images.size(); ++k) {
        if (images[k] < 0 || images[k] > tgt) throw DegreeError("ordinal map image out of range");
        if (k > 0 && images[k] < prev) throw DegreeError("ordinal map not monotone");
        prev = images[k];
    }
}

OrdinalMap OrdinalMap::identity(int n) {
    std::vector<int> im(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) im[static_cast<size_t>(i)] = i;
    return OrdinalMap(n, n, std::move(im));
}

OrdinalMap OrdinalMap::coface(int n, int i) {
    if (n < 1 || i < 0 || i > n) throw DegreeError("coface index out of range");
    std::vector<int> im;
    for (int x = 0; x <= n; ++x)
        if (x != i) im.push_back(x);
    return OrdinalMap(n - 1, n, std::move(im));
}

OrdinalMap OrdinalMap::codegeneracy(int n, int i) {
    if (n < 0 || i < 0 || i > n) throw DegreeError("codegeneracy index out of range");
    std::vector<int> im;
    for (int x = 0; x <= n + 1; ++x) im.push_back(x <= i ? std::min(x, i) : x - 1);
    return OrdinalMap(n + 1, n, std::move(im));
}

std::string OrdinalMap::to_string() const {
    std::ostringstream os;
    os << "[" << source << "]->[" << target << "]:(";
    for (size_t k = 0; k < images.size(); ++k) {
        if (k) os << ",";
        os << images[k];
    }
    os << ")";
    return os.str();
}

OrdinalMap ordinal_compose(const OrdinalMap& f, const OrdinalMap& g) {
    if (f.target != g.source) throw DegreeError("boundary mismatch in ordinal composition");
    std::vector<int> im(f.images.size());
    for (size_t k = 0; k < im.size(); ++k) im[k] = g(f.images[k]);
    return OrdinalMap(f.source, g.target, std::move(im));
}

OrdinalFactorization ordinal_factor(const OrdinalMap& f) {
    OrdinalFactorization fac;
    fac.source = f.source;
    fac.target = f.target;
    // sigma indices: plateaus of f
    for (int j = 0; j < f.source; ++j)
        if (f(j) == f(j + 1)) fac.sigmas.push_back(j);
    // delta indices: the complement of the image, decreasing
    for (int i = f.target; i >= 0; --i) {
        bool hit = std::any_of(f.images.begin(), f.images.end(), [i](int x) { return x == i; });
        if (!hit) fac.deltas.push_back(i);
    }
    return fac;
}

OrdinalMap ordinal_recompose(const OrdinalFactorization& fac) {
    OrdinalMap m = OrdinalMap::identity(fac.source);
    // rightmost factor applies first: sigmas in reverse listed order
    int level = fac.source;
    for (auto it = fac.sigmas.rbegin(); it != fac.sigmas.rend(); ++it) {
        m = ordinal_compose(m, OrdinalMap::codegeneracy(level - 1, *it));
        --level;
    }
    for (auto it = fac.deltas.rbegin(); it != fac.deltas.rend(); ++it) {
        m = ordinal_compose(m, OrdinalMap::coface(level + 1, *it));
        ++level;
    }
    if (level != fac.target) throw DegreeError("factorization does not reach the target ordinal");
    return m;
}

std::vector<OrdinalMap> all_ordinal_maps(int m, int n) {
    std::vector<OrdinalMap> out;
    std::vector<int> im(static_cast<size_t>(m) + 1, 0);
    while (true) {
        out.emplace_back(m, n, im);
        // next weakly increasing tuple
        int k = m;
        while (k >= 0 && im[static_cast<size_t>(k)] == n) --k;
        if (k < 0) break;
        int v = im[static_cast<size_t>(k)] + 1;
        for (int j = k; j <= m; ++j) im[static_cast<size_t>(j)] = v;
    }
    return out;
}

} // namespace defq
