// The ordinal category: weakly monotone maps [m] -> [n], generating cofaces
// and codegeneracies, composition and the canonical epi-mono factorization.
#pragma once

#include <string>
#include <vector>

namespace defq {

struct OrdinalMap {
    int source = 0; // domain [source] = {0..source}
    int target = 0;
    std::vector<int> images; // length source+1, weakly increasing, in [0..target]

    OrdinalMap() = default;
    OrdinalMap(int src, int tgt, std::vector<int> im); // validates

    static OrdinalMap identity(int n);
    static OrdinalMap coface(int n, int i);       // delta_i : [n-1] -> [n], omits i
    static OrdinalMap codegeneracy(int n, int i); // sigma_i : [n+1] -> [n], repeats i

    int operator()(int x) const { return images.at(static_cast<size_t>(x)); }
    bool operator==(const OrdinalMap& o) const {
        return source == o.source && target == o.target && images == o.images;
    }
    std::string to_string() const;
};

// Apply f first, then g; requires f.target == g.source.
OrdinalMap ordinal_compose(const OrdinalMap& f, const OrdinalMap& g);

// Canonical factorization f = delta_{i_1} . ... . delta_{i_s} . sigma_{j_1} . ... . sigma_{j_t}
// (function composition, rightmost applied first), with delta indices strictly
// decreasing and sigma indices strictly increasing.
struct OrdinalFactorization {
    std::vector<int> deltas; // decreasing
    std::vector<int> sigmas; // increasing
    int source = 0, target = 0;
};

OrdinalFactorization ordinal_factor(const OrdinalMap& f);
OrdinalMap ordinal_recompose(const OrdinalFactorization& fac);

// All monotone maps [m] -> [n] (for exhaustive identity checks).
std::vector<OrdinalMap> all_ordinal_maps(int m, int n);

} // namespace defq
