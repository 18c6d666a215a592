// Combinatorial covers: totally ordered indices plus the set of index tuples
// with nonempty intersection, closed under subtuples. An "open" is a tuple
// together with a coefficient ring, given by its allowed denominators.
#pragma once

#include "defq/poly.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace defq {

using Tuple = std::vector<int>; // strictly increasing indices

class CoverShape {
public:
    CoverShape(int index_count, std::set<Tuple> nonempty,
               std::map<Tuple, std::vector<Poly>> denominators = {});

    int index_count() const { return index_count_; }
    const std::set<Tuple>& nonempty() const { return nonempty_; }
    bool has(const Tuple& t) const { return nonempty_.count(t) > 0; }

    // Allowed denominators on a tuple (accumulated over subtuples).
    const std::vector<Poly>& denominators(const Tuple& t) const;

    std::vector<Tuple> tuples_of_size(int k) const; // strict tuples with k entries

    // Every tuple united with {0} is again in the shape (cone condition).
    bool cone_over_zero() const;

    std::string to_string() const;

private:
    int index_count_;
    std::set<Tuple> nonempty_;
    std::map<Tuple, std::vector<Poly>> denoms_;
    std::vector<Poly> no_denoms_;
};

// Support of a weakly increasing tuple: sorted deduplicated entries.
Tuple support(const Tuple& weakly_increasing);

// All weakly increasing tuples of the given length whose support is in the
// shape, in lexicographic order.
std::vector<Tuple> weak_tuples(const CoverShape& shape, int length);

std::string tuple_to_string(const Tuple& t);

} // namespace defq
