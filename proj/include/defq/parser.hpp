// Expression grammar for all textual inputs:
//
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' nat)?
//   atom   := int | int '/' nat | var | 'h' | basis | '(' expr ')'
//   basis  := 'e[' ints ']' | 'eps[' ints ']' | 'D[' ints ('|' ints)* ']'
//
// 'h' is the formal deformation parameter. e[..] are wedge monomials in the
// algebroid basis (strictly increasing 1-based indices), eps[..] the dual
// form monomials, D[..|..] slotwise derivative monomials (one multi-index of
// length rank per argument slot). Basis symbols are atomic: they cannot be
// multiplied with each other or raised to powers.
#pragma once

#include "defq/poly.hpp"
#include "defq/series.hpp"

#include <map>
#include <string>
#include <vector>

namespace defq {

struct BasisSymbol {
    enum class Kind { Scalar, PolyVec, Form, DiffOp };
    Kind kind = Kind::Scalar;
    std::vector<int> indices;         // PolyVec / Form: 0-based after parsing
    std::vector<Exponents> slots;     // DiffOp: one multi-index per slot

    bool operator<(const BasisSymbol& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (indices != o.indices) return indices < o.indices;
        return slots < o.slots;
    }
    bool operator==(const BasisSymbol& o) const {
        return kind == o.kind && indices == o.indices && slots == o.slots;
    }
    std::string to_string() const;
};

// h-series of scalar coefficients per basis symbol.
using ParsedElement = std::map<BasisSymbol, HbarSeries<Poly>>;

// Scalar-only expression (no basis symbols allowed).
HbarSeries<Poly> parse_scalar_series(const std::string& text,
                                     const std::vector<std::string>& vars, int order);

// Full element grammar. `rank` bounds e/eps indices and fixes the D slot
// multi-index length; pass 0 to forbid basis symbols.
ParsedElement parse_element(const std::string& text, const std::vector<std::string>& vars,
                            int rank, int order);

} // namespace defq
