// Textual file formats. All values use the shared expression grammar; keyed
// lines are "keyword args...: expression". '#' starts a comment. Paths inside
// files resolve relative to the containing file. Every reference is resolved
// up front, before any computation starts.
//
//   model file:  vars x y / rank 2 / anchor 1: 1 | 0 / bracket 1 2: x*e[1]
//   cover file:  indices 3 / tuple 0 1 / denom 0 1: x
//   element:     model <path> / space diffop|polyvec / degree 1 / order 3
//                / value <expr>
//   weak-mc:     model <path> / cover <path> / space ... / order N
//                / pi 0: <expr> / g 0 1: <expr> / a 0 1 2: <expr>
// Gauge (g) and 2-cell (a) entries are logs; 0 is the identity.
#pragma once

#include "defq/parser.hpp"
#include "defq/polyvec.hpp"
#include "defq/diffop.hpp"
#include "defq/weakmc.hpp"

#include <iosfwd>
#include <string>

namespace defq {

AlgebroidPtr load_model_file(const std::string& path);
std::shared_ptr<const CoverShape> load_cover_file(const std::string& path);

struct LoadedElement {
    AlgebroidPtr algebroid;
    DglaPtr space;       // DiffOpDgla or PolyVectorDgla over the algebroid
    GradedElement element;
};

// order_override < 0 keeps the file's declared order.
LoadedElement load_element_file(const std::string& path, int order_override = -1);

struct LoadedWeakMC {
    AlgebroidPtr algebroid;
    DglaPtr space;
    WeakMCTriple triple;
};

LoadedWeakMC load_weakmc_file(const std::string& path, int order_override = -1);

// Writers re-parse what they emit and verify the round trip exactly.
void write_weakmc_file(std::ostream& os, const WeakMCTriple& w, const std::string& model_ref,
                       const std::string& cover_ref, const std::string& space);
void write_equivalence_chain(std::ostream& os, const std::vector<WeakEquivalence>& chain);

// Conversion from the parser's symbolic form into a model element.
GradedElement element_from_parsed(const ParsedElement& parsed, const DglaPtr& space, int degree,
                                  int order);

} // namespace defq
