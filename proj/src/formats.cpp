#include "defq/formats.hpp"

#include "defq/errors.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace defq {

namespace {

struct Line {
    std::string keyword;
    std::vector<std::string> args; // tokens before ':'
    std::string payload;           // text after ':', may be empty
};

std::vector<Line> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::vector<Line> out;
    std::string raw;
    while (std::getline(in, raw)) {
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string head = raw, payload;
        auto colon = raw.find(':');
        if (colon != std::string::npos) {
            head = raw.substr(0, colon);
            payload = raw.substr(colon + 1);
        }
        std::istringstream hs(head);
        Line line;
        hs >> line.keyword;
        if (line.keyword.empty()) continue;
        std::string tok;
        while (hs >> tok) line.args.push_back(tok);
        auto strip = [](std::string s) {
            size_t b = s.find_first_not_of(" \t\r");
            size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line.payload = strip(payload);
        out.push_back(std::move(line));
    }
    return out;
}

int to_int(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        throw ParseError("bad integer for " + what + ": '" + s + "'");
    }
}

std::string resolve(const std::string& base_file, const std::string& ref) {
    namespace fs = std::filesystem;
    fs::path p(ref);
    if (p.is_absolute()) return ref;
    return (fs::path(base_file).parent_path() / p).string();
}

// Expression with only polyvector symbols of exterior degree <= 1, read as a
// function-coefficient section or a scalar.
RatFunc payload_scalar(const std::string& text, const std::vector<std::string>& vars) {
    HbarSeries<Poly> s = parse_scalar_series(text, vars, 0);
    return RatFunc(s.coeff(0));
}

} // namespace

AlgebroidPtr load_model_file(const std::string& path) {
    std::vector<std::string> vars;
    int rank = -1;
    std::vector<std::pair<int, std::string>> anchor_lines;
    std::vector<std::pair<std::pair<int, int>, std::string>> bracket_lines;

    for (const Line& line : read_lines(path)) {
        if (line.keyword == "vars") {
            vars = line.args;
        } else if (line.keyword == "rank") {
            if (line.args.size() != 1) throw ParseError("rank needs one integer");
            rank = to_int(line.args[0], "rank");
        } else if (line.keyword == "anchor") {
            if (line.args.size() != 1) throw ParseError("anchor needs a section index");
            anchor_lines.emplace_back(to_int(line.args[0], "anchor index"), line.payload);
        } else if (line.keyword == "bracket") {
            if (line.args.size() != 2) throw ParseError("bracket needs two section indices");
            bracket_lines.emplace_back(
                std::make_pair(to_int(line.args[0], "bracket index"),
                               to_int(line.args[1], "bracket index")),
                line.payload);
        } else {
            throw ParseError("unknown model-file keyword '" + line.keyword + "'");
        }
    }
    if (vars.empty()) throw ParseError("model file declares no variables");
    if (rank <= 0) throw ParseError("model file declares no rank");

    std::vector<Section> anchor(static_cast<size_t>(rank),
                                Section(vars.size(), RatFunc(Poly(vars))));
    // anchor entries are '|'-separated expressions, one per variable
    for (const auto& [idx, payload] : anchor_lines) {
        if (idx < 1 || idx > rank) throw ParseError("anchor index out of range");
        std::vector<std::string> pieces;
        std::string cur;
        for (char ch : payload) {
            if (ch == '|') {
                pieces.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
        pieces.push_back(cur);
        if (pieces.size() != vars.size())
            throw ParseError("anchor " + std::to_string(idx) + " needs " +
                             std::to_string(vars.size()) + " entries");
        Section col(vars.size(), RatFunc(Poly(vars)));
        for (size_t i = 0; i < pieces.size(); ++i) col[i] = payload_scalar(pieces[i], vars);
        anchor[static_cast<size_t>(idx - 1)] = std::move(col);
    }

    std::map<std::pair<int, int>, Section> brackets;
    for (const auto& [key, payload] : bracket_lines) {
        auto [a, b] = key;
        if (a < 1 || b < 1 || a > rank || b > rank || a >= b)
            throw ParseError("bracket indices must satisfy 1 <= a < b <= rank");
        ParsedElement pe = parse_element(payload, vars, rank, 0);
        Section sec(static_cast<size_t>(rank), RatFunc(Poly(vars)));
        for (const auto& [sym, series] : pe) {
            if (sym.kind == BasisSymbol::Kind::Scalar && series.is_zero()) continue;
            if (sym.kind != BasisSymbol::Kind::PolyVec || sym.indices.size() != 1)
                throw ParseError("bracket value must be a combination of e[i] symbols");
            sec[static_cast<size_t>(sym.indices[0])] = RatFunc(series.coeff(0));
        }
        brackets.emplace(std::make_pair(a - 1, b - 1), std::move(sec));
    }

    std::string label = std::filesystem::path(path).stem().string();
    auto model = std::make_shared<AlgebroidModel>(label, vars, rank, std::move(anchor),
                                                  std::move(brackets));
    model->validate();
    return model;
}

std::shared_ptr<const CoverShape> load_cover_file(const std::string& path) {
    int indices = -1;
    std::set<Tuple> tuples;
    std::vector<std::pair<Tuple, std::string>> denom_lines;
    std::vector<std::string> vars; // needed to parse denominators; late-bound

    for (const Line& line : read_lines(path)) {
        if (line.keyword == "indices") {
            if (line.args.size() != 1) throw ParseError("indices needs one integer");
            indices = to_int(line.args[0], "indices");
        } else if (line.keyword == "tuple") {
            Tuple t;
            for (const auto& a : line.args) t.push_back(to_int(a, "tuple entry"));
            tuples.insert(std::move(t));
        } else if (line.keyword == "denom") {
            Tuple t;
            for (const auto& a : line.args) t.push_back(to_int(a, "denom tuple entry"));
            denom_lines.emplace_back(std::move(t), line.payload);
        } else if (line.keyword == "vars") {
            vars = line.args; // variable list for denominator expressions
        } else {
            throw ParseError("unknown cover-file keyword '" + line.keyword + "'");
        }
    }
    if (indices <= 0) throw ParseError("cover file declares no indices");
    std::map<Tuple, std::vector<Poly>> denoms;
    for (const auto& [t, payload] : denom_lines) {
        if (vars.empty()) throw ParseError("denominators need a vars line in the cover file");
        HbarSeries<Poly> s = parse_scalar_series(payload, vars, 0);
        denoms[t].push_back(s.coeff(0));
    }
    return std::make_shared<CoverShape>(indices, std::move(tuples), std::move(denoms));
}

GradedElement element_from_parsed(const ParsedElement& parsed, const DglaPtr& space, int degree,
                                  int order) {
    GradedElement out(space, degree, order);
    auto diffop = std::dynamic_pointer_cast<const DiffOpDgla>(space);
    auto polyvec = std::dynamic_pointer_cast<const PolyVectorDgla>(space);
    if (!diffop && !polyvec) throw DegreeError("unsupported element space");

    for (const auto& [sym, series] : parsed) {
        for (int n = 0; n <= order && n <= series.order(); ++n) {
            const Poly& coeff = series.coeff(n);
            if (coeff.is_zero()) continue;
            RatFunc c{coeff};
            Value term;
            if (diffop) {
                LPolyDiffOp op;
                if (sym.kind == BasisSymbol::Kind::Scalar) {
                    if (degree != -1)
                        throw DegreeError("scalar term in a degree " + std::to_string(degree) +
                                          " element");
                    op.slots = 0;
                    op.terms[SlotKey{}] = c;
                } else if (sym.kind == BasisSymbol::Kind::DiffOp) {
                    if (static_cast<int>(sym.slots.size()) != degree + 1)
                        throw DegreeError("operator arity does not match the declared degree");
                    op.slots = degree + 1;
                    op.terms[sym.slots] = c;
                } else {
                    throw DegreeError("polyvector symbol in a polydifferential element");
                }
                term = Value(std::move(op));
            } else {
                LPolyVector pv;
                if (sym.kind == BasisSymbol::Kind::Scalar) {
                    if (degree != -1) throw DegreeError("scalar term in a nonscalar element");
                    pv = pv_scalar(*polyvec->algebroid(), c);
                } else if (sym.kind == BasisSymbol::Kind::PolyVec) {
                    if (static_cast<int>(sym.indices.size()) != degree + 1)
                        throw DegreeError("wedge degree does not match the declared degree");
                    pv = pv_monomial(degree + 1, sym.indices, c);
                } else {
                    throw DegreeError("unsupported symbol in a polyvector element");
                }
                term = Value(std::move(pv));
            }
            out.set_coeff(n, space->add(degree, out.coeff(n), term));
        }
    }
    return out;
}

namespace {

struct Preamble {
    AlgebroidPtr algebroid;
    DglaPtr space;
    std::string space_name = "diffop";
    std::string cover_ref;
    std::shared_ptr<const CoverShape> cover;
    int order = -1;
    int degree = 1;
};

DglaPtr make_space(const std::string& name, const AlgebroidPtr& algebroid) {
    if (name == "diffop") return std::make_shared<DiffOpDgla>(algebroid);
    if (name == "polyvec") return std::make_shared<PolyVectorDgla>(algebroid);
    throw ParseError("unknown space '" + name + "' (expected diffop|polyvec)");
}

} // namespace

LoadedElement load_element_file(const std::string& path, int order_override) {
    Preamble pre;
    std::string value_text;
    for (const Line& line : read_lines(path)) {
        if (line.keyword == "model") {
            pre.algebroid = load_model_file(resolve(path, line.args.empty() ? line.payload
                                                                            : line.args[0]));
        } else if (line.keyword == "space") {
            pre.space_name = line.args.empty() ? line.payload : line.args[0];
        } else if (line.keyword == "degree") {
            pre.degree = to_int(line.args.at(0), "degree");
        } else if (line.keyword == "order") {
            pre.order = to_int(line.args.at(0), "order");
        } else if (line.keyword == "value") {
            value_text = line.payload.empty() && !line.args.empty() ? line.args[0] : line.payload;
        } else {
            throw ParseError("unknown element-file keyword '" + line.keyword + "'");
        }
    }
    if (!pre.algebroid) throw ParseError("element file needs a model line");
    if (pre.order < 0) throw ParseError("element file needs an order line");
    if (value_text.empty()) throw ParseError("element file needs a value line");
    if (order_override >= 0) pre.order = order_override;

    LoadedElement out;
    out.algebroid = pre.algebroid;
    out.space = make_space(pre.space_name, pre.algebroid);
    ParsedElement parsed = parse_element(value_text, pre.algebroid->vars(),
                                         pre.algebroid->rank(), pre.order);
    out.element = element_from_parsed(parsed, out.space, pre.degree, pre.order);
    return out;
}

LoadedWeakMC load_weakmc_file(const std::string& path, int order_override) {
    Preamble pre;
    std::vector<std::pair<int, std::string>> pi_lines;
    std::vector<std::pair<Pair, std::string>> g_lines;
    std::vector<std::pair<Tuple, std::string>> a_lines;

    for (const Line& line : read_lines(path)) {
        if (line.keyword == "model") {
            pre.algebroid = load_model_file(resolve(path, line.args.empty() ? line.payload
                                                                            : line.args[0]));
        } else if (line.keyword == "cover") {
            pre.cover_ref = line.args.empty() ? line.payload : line.args[0];
            pre.cover = load_cover_file(resolve(path, pre.cover_ref));
        } else if (line.keyword == "space") {
            pre.space_name = line.args.empty() ? line.payload : line.args[0];
        } else if (line.keyword == "order") {
            pre.order = to_int(line.args.at(0), "order");
        } else if (line.keyword == "pi") {
            pi_lines.emplace_back(to_int(line.args.at(0), "pi index"), line.payload);
        } else if (line.keyword == "g") {
            g_lines.emplace_back(Pair{to_int(line.args.at(0), "g index"),
                                      to_int(line.args.at(1), "g index")},
                                 line.payload);
        } else if (line.keyword == "a") {
            Tuple t{to_int(line.args.at(0), "a index"), to_int(line.args.at(1), "a index"),
                    to_int(line.args.at(2), "a index")};
            a_lines.emplace_back(std::move(t), line.payload);
        } else {
            throw ParseError("unknown weak-mc keyword '" + line.keyword + "'");
        }
    }
    if (!pre.algebroid) throw ParseError("weak-mc file needs a model line");
    if (!pre.cover) throw ParseError("weak-mc file needs a cover line");
    if (pre.order < 0) throw ParseError("weak-mc file needs an order line");
    if (order_override >= 0) pre.order = order_override;

    LoadedWeakMC out;
    out.algebroid = pre.algebroid;
    out.space = make_space(pre.space_name, pre.algebroid);

    WeakMCTriple w;
    w.shape = pre.cover;
    w.inner = out.space;
    w.order = pre.order;
    auto parse_ge = [&](const std::string& text, int degree) {
        ParsedElement pe = parse_element(text, pre.algebroid->vars(), pre.algebroid->rank(),
                                         pre.order);
        return element_from_parsed(pe, out.space, degree, pre.order);
    };
    for (const auto& [i, text] : pi_lines) w.pi.emplace(i, parse_ge(text, 1));
    for (const auto& [p, text] : g_lines) w.g.emplace(p, GaugeElement(parse_ge(text, 0)));
    for (const auto& [t, text] : a_lines) {
        auto it = w.pi.find(t[0]);
        if (it == w.pi.end()) throw ParseError("2-cell before its base element at " +
                                               tuple_to_string(t));
        w.a.emplace(t, TwoCellElement(parse_ge(text, -1), it->second));
    }
    w.validate_shape();
    out.triple = std::move(w);
    return out;
}

namespace {

// Serialized values must re-parse to the same element.
void check_roundtrip(const std::string& text, const GradedElement& x,
                     const AlgebroidPtr& algebroid, const DglaPtr& space) {
    ParsedElement pe = parse_element(text, algebroid->vars(), algebroid->rank(), x.order());
    GradedElement back = element_from_parsed(pe, space, x.degree(), x.order());
    if (!ge_equal(back, x))
        throw InternalError("serialized element does not re-parse to itself: " + text);
}

} // namespace

void write_weakmc_file(std::ostream& os, const WeakMCTriple& w, const std::string& model_ref,
                       const std::string& cover_ref, const std::string& space) {
    auto diffop = std::dynamic_pointer_cast<const DiffOpDgla>(w.inner);
    auto polyvec = std::dynamic_pointer_cast<const PolyVectorDgla>(w.inner);
    AlgebroidPtr algebroid = diffop ? diffop->algebroid() : polyvec->algebroid();
    os << "model " << model_ref << "\n";
    os << "cover " << cover_ref << "\n";
    os << "space " << space << "\n";
    os << "order " << w.order << "\n";
    for (const auto& [i, p] : w.pi) {
        std::string s = p.to_string();
        check_roundtrip(s, p, algebroid, w.inner);
        os << "pi " << i << ": " << s << "\n";
    }
    for (const auto& [pr, q] : w.g) {
        std::string s = q.log.to_string();
        check_roundtrip(s, q.log, algebroid, w.inner);
        os << "g " << pr.first << " " << pr.second << ": " << s << "\n";
    }
    for (const auto& [t, u] : w.a) {
        std::string s = u.log.to_string();
        check_roundtrip(s, u.log, algebroid, w.inner);
        os << "a " << t[0] << " " << t[1] << " " << t[2] << ": " << s << "\n";
    }
}

void write_equivalence_chain(std::ostream& os, const std::vector<WeakEquivalence>& chain) {
    for (size_t step = 0; step < chain.size(); ++step) {
        os << "equivalence " << step + 1 << "\n";
        for (const auto& [i, gam] : chain[step].gamma)
            os << "  gamma " << i << ": " << gam.log.to_string() << "\n";
        for (const auto& [p, al] : chain[step].alpha)
            os << "  alpha " << p.first << " " << p.second << ": " << al.log.to_string() << "\n";
    }
}

} // namespace defq
