#include "defq/parser.hpp"

#include "defq/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace defq {

std::string BasisSymbol::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Scalar: return "1";
        case Kind::PolyVec: os << "e["; break;
        case Kind::Form: os << "eps["; break;
        case Kind::DiffOp: {
            os << "D[";
            for (size_t s = 0; s < slots.size(); ++s) {
                if (s) os << "|";
                for (size_t i = 0; i < slots[s].size(); ++i) {
                    if (i) os << ",";
                    os << slots[s][i];
                }
            }
            os << "]";
            return os.str();
        }
    }
    for (size_t i = 0; i < indices.size(); ++i) {
        if (i) os << ",";
        os << indices[i] + 1; // display is 1-based
    }
    os << "]";
    return os.str();
}

namespace {

struct Token {
    enum class Type { Int, Ident, Op, End } type = Type::End;
    std::string text;
    long value = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at position " + std::to_string(pos_));
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) {
            tok_ = Token{};
            return;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            tok_.type = Token::Type::Int;
            tok_.text = s_.substr(start, pos_ - start);
            tok_.value = std::stol(tok_.text);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            tok_.type = Token::Type::Ident;
            tok_.text = s_.substr(start, pos_ - start);
            return;
        }
        static const std::string ops = "+-*^()[]|,/";
        if (ops.find(c) != std::string::npos) {
            tok_.type = Token::Type::Op;
            tok_.text = std::string(1, c);
            ++pos_;
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    size_t pos_ = 0;
    Token tok_;
};

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& vars, int rank, int order)
        : lex_(text), vars_(vars), rank_(rank), order_(order) {}

    ParsedElement run() {
        ParsedElement v = expr();
        if (lex_.peek().type != Token::Type::End) lex_.fail("trailing input");
        return v;
    }

private:
    HbarSeries<Poly> zero_series() const { return HbarSeries<Poly>(order_, Poly(vars_)); }

    ParsedElement scalar_elem(HbarSeries<Poly> s) const {
        ParsedElement e;
        if (!s.is_zero()) e[BasisSymbol{}] = std::move(s);
        return e;
    }

    static bool is_scalar(const ParsedElement& e) {
        return e.empty() || (e.size() == 1 && e.begin()->first.kind == BasisSymbol::Kind::Scalar);
    }

    HbarSeries<Poly> scalar_of(const ParsedElement& e) const {
        if (e.empty()) return zero_series();
        return e.begin()->second;
    }

    ParsedElement expr() {
        bool neg = false;
        if (lex_.peek().type == Token::Type::Op && lex_.peek().text == "-") {
            lex_.take();
            neg = true;
        }
        ParsedElement acc = term();
        if (neg) acc = negate(acc);
        while (lex_.peek().type == Token::Type::Op &&
               (lex_.peek().text == "+" || lex_.peek().text == "-")) {
            bool minus = lex_.take().text == "-";
            ParsedElement rhs = term();
            if (minus) rhs = negate(rhs);
            acc = add(acc, rhs);
        }
        return acc;
    }

    ParsedElement term() {
        ParsedElement acc = factor();
        while (lex_.peek().type == Token::Type::Op && lex_.peek().text == "*") {
            lex_.take();
            ParsedElement rhs = factor();
            acc = mul(acc, rhs);
        }
        return acc;
    }

    ParsedElement factor() {
        ParsedElement base = atom();
        if (lex_.peek().type == Token::Type::Op && lex_.peek().text == "^") {
            lex_.take();
            Token t = lex_.take();
            if (t.type != Token::Type::Int) lex_.fail("exponent must be a natural number");
            if (!is_scalar(base)) lex_.fail("powers apply to scalar expressions only");
            HbarSeries<Poly> s = scalar_of(base);
            HbarSeries<Poly> r = one_series();
            for (long i = 0; i < t.value; ++i) r = r * s;
            return scalar_elem(r);
        }
        return base;
    }

    HbarSeries<Poly> one_series() const {
        HbarSeries<Poly> s = zero_series();
        s.set_coeff(0, Poly::constant(vars_, 1));
        return s;
    }

    ParsedElement atom() {
        Token t = lex_.peek();
        if (t.type == Token::Type::Int) {
            lex_.take();
            Rational c(t.value);
            if (lex_.peek().type == Token::Type::Op && lex_.peek().text == "/") {
                lex_.take();
                Token d = lex_.take();
                if (d.type != Token::Type::Int || d.value == 0)
                    lex_.fail("rational literal needs a positive integer denominator");
                c = Rational(t.value, d.value);
            }
            HbarSeries<Poly> s = zero_series();
            s.set_coeff(0, Poly::constant(vars_, c));
            return scalar_elem(std::move(s));
        }
        if (t.type == Token::Type::Op && t.text == "(") {
            lex_.take();
            ParsedElement inner = expr();
            expect(")");
            return inner;
        }
        if (t.type == Token::Type::Ident) {
            lex_.take();
            if (t.text == "h") {
                HbarSeries<Poly> s = zero_series();
                if (order_ >= 1) s.set_coeff(1, Poly::constant(vars_, 1));
                return scalar_elem(std::move(s));
            }
            if ((t.text == "e" || t.text == "eps" || t.text == "D") && peek_is("[")) {
                return basis_atom(t.text);
            }
            auto it = std::find(vars_.begin(), vars_.end(), t.text);
            if (it == vars_.end()) lex_.fail("unknown variable '" + t.text + "'");
            HbarSeries<Poly> s = zero_series();
            s.set_coeff(0, Poly::variable(vars_, static_cast<int>(it - vars_.begin())));
            return scalar_elem(std::move(s));
        }
        lex_.fail("expected a value");
    }

    bool peek_is(const std::string& op) const {
        return lex_.peek().type == Token::Type::Op && lex_.peek().text == op;
    }

    void expect(const std::string& op) {
        if (!peek_is(op)) lex_.fail("expected '" + op + "'");
        lex_.take();
    }

    std::vector<int> int_list(const std::string& stop) {
        std::vector<int> out;
        while (true) {
            Token t = lex_.take();
            if (t.type != Token::Type::Int) lex_.fail("expected an index");
            out.push_back(static_cast<int>(t.value));
            if (peek_is(",")) {
                lex_.take();
                continue;
            }
            break;
        }
        (void)stop;
        return out;
    }

    ParsedElement basis_atom(const std::string& name) {
        if (rank_ <= 0) lex_.fail("basis symbols are not allowed in this context");
        expect("[");
        BasisSymbol sym;
        if (name == "D") {
            sym.kind = BasisSymbol::Kind::DiffOp;
            while (true) {
                std::vector<int> mi = int_list("|");
                if (static_cast<int>(mi.size()) != rank_)
                    lex_.fail("D slot multi-index must have length " + std::to_string(rank_));
                for (int x : mi)
                    if (x < 0) lex_.fail("negative derivative order");
                sym.slots.push_back(mi);
                if (peek_is("|")) {
                    lex_.take();
                    continue;
                }
                break;
            }
            expect("]");
        } else {
            sym.kind = (name == "e") ? BasisSymbol::Kind::PolyVec : BasisSymbol::Kind::Form;
            std::vector<int> ix = int_list("]");
            expect("]");
            for (size_t i = 0; i < ix.size(); ++i) {
                if (ix[i] < 1 || ix[i] > rank_) lex_.fail("basis index out of range 1.." + std::to_string(rank_));
                if (i > 0 && ix[i] <= ix[i - 1]) lex_.fail("basis indices must be strictly increasing");
                ix[i] -= 1;
            }
            if (ix.empty()) lex_.fail("empty basis index list");
            sym.indices = ix;
        }
        ParsedElement e;
        e[sym] = one_series();
        return e;
    }

    ParsedElement negate(const ParsedElement& e) const {
        ParsedElement r;
        HbarSeries<Poly> z = zero_series();
        for (const auto& [sym, s] : e) r[sym] = z - s;
        return r;
    }

    ParsedElement add(const ParsedElement& a, const ParsedElement& b) const {
        ParsedElement r = a;
        for (const auto& [sym, s] : b) {
            auto it = r.find(sym);
            if (it == r.end()) {
                r[sym] = s;
            } else {
                it->second = it->second + s;
                if (it->second.is_zero()) r.erase(it);
            }
        }
        return r;
    }

    ParsedElement mul(const ParsedElement& a, const ParsedElement& b) {
        if (!is_scalar(a) && !is_scalar(b))
            lex_.fail("cannot multiply two basis elements; use a single symbol");
        const ParsedElement& scal = is_scalar(a) ? a : b;
        const ParsedElement& other = is_scalar(a) ? b : a;
        if (scal.empty()) return {};
        HbarSeries<Poly> s = scalar_of(scal);
        ParsedElement r;
        for (const auto& [sym, t] : other) {
            HbarSeries<Poly> prod = s * t;
            if (!prod.is_zero()) r[sym] = std::move(prod);
        }
        return r;
    }

    Lexer lex_;
    const std::vector<std::string>& vars_;
    int rank_;
    int order_;
};

} // namespace

HbarSeries<Poly> parse_scalar_series(const std::string& text,
                                     const std::vector<std::string>& vars, int order) {
    Parser p(text, vars, 0, order);
    ParsedElement e = p.run();
    if (e.empty()) return HbarSeries<Poly>(order, Poly(vars));
    if (e.size() > 1 || e.begin()->first.kind != BasisSymbol::Kind::Scalar)
        throw ParseError("basis symbols are not allowed in a scalar expression");
    return e.begin()->second;
}

ParsedElement parse_element(const std::string& text, const std::vector<std::string>& vars,
                            int rank, int order) {
    Parser p(text, vars, rank, order);
    return p.run();
}

} // namespace defq
