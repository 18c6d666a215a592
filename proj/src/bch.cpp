#include "defq/bch.hpp"

#include "defq/errors.hpp"

#include <map>
#include <mutex>
#include <string>

namespace defq {

namespace {

// Free associative algebra on letters '0','1' truncated above max_weight.
using Word = std::string;
using FreeElem = std::map<Word, Rational>;

void add_to(FreeElem& a, const Word& w, const Rational& c) {
    auto it = a.find(w);
    if (it == a.end()) {
        if (!c.is_zero()) a[w] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) a.erase(it);
    }
}

FreeElem mul(const FreeElem& a, const FreeElem& b, int max_weight) {
    FreeElem r;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            if (wa.size() + wb.size() > static_cast<size_t>(max_weight)) continue;
            add_to(r, wa + wb, ca * cb);
        }
    return r;
}

std::map<int, std::vector<BchWord>> g_cache;
std::mutex g_mutex;

std::vector<BchWord> compute(int max_weight) {
    // z = exp(x)exp(y) - 1, all words of weight <= max_weight
    FreeElem z;
    Rational inv_i_fact(1), inv_j_fact(1);
    for (int i = 0; i <= max_weight; ++i) {
        if (i > 0) inv_i_fact = inv_i_fact / Rational(i);
        inv_j_fact = Rational(1);
        for (int j = 0; i + j <= max_weight; ++j) {
            if (j > 0) inv_j_fact = inv_j_fact / Rational(j);
            if (i + j == 0) continue;
            Word w(static_cast<size_t>(i), '0');
            w.append(static_cast<size_t>(j), '1');
            add_to(z, w, inv_i_fact * inv_j_fact);
        }
    }
    // log(1+z) = sum (-1)^{k+1} z^k / k
    FreeElem log;
    FreeElem zk = z;
    for (int k = 1; k <= max_weight; ++k) {
        Rational c = Rational((k % 2 == 1) ? 1 : -1) / Rational(k);
        for (const auto& [w, cw] : zk) add_to(log, w, cw * c);
        if (k < max_weight) zk = mul(zk, z, max_weight);
    }
    // Dynkin: a homogeneous Lie element sum c_w w of weight n equals
    // (1/n) sum c_w [[..[w_1,w_2]..],w_n].
    std::vector<BchWord> out;
    for (const auto& [w, c] : log) {
        BchWord bw;
        bw.coefficient = c / Rational(static_cast<long>(w.size()));
        for (char ch : w) bw.letters.push_back(ch - '0');
        out.push_back(std::move(bw));
    }
    // already weight-then-lex sorted because map keys sort by length first?
    // std::string compares lexicographically, so enforce weight order here.
    std::stable_sort(out.begin(), out.end(), [](const BchWord& a, const BchWord& b) {
        return a.letters.size() < b.letters.size();
    });
    return out;
}

} // namespace

const std::vector<BchWord>& bch_formula(int max_weight) {
    if (max_weight < 0) throw DegreeError("negative BCH weight");
    if (max_weight == 0) max_weight = 1;
    std::lock_guard<std::mutex> lock(g_mutex);
    auto it = g_cache.find(max_weight);
    if (it == g_cache.end()) it = g_cache.emplace(max_weight, compute(max_weight)).first;
    return it->second;
}

} // namespace defq
