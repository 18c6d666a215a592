// Truncated formal power series in h over an exact coefficient ring.
// All arithmetic is exact modulo h^(N+1); products discard higher orders.
#pragma once

#include "defq/errors.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace defq {

template <class T>
class HbarSeries {
public:
    HbarSeries() = default;
    HbarSeries(int order, T zero_coeff)
        : coeffs_(static_cast<size_t>(order) + 1, std::move(zero_coeff)) {
        if (order < 0) throw DegreeError("negative truncation order");
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<T>& coeffs() const { return coeffs_; }
    const T& coeff(int i) const { return coeffs_.at(static_cast<size_t>(i)); }
    void set_coeff(int i, T v) { coeffs_.at(static_cast<size_t>(i)) = std::move(v); }

    void check_same_order(const HbarSeries& o) const {
        if (order() != o.order()) throw DegreeError("truncation-order mismatch");
    }

    HbarSeries operator+(const HbarSeries& o) const {
        check_same_order(o);
        HbarSeries r = *this;
        for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = r.coeffs_[i] + o.coeffs_[i];
        return r;
    }

    HbarSeries operator-(const HbarSeries& o) const {
        check_same_order(o);
        HbarSeries r = *this;
        for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = r.coeffs_[i] - o.coeffs_[i];
        return r;
    }

    // Cauchy product truncated at the common order.
    HbarSeries operator*(const HbarSeries& o) const {
        check_same_order(o);
        HbarSeries r = *this;
        for (auto& c : r.coeffs_) c = c - c; // zero of the coefficient ring
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            for (size_t j = 0; i + j < coeffs_.size(); ++j)
                r.coeffs_[i + j] = r.coeffs_[i + j] + coeffs_[i] * o.coeffs_[j];
        }
        return r;
    }

    bool operator==(const HbarSeries& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const HbarSeries& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    // True iff coefficients of h^0 .. h^(i-1) vanish. Requires i <= N+1.
    bool is_zero_mod(int i) const {
        if (i < 0 || i > order() + 1) throw DegreeError("filtration index out of range");
        for (int k = 0; k < i; ++k)
            if (!coeffs_[static_cast<size_t>(k)].is_zero()) return false;
        return true;
    }

    HbarSeries truncate(int m) const {
        if (m < 0 || m > order()) throw DegreeError("truncation beyond stored order");
        HbarSeries r = *this;
        r.coeffs_.resize(static_cast<size_t>(m) + 1);
        return r;
    }

    std::string to_string(const std::string& hname = "h") const {
        std::ostringstream os;
        bool first = true;
        for (int i = 0; i <= order(); ++i) {
            if (coeffs_[static_cast<size_t>(i)].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << coeffs_[static_cast<size_t>(i)].to_string() << ")";
            if (i == 1) os << "*" << hname;
            if (i > 1) os << "*" << hname << "^" << i;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    std::vector<T> coeffs_;
};

} // namespace defq
