#pragma once

#include <complex>
#include <map>
#include <vector>

#include "cqk/ratq.hpp"

namespace cqk {

/// Exponent vector of a torus monomial t_1^{m_1} ... t_l^{m_l}.
using TorusExp = std::vector<int>;

inline TorusExp torus_zero(size_t l) { return TorusExp(l, 0); }

inline TorusExp operator+(TorusExp a, const TorusExp& b) {
    if (a.size() != b.size()) throw Error("torus exponent rank mismatch");
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}
inline TorusExp operator-(const TorusExp& a) {
    TorusExp r = a;
    for (auto& x : r) x = -x;
    return r;
}
inline bool torus_is_zero(const TorusExp& e) {
    for (int x : e)
        if (x) return false;
    return true;
}

/// Sparse Laurent polynomial in the torus variables t_1..t_l.
template <class C>
class TorusPoly {
public:
    TorusPoly() = default;
    explicit TorusPoly(size_t rank) : rank_(rank) {}
    TorusPoly(const TorusExp& e, const C& c) : rank_(e.size()) { add(e, c); }

    size_t rank() const { return rank_; }
    const std::map<TorusExp, C>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    void add(const TorusExp& e, const C& c) {
        if (e.size() != rank_) throw Error("torus rank mismatch");
        auto it = c_.find(e);
        if (it == c_.end()) {
            if (!(c == C{})) c_[e] = c;
        } else {
            it->second += c;
            if (it->second == C{}) c_.erase(it);
        }
    }

    TorusPoly& operator+=(const TorusPoly& o) {
        for (auto& [e, c] : o.c_) add(e, c);
        return *this;
    }
    friend TorusPoly operator+(TorusPoly a, const TorusPoly& b) { return a += b; }
    friend TorusPoly operator*(const TorusPoly& a, const TorusPoly& b) {
        TorusPoly r(a.rank_);
        for (auto& [e1, c1] : a.c_)
            for (auto& [e2, c2] : b.c_) r.add(e1 + e2, c1 * c2);
        return r;
    }

    /// The torus integral: coefficient at exponent 0.
    C constant_term() const {
        auto it = c_.find(torus_zero(rank_));
        return it == c_.end() ? C{} : it->second;
    }

    C coeff(const TorusExp& e) const {
        auto it = c_.find(e);
        return it == c_.end() ? C{} : it->second;
    }

    /// Substitute numeric torus values (unit modulus points).
    std::complex<double> eval(const std::vector<std::complex<double>>& t,
                              double (*to_d)(const C&)) const = delete;

private:
    size_t rank_ = 0;
    std::map<TorusExp, C> c_;
};

inline std::complex<double> torus_monomial_eval(const TorusExp& e,
                                                const std::vector<std::complex<double>>& t) {
    std::complex<double> r = 1;
    for (size_t i = 0; i < e.size(); ++i) r *= std::pow(t[i], e[i]);
    return r;
}

}  // namespace cqk
