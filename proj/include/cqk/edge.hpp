#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "cqk/ratq.hpp"

namespace cqk {

/// Element of the ring RatQ[x_h : h >= 1] / (x_h^2 - (1 - q^{-2h})),
/// where x_h stands for the edge factor sqrt(1 - q^{-2h}) of the l^2(N)
/// shift representation.  Keys are the sorted lists of edges with odd
/// multiplicity; even pairs are collapsed into the rational coefficient.
class EdgeScalar {
public:
    using Key = std::vector<int>;

    EdgeScalar() = default;
    EdgeScalar(long n) {
        if (n) c_[{}] = RatQ(n);
    }
    EdgeScalar(const RatQ& r) {
        if (!r.is_zero()) c_[{}] = r;
    }

    /// sqrt(1 - q^{-2h})
    static EdgeScalar edge(int h) {
        EdgeScalar e;
        e.c_[{h}] = RatQ(1);
        return e;
    }

    /// 1 - q^{-2h} as an exact rational function.
    static RatQ edge_squared(int h) {
        return RatQ(LaurentQ(1) - LaurentQ::q_pow(-2 * h));
    }

    bool is_zero() const { return c_.empty(); }
    const std::map<Key, RatQ>& terms() const { return c_; }

    /// True iff the value lies in RatQ (no unpaired edge factors).
    bool is_rational() const {
        return c_.empty() || (c_.size() == 1 && c_.begin()->first.empty());
    }
    RatQ rational_part() const {
        auto it = c_.find({});
        return it == c_.end() ? RatQ() : it->second;
    }

    void add(const Key& k, const RatQ& r) {
        auto it = c_.find(k);
        if (it == c_.end()) {
            if (!r.is_zero()) c_[k] = r;
        } else {
            it->second += r;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    EdgeScalar& operator+=(const EdgeScalar& o) {
        for (auto& [k, r] : o.c_) add(k, r);
        return *this;
    }
    EdgeScalar& operator-=(const EdgeScalar& o) {
        for (auto& [k, r] : o.c_) add(k, -r);
        return *this;
    }
    friend EdgeScalar operator+(EdgeScalar a, const EdgeScalar& b) { return a += b; }
    friend EdgeScalar operator-(EdgeScalar a, const EdgeScalar& b) { return a -= b; }
    EdgeScalar operator-() const {
        EdgeScalar r;
        for (auto& [k, x] : c_) r.c_[k] = -x;
        return r;
    }
    friend EdgeScalar operator*(const EdgeScalar& a, const EdgeScalar& b) {
        EdgeScalar out;
        for (auto& [k1, r1] : a.c_)
            for (auto& [k2, r2] : b.c_) {
                RatQ coef = r1 * r2;
                Key merged;
                // symmetric difference; common edges square to rationals
                size_t i = 0, j = 0;
                while (i < k1.size() && j < k2.size()) {
                    if (k1[i] < k2[j])
                        merged.push_back(k1[i++]);
                    else if (k2[j] < k1[i])
                        merged.push_back(k2[j++]);
                    else {
                        coef *= edge_squared(k1[i]);
                        ++i, ++j;
                    }
                }
                merged.insert(merged.end(), k1.begin() + long(i), k1.end());
                merged.insert(merged.end(), k2.begin() + long(j), k2.end());
                out.add(merged, coef);
            }
        return out;
    }
    EdgeScalar& operator*=(const EdgeScalar& o) { return *this = *this * o; }

    friend bool operator==(const EdgeScalar& a, const EdgeScalar& b) { return a.c_ == b.c_; }
    friend bool operator!=(const EdgeScalar& a, const EdgeScalar& b) { return !(a == b); }

    double eval(double q0) const {
        double s = 0;
        for (auto& [k, r] : c_) {
            double v = r.eval(q0);
            for (int h : k) v *= std::sqrt(1.0 - std::pow(q0, -2.0 * h));
            s += v;
        }
        return s;
    }

private:
    std::map<Key, RatQ> c_;
};

}  // namespace cqk
