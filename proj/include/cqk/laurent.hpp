#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace cqk {

using Rational = mpq_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleError : Error {
    using Error::Error;
};

/// Sparse Laurent polynomial in q with rational coefficients.
class LaurentQ {
public:
    LaurentQ() = default;
    LaurentQ(long n) { set(0, Rational(n)); }
    LaurentQ(const Rational& r) { set(0, r); }

    /// q^n
    static LaurentQ q_pow(long n) {
        LaurentQ p;
        p.set(n, 1);
        return p;
    }

    bool is_zero() const { return c_.empty(); }

    const std::map<long, Rational>& terms() const { return c_; }

    Rational coeff(long e) const {
        auto it = c_.find(e);
        return it == c_.end() ? Rational(0) : it->second;
    }

    long min_deg() const {
        if (is_zero()) throw Error("min_deg of zero polynomial");
        return c_.begin()->first;
    }
    long max_deg() const {
        if (is_zero()) throw Error("max_deg of zero polynomial");
        return c_.rbegin()->first;
    }

    void set(long e, const Rational& r) {
        if (r == 0)
            c_.erase(e);
        else
            c_[e] = r;
    }
    void add_term(long e, const Rational& r) {
        auto it = c_.find(e);
        if (it == c_.end()) {
            if (r != 0) c_[e] = r;
        } else {
            it->second += r;
            if (it->second == 0) c_.erase(it);
        }
    }

    LaurentQ& operator+=(const LaurentQ& o) {
        for (auto& [e, r] : o.c_) add_term(e, r);
        return *this;
    }
    LaurentQ& operator-=(const LaurentQ& o) {
        for (auto& [e, r] : o.c_) add_term(e, -r);
        return *this;
    }
    friend LaurentQ operator+(LaurentQ a, const LaurentQ& b) { return a += b; }
    friend LaurentQ operator-(LaurentQ a, const LaurentQ& b) { return a -= b; }
    LaurentQ operator-() const {
        LaurentQ r;
        for (auto& [e, x] : c_) r.c_[e] = -x;
        return r;
    }
    friend LaurentQ operator*(const LaurentQ& a, const LaurentQ& b) {
        LaurentQ r;
        for (auto& [e1, x1] : a.c_)
            for (auto& [e2, x2] : b.c_) r.add_term(e1 + e2, x1 * x2);
        return r;
    }
    LaurentQ& operator*=(const LaurentQ& o) { return *this = *this * o; }
    friend bool operator==(const LaurentQ& a, const LaurentQ& b) { return a.c_ == b.c_; }
    friend bool operator!=(const LaurentQ& a, const LaurentQ& b) { return !(a == b); }
    friend bool operator<(const LaurentQ& a, const LaurentQ& b) {
        return std::lexicographical_compare(
            a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end(),
            [](const auto& x, const auto& y) {
                if (x.first != y.first) return x.first < y.first;
                return cmp(x.second, y.second) < 0;
            });
    }

    /// Substitute q -> q^d (exponent scaling).
    LaurentQ subst_pow(long d) const {
        LaurentQ r;
        for (auto& [e, x] : c_) r.c_[e * d] = x;
        return r;
    }

    double eval(double q0) const {
        double s = 0;
        for (auto& [e, x] : c_) s += x.get_d() * std::pow(q0, double(e));
        return s;
    }

    /// Exact evaluation at a rational q0.
    Rational eval_exact(const Rational& q0) const {
        Rational s = 0;
        for (auto& [e, x] : c_) {
            Rational p = 1;
            for (long i = 0; i < std::labs(e); ++i) p *= q0;
            if (e < 0) p = 1 / p;
            s += x * p;
        }
        return s;
    }

    std::string str() const;

private:
    std::map<long, Rational> c_;  // exponent -> coefficient, no zeros stored
};

inline std::string LaurentQ::str() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        auto [e, x] = *it;
        Rational a = x;
        if (first) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += (a < 0) ? "-" : "+";
            if (a < 0) a = -a;
        }
        first = false;
        std::string coef = a.get_str();
        if (e == 0) {
            out += coef;
        } else {
            if (coef != "1") out += coef + "*";
            out += (e == 1) ? "q" : "q^" + std::to_string(e);
        }
    }
    return out;
}

}  // namespace cqk
