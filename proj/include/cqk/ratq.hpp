#pragma once

#include <utility>
#include <vector>

#include "cqk/laurent.hpp"

namespace cqk {

namespace detail {

// Dense polynomial helpers over Q, used for gcd / exact division.
using Poly = std::vector<Rational>;  // coefficient of q^i at index i

inline void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly to_poly(const LaurentQ& l, long shift) {
    // l * q^{-shift} must be a polynomial
    Poly p;
    if (l.is_zero()) return p;
    p.assign(size_t(l.max_deg() - shift + 1), Rational(0));
    for (auto& [e, x] : l.terms()) p[size_t(e - shift)] = x;
    return p;
}

inline LaurentQ from_poly(const Poly& p, long shift) {
    LaurentQ l;
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0) l.set(long(i) + shift, p[i]);
    return l;
}

// Returns (quotient, remainder) of a / b.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    if (b.empty()) throw Error("polynomial division by zero");
    Poly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
    while (a.size() >= b.size()) {
        Rational c = a.back() / b.back();
        size_t off = a.size() - b.size();
        q[off] = c;
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
        trim(a);
        if (a.empty()) break;
        if (a.size() >= b.size() && a.back() == 0) trim(a);
    }
    trim(q);
    return {q, a};
}

inline Poly gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto [q, r] = divmod(a, b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

}  // namespace detail

/// Exact division of Laurent polynomials; throws if the division is not exact.
inline LaurentQ laurent_div_exact(const LaurentQ& a, const LaurentQ& b) {
    if (b.is_zero()) throw Error("division by zero");
    if (a.is_zero()) return {};
    long sa = a.min_deg(), sb = b.min_deg();
    auto [q, r] = detail::divmod(detail::to_poly(a, sa), detail::to_poly(b, sb));
    if (!r.empty()) throw Error("inexact Laurent division");
    return detail::from_poly(q, sa - sb);
}

/// Rational function in q over the rationals, kept in canonical form:
/// den is a monic polynomial with nonzero constant term, gcd(num', den) = 1
/// where num = q^e * num' with num' a polynomial with nonzero constant term.
class RatQ {
public:
    RatQ() : num_(), den_(LaurentQ(1)) {}
    RatQ(long n) : num_(n), den_(LaurentQ(1)) {}
    RatQ(const Rational& r) : num_(r), den_(LaurentQ(1)) {}
    RatQ(const LaurentQ& l) : num_(l), den_(LaurentQ(1)) {}
    RatQ(const LaurentQ& n, const LaurentQ& d) : num_(n), den_(d) { canonicalize(); }

    static RatQ q_pow(long n) { return RatQ(LaurentQ::q_pow(n)); }

    const LaurentQ& num() const { return num_; }
    const LaurentQ& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }

    friend RatQ operator+(const RatQ& a, const RatQ& b) {
        return RatQ(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatQ operator-(const RatQ& a, const RatQ& b) {
        return RatQ(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatQ operator*(const RatQ& a, const RatQ& b) {
        return RatQ(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatQ operator/(const RatQ& a, const RatQ& b) {
        if (b.is_zero()) throw Error("RatQ division by zero");
        return RatQ(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatQ operator-() const {
        RatQ r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RatQ& operator+=(const RatQ& o) { return *this = *this + o; }
    RatQ& operator-=(const RatQ& o) { return *this = *this - o; }
    RatQ& operator*=(const RatQ& o) { return *this = *this * o; }
    RatQ& operator/=(const RatQ& o) { return *this = *this / o; }

    // Canonical forms make equality structural.
    friend bool operator==(const RatQ& a, const RatQ& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatQ& a, const RatQ& b) { return !(a == b); }
    friend bool operator<(const RatQ& a, const RatQ& b) {
        if (a.num_ != b.num_) return a.num_ < b.num_;
        return a.den_ < b.den_;
    }

    double eval(double q0) const {
        double d = den_.eval(q0);
        if (d == 0) throw PoleError("pole at q0");
        return num_.eval(q0) / d;
    }
    Rational eval_exact(const Rational& q0) const {
        Rational d = den_.eval_exact(q0);
        if (d == 0) throw PoleError("pole at q0");
        return num_.eval_exact(q0) / d;
    }

    RatQ subst_pow(long d) const { return RatQ(num_.subst_pow(d), den_.subst_pow(d)); }

    std::string str() const {
        if (den_ == LaurentQ(1)) return maybe_paren(num_.str());
        return maybe_paren(num_.str()) + "/" + maybe_paren(den_.str());
    }

private:
    static std::string maybe_paren(const std::string& s) {
        bool simple = s.find_first_of("+-", 1) == std::string::npos;
        return simple ? s : "(" + s + ")";
    }

    void canonicalize() {
        if (den_.is_zero()) throw Error("zero denominator");
        if (num_.is_zero()) {
            den_ = LaurentQ(1);
            return;
        }
        long en = num_.min_deg(), ed = den_.min_deg();
        auto pn = detail::to_poly(num_, en);
        auto pd = detail::to_poly(den_, ed);
        auto g = detail::gcd(pn, pd);
        if (g.size() > 1) {
            pn = detail::divmod(pn, g).first;
            pd = detail::divmod(pd, g).first;
        }
        Rational lead = pd.back();
        for (auto& c : pn) c /= lead;
        for (auto& c : pd) c /= lead;
        num_ = detail::from_poly(pn, en - ed);
        den_ = detail::from_poly(pd, 0);
    }

    LaurentQ num_, den_;
};

}  // namespace cqk
