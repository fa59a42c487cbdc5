#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "cqk/shiftop.hpp"

namespace cqk {

/// PBW monomial of C_q[SL2]: family 1 is c11^m c12^p c21^r (m >= 0),
/// family 2 is c22^m c12^p c21^r (m >= 1).
struct SU2Mono {
    int fam = 1;
    long m = 0, p = 0, r = 0;
    auto operator<=>(const SU2Mono&) const = default;
    long degree() const { return m + p + r; }
};

class NormalFormElem;

/// Element of C_q[SL2] ⊗ C_q[SL2], normal-formed in each leg.
class NfTensor {
public:
    const std::map<std::pair<SU2Mono, SU2Mono>, RatQ>& terms() const& { return t_; }
    std::map<std::pair<SU2Mono, SU2Mono>, RatQ> terms() && { return std::move(t_); }
    void add(const SU2Mono& a, const SU2Mono& b, const RatQ& c) {
        auto key = std::make_pair(a, b);
        auto it = t_.find(key);
        if (it == t_.end()) {
            if (!c.is_zero()) t_[key] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }
    NfTensor operator*(const NfTensor& o) const;
    NfTensor& operator+=(const NfTensor& o) {
        for (auto& [k, c] : o.t_) add(k.first, k.second, c);
        return *this;
    }

private:
    std::map<std::pair<SU2Mono, SU2Mono>, RatQ> t_;
};

class NormalFormElem {
public:
    enum Gen { C11 = 0, C22 = 1, C12 = 2, C21 = 3 };

    NormalFormElem() = default;
    /*implicit*/ NormalFormElem(const RatQ& c) {
        if (!c.is_zero()) t_[SU2Mono{}] = c;
    }

    static NormalFormElem one() { return NormalFormElem(RatQ(1)); }
    static NormalFormElem gen(int i, int j) {
        SU2Mono mo;
        if (i == 1 && j == 1) mo = {1, 1, 0, 0};
        else if (i == 1 && j == 2) mo = {1, 0, 1, 0};
        else if (i == 2 && j == 1) mo = {1, 0, 0, 1};
        else if (i == 2 && j == 2) mo = {2, 1, 0, 0};
        else throw Error("generator index out of range");
        NormalFormElem e;
        e.t_[mo] = RatQ(1);
        return e;
    }
    static NormalFormElem monomial(int fam, long m, long p, long r, const RatQ& c = RatQ(1)) {
        if (fam < 1 || fam > 2 || m < 0 || p < 0 || r < 0 || (fam == 2 && m < 1))
            throw Error("bad PBW monomial");
        if (m == 0) fam = 1;
        NormalFormElem e;
        if (!c.is_zero()) e.t_[SU2Mono{fam, m, p, r}] = c;
        return e;
    }

    const std::map<SU2Mono, RatQ>& terms() const& { return t_; }
    std::map<SU2Mono, RatQ> terms() && { return std::move(t_); }
    bool is_zero() const { return t_.empty(); }
    long degree() const {
        long d = 0;
        for (auto& [mo, c] : t_) d = std::max(d, mo.degree());
        return d;
    }

    void add_term(const SU2Mono& mo, const RatQ& c) {
        auto it = t_.find(mo);
        if (it == t_.end()) {
            if (!c.is_zero()) t_[mo] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    NormalFormElem& operator+=(const NormalFormElem& o) {
        for (auto& [mo, c] : o.t_) add_term(mo, c);
        return *this;
    }
    friend NormalFormElem operator+(NormalFormElem a, const NormalFormElem& b) { return a += b; }
    friend NormalFormElem operator-(NormalFormElem a, const NormalFormElem& b) {
        for (auto& [mo, c] : b.t_) a.add_term(mo, -c);
        return a;
    }
    NormalFormElem scaled(const RatQ& s) const {
        NormalFormElem e;
        for (auto& [mo, c] : t_) {
            RatQ p = c * s;
            if (!p.is_zero()) e.t_[mo] = p;
        }
        return e;
    }
    friend NormalFormElem operator*(const NormalFormElem& a, const NormalFormElem& b);
    friend bool operator==(const NormalFormElem& a, const NormalFormElem& b) {
        return a.t_ == b.t_;
    }

    RatQ counit() const;
    NormalFormElem antipode() const;
    NormalFormElem star() const;
    NfTensor coproduct() const;

    std::string str() const;

private:
    std::map<SU2Mono, RatQ> t_;
};

namespace su2detail {

using Word = std::vector<int>;  // NormalFormElem::Gen entries

inline Word mono_word(const SU2Mono& mo) {
    Word w;
    int head = mo.fam == 1 ? NormalFormElem::C11 : NormalFormElem::C22;
    w.insert(w.end(), size_t(mo.m), head);
    w.insert(w.end(), size_t(mo.p), NormalFormElem::C12);
    w.insert(w.end(), size_t(mo.r), NormalFormElem::C21);
    return w;
}

/// Reduce a word in the generators to normal form by the seven relations:
///   c12 c11 = q c11 c12        c21 c11 = q c11 c21
///   c12 c22 = q^{-1} c22 c12   c21 c22 = q^{-1} c22 c21
///   c21 c12 = c12 c21
///   c11 c22 = 1 + q^{-1} c12 c21
///   c22 c11 = 1 + q c12 c21
inline void reduce_word(Word w, RatQ coeff, NormalFormElem& out) {
    using G = NormalFormElem;
    struct Item {
        Word w;
        RatQ c;
    };
    std::vector<Item> stack;
    stack.push_back({std::move(w), std::move(coeff)});
    auto rank = [](int g) { return g == G::C11 || g == G::C22 ? 0 : (g == G::C12 ? 1 : 2); };
    while (!stack.empty()) {
        Item it = std::move(stack.back());
        stack.pop_back();
        size_t pos = 0;
        bool reduced = true;
        for (size_t k = 0; k + 1 < it.w.size(); ++k) {
            int a = it.w[k], b = it.w[k + 1];
            bool bad = rank(a) > rank(b) || (rank(a) == 0 && rank(b) == 0 && a != b);
            if (bad) {
                pos = k;
                reduced = false;
                break;
            }
        }
        if (reduced) {
            long m = 0, p = 0, r = 0;
            int fam = 1;
            for (int g : it.w) {
                if (g == G::C11) ++m;
                else if (g == G::C22) fam = 2, ++m;
                else if (g == G::C12) ++p;
                else ++r;
            }
            out.add_term(SU2Mono{m == 0 ? 1 : fam, m, p, r}, it.c);
            continue;
        }
        int a = it.w[pos], b = it.w[pos + 1];
        auto swapped = [&](long qexp) {
            Item n = it;
            std::swap(n.w[pos], n.w[pos + 1]);
            if (qexp) n.c *= RatQ::q_pow(qexp);
            stack.push_back(std::move(n));
        };
        if (rank(a) == 0 && rank(b) == 0) {
            // c11 c22 = 1 + q^{-1} c12 c21 ; c22 c11 = 1 + q c12 c21
            long e = (a == G::C11) ? -1 : 1;
            Item unit = it;
            unit.w.erase(unit.w.begin() + long(pos), unit.w.begin() + long(pos) + 2);
            stack.push_back(std::move(unit));
            Item quad = it;
            quad.w[pos] = G::C12;
            quad.w[pos + 1] = G::C21;
            quad.c *= RatQ::q_pow(e);
            stack.push_back(std::move(quad));
        } else if (b == G::C11) {
            swapped(1);  // c12 c11 -> q c11 c12 ; c21 c11 -> q c11 c21
        } else if (b == G::C22) {
            swapped(-1);  // c12 c22 -> q^{-1} c22 c12 ; c21 c22 -> q^{-1} c22 c21
        } else {
            swapped(0);  // c21 c12 -> c12 c21
        }
    }
}

}  // namespace su2detail

inline NormalFormElem operator*(const NormalFormElem& a, const NormalFormElem& b) {
    NormalFormElem out;
    for (auto& [ma, ca] : a.t_)
        for (auto& [mb, cb] : b.t_) {
            su2detail::Word w = su2detail::mono_word(ma);
            su2detail::Word wb = su2detail::mono_word(mb);
            w.insert(w.end(), wb.begin(), wb.end());
            su2detail::reduce_word(std::move(w), ca * cb, out);
        }
    return out;
}

inline RatQ NormalFormElem::counit() const {
    // eps(c11) = eps(c22) = 1, eps(c12) = eps(c21) = 0
    RatQ s;
    for (auto& [mo, c] : t_)
        if (mo.p == 0 && mo.r == 0) s += c;
    return s;
}

inline NormalFormElem NormalFormElem::antipode() const {
    // S(c11) = c22, S(c22) = c11, S(c12) = -q c12, S(c21) = -q^{-1} c21,
    // extended as an antihomomorphism.
    NormalFormElem out;
    for (auto& [mo, c] : t_) {
        su2detail::Word w = su2detail::mono_word(mo);
        std::reverse(w.begin(), w.end());
        RatQ coeff = c;
        for (int& g : w) {
            switch (g) {
                case C11: g = C22; break;
                case C22: g = C11; break;
                case C12: coeff *= -RatQ::q_pow(1); break;
                case C21: coeff *= -RatQ::q_pow(-1); break;
            }
        }
        su2detail::reduce_word(std::move(w), coeff, out);
    }
    return out;
}

inline NormalFormElem NormalFormElem::star() const {
    // c11* = c22, c22* = c11, c12* = -q^{-1} c21, c21* = -q c12 (q real),
    // extended as an antilinear antihomomorphism.
    NormalFormElem out;
    for (auto& [mo, c] : t_) {
        su2detail::Word w = su2detail::mono_word(mo);
        std::reverse(w.begin(), w.end());
        RatQ coeff = c;
        for (int& g : w) {
            switch (g) {
                case C11: g = C22; break;
                case C22: g = C11; break;
                case C12:
                    g = C21;
                    coeff *= -RatQ::q_pow(-1);
                    break;
                case C21:
                    g = C12;
                    coeff *= -RatQ::q_pow(1);
                    break;
            }
        }
        su2detail::reduce_word(std::move(w), coeff, out);
    }
    return out;
}

inline NfTensor NfTensor::operator*(const NfTensor& o) const {
    NfTensor out;
    for (auto& [ka, ca] : t_)
        for (auto& [kb, cb] : o.t_) {
            NormalFormElem left = NormalFormElem::monomial(ka.first.fam, ka.first.m, ka.first.p,
                                                           ka.first.r) *
                                  NormalFormElem::monomial(kb.first.fam, kb.first.m, kb.first.p,
                                                           kb.first.r);
            NormalFormElem right = NormalFormElem::monomial(ka.second.fam, ka.second.m,
                                                            ka.second.p, ka.second.r) *
                                   NormalFormElem::monomial(kb.second.fam, kb.second.m,
                                                            kb.second.p, kb.second.r);
            RatQ c = ca * cb;
            for (auto& [ml, cl] : left.terms())
                for (auto& [mr, cr] : right.terms()) out.add(ml, mr, c * cl * cr);
        }
    return out;
}

inline NfTensor NormalFormElem::coproduct() const {
    // Delta(c_ij) = sum_k c_ik ⊗ c_kj, extended as an algebra map
    auto delta_gen = [](int g) {
        NfTensor d;
        auto mono_of = [](int gg) {
            switch (gg) {
                case C11: return SU2Mono{1, 1, 0, 0};
                case C22: return SU2Mono{2, 1, 0, 0};
                case C12: return SU2Mono{1, 0, 1, 0};
                default: return SU2Mono{1, 0, 0, 1};
            }
        };
        switch (g) {
            case C11:
                d.add(mono_of(C11), mono_of(C11), RatQ(1));
                d.add(mono_of(C12), mono_of(C21), RatQ(1));
                break;
            case C12:
                d.add(mono_of(C11), mono_of(C12), RatQ(1));
                d.add(mono_of(C12), mono_of(C22), RatQ(1));
                break;
            case C21:
                d.add(mono_of(C21), mono_of(C11), RatQ(1));
                d.add(mono_of(C22), mono_of(C21), RatQ(1));
                break;
            default:
                d.add(mono_of(C21), mono_of(C12), RatQ(1));
                d.add(mono_of(C22), mono_of(C22), RatQ(1));
                break;
        }
        return d;
    };
    NfTensor out;
    out.add(SU2Mono{}, SU2Mono{}, RatQ(1));  // Delta(1) = 1 ⊗ 1
    NfTensor acc = out;
    bool first = true;
    for (auto& [mo, c] : t_) {
        NfTensor term;
        term.add(SU2Mono{}, SU2Mono{}, c);
        for (int g : su2detail::mono_word(mo)) term = term * delta_gen(g);
        if (first) {
            acc = term;
            first = false;
        } else {
            acc += term;
        }
    }
    return first ? NfTensor{} : acc;
}

inline std::string NormalFormElem::str() const {
    if (t_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [mo, c] : t_) {
        if (!first) out += " + ";
        first = false;
        std::string mon;
        auto pw = [](const char* g, long e) {
            if (e == 0) return std::string();
            std::string s = g;
            if (e > 1) s += "^" + std::to_string(e);
            return s + " ";
        };
        mon += pw(mo.fam == 1 ? "c11" : "c22", mo.m);
        mon += pw("c12", mo.p);
        mon += pw("c21", mo.r);
        if (!mon.empty()) mon.pop_back();
        if (mon.empty())
            out += c.str();
        else
            out += (c.is_one() ? "" : "(" + c.str() + ")*") + mon;
    }
    return out;
}

/// H(c11^m c12^p c21^r) = H(c22^m c12^p c21^r)
///   = delta_{m,0} delta_{p,r} (-q)^p (q^2 - 1)/(q^{2p+2} - 1).
inline RatQ haar_closed_form(int fam, long m, long p, long r) {
    if (fam < 1 || fam > 2 || m < 0 || p < 0 || r < 0) throw Error("bad monomial");
    if (m != 0 || p != r) return RatQ(0);
    LaurentQ num = LaurentQ::q_pow(2) - LaurentQ(1);
    LaurentQ den = LaurentQ::q_pow(2 * p + 2) - LaurentQ(1);
    RatQ v(num, den);
    RatQ sign = RatQ(LaurentQ::q_pow(p));
    if (p % 2) sign = -sign;
    return sign * v;
}

inline RatQ haar_closed_form(const NormalFormElem& a) {
    RatQ s;
    for (auto& [mo, c] : a.terms()) s += c * haar_closed_form(mo.fam, mo.m, mo.p, mo.r);
    return s;
}

/// The l^2(N) *-representation, truncated to a K x K corner.  The deformation
/// step d substitutes q -> q^d (the block for the i-th node uses d = d_i);
/// edge indices are global: sqrt(1 - q^{-2dk}) is edge d*k.
template <class S>
ShiftOp<S> pi_su2_gen(int g, const QParams& par, long d = 1) {
    using Ops = ScalarOps<S>;
    int K = par.trunc;
    ShiftOp<S> op = ShiftOp<S>::zero(K);
    switch (g) {
        case NormalFormElem::C11:
            for (int k = 1; k < K; ++k) op.set(k - 1, k, Ops::edge(d * k, par));
            break;
        case NormalFormElem::C22:
            for (int k = 0; k + 1 < K; ++k) op.set(k + 1, k, Ops::edge(d * (k + 1), par));
            break;
        case NormalFormElem::C12:
            for (int k = 0; k < K; ++k) op.set(k, k, Ops::q_pow(-d * (k + 1), par));
            break;
        default:  // C21
            for (int k = 0; k < K; ++k) {
                S v = Ops::q_pow(-d * k, par);
                op.set(k, k, S{} - v);
            }
            break;
    }
    return op;
}

template <class S>
ShiftOp<S> pi_su2(const NormalFormElem& a, const QParams& par, long d = 1) {
    using Ops = ScalarOps<S>;
    int K = par.trunc;
    ShiftOp<S> out = ShiftOp<S>::zero(K);
    for (auto& [mo, c] : a.terms()) {
        ShiftOp<S> m = ShiftOp<S>::identity(K);
        for (int g : su2detail::mono_word(mo)) m = m * pi_su2_gen<S>(g, par, d);
        RatQ cd = d == 1 ? c : c.subst_pow(d);
        out = out + m.scaled(Ops::from_ratq(cd, par));
    }
    return out;
}

}  // namespace cqk
