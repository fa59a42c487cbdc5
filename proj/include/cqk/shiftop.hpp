#pragma once

#include <complex>
#include <map>

#include "cqk/edge.hpp"
#include "cqk/params.hpp"

namespace cqk {

/// Scalar abstraction letting operator pipelines run either exactly
/// (EdgeScalar: rational functions of q plus unpaired edge square roots)
/// or in floating point at a fixed q0 > 1.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<EdgeScalar> {
    static EdgeScalar from_ratq(const RatQ& r, const QParams&) { return EdgeScalar(r); }
    static EdgeScalar q_pow(long e, const QParams&) { return EdgeScalar(RatQ::q_pow(e)); }
    static EdgeScalar edge(long h, const QParams&) { return EdgeScalar::edge(int(h)); }
    static EdgeScalar conj(const EdgeScalar& x) { return x; }
    static bool is_zero(const EdgeScalar& x) { return x.is_zero(); }
    static double to_double(const EdgeScalar& x, const QParams& p) { return x.eval(p.q()); }
};

template <>
struct ScalarOps<std::complex<double>> {
    using C = std::complex<double>;
    static C from_ratq(const RatQ& r, const QParams& p) { return {r.eval(p.q()), 0.0}; }
    static C q_pow(long e, const QParams& p) { return {std::pow(p.q(), double(e)), 0.0}; }
    static C edge(long h, const QParams& p) {
        return {std::sqrt(1.0 - std::pow(p.q(), -2.0 * double(h))), 0.0};
    }
    static C conj(const C& x) { return std::conj(x); }
    static bool is_zero(const C& x) { return x == C{}; }
    static double to_double(const C& x, const QParams&) { return x.real(); }
};

/// K x K corner of an operator on l^2(N), sparse.  `exact_band` marks the
/// index range [0, exact_band) on which entries are provably unaffected by
/// the truncation; `bandwidth` bounds |row - col| over the support.
template <class S>
struct ShiftOp {
    int K = 0;
    int exact_band = 0;
    int bandwidth = 0;
    std::map<std::pair<int, int>, S> e;

    static ShiftOp identity(int K) {
        ShiftOp op;
        op.K = K;
        op.exact_band = K;
        for (int k = 0; k < K; ++k) op.e[{k, k}] = S(1);
        return op;
    }
    static ShiftOp zero(int K) {
        ShiftOp op;
        op.K = K;
        op.exact_band = K;
        return op;
    }

    void set(int r, int c, const S& v) {
        if (r < 0 || c < 0 || r >= K || c >= K) return;
        if (ScalarOps<S>::is_zero(v))
            e.erase({r, c});
        else {
            e[{r, c}] = v;
            bandwidth = std::max(bandwidth, std::abs(r - c));
        }
    }
    void add(int r, int c, const S& v) {
        if (r < 0 || c < 0 || r >= K || c >= K) return;
        auto it = e.find({r, c});
        if (it == e.end()) {
            set(r, c, v);
        } else {
            it->second += v;
            if (ScalarOps<S>::is_zero(it->second)) e.erase(it);
        }
    }
    S at(int r, int c) const {
        auto it = e.find({r, c});
        return it == e.end() ? S{} : it->second;
    }

    ShiftOp operator*(const ShiftOp& o) const {
        if (K != o.K) throw Error("truncation mismatch");
        ShiftOp out;
        out.K = K;
        out.bandwidth = bandwidth + o.bandwidth;
        out.exact_band =
            std::max(0, std::min({exact_band, o.exact_band,
                                  K - std::max(bandwidth, o.bandwidth)}));
        // group o's entries by row for the sparse product
        std::map<int, std::vector<std::pair<int, const S*>>> byrow;
        for (auto& [rc, v] : o.e) byrow[rc.first].emplace_back(rc.second, &v);
        for (auto& [rc, v] : e) {
            auto it = byrow.find(rc.second);
            if (it == byrow.end()) continue;
            for (auto& [col, pv] : it->second) out.add(rc.first, col, v * *pv);
        }
        return out;
    }
    ShiftOp operator+(const ShiftOp& o) const {
        if (K != o.K) throw Error("truncation mismatch");
        ShiftOp out = *this;
        out.exact_band = std::min(exact_band, o.exact_band);
        out.bandwidth = std::max(bandwidth, o.bandwidth);
        for (auto& [rc, v] : o.e) out.add(rc.first, rc.second, v);
        return out;
    }
    ShiftOp scaled(const S& s) const {
        ShiftOp out;
        out.K = K;
        out.exact_band = exact_band;
        out.bandwidth = bandwidth;
        for (auto& [rc, v] : e) {
            S p = v * s;
            if (!ScalarOps<S>::is_zero(p)) out.e[rc] = p;
        }
        return out;
    }
    ShiftOp adjoint() const {
        ShiftOp out;
        out.K = K;
        out.exact_band = exact_band;
        out.bandwidth = bandwidth;
        for (auto& [rc, v] : e) out.e[{rc.second, rc.first}] = ScalarOps<S>::conj(v);
        return out;
    }
};

}  // namespace cqk
