#pragma once

#include <map>
#include <vector>

#include "cqk/edge.hpp"
#include "cqk/linalg.hpp"
#include "cqk/shiftop.hpp"

namespace cqk {

/// Certified closed form for the diagonal of an exactly banded operator:
/// diag(k) = low[k] for k < k0 and sum_alpha coef[alpha] * q^{-alpha k} for
/// k >= k0.  The ansatz exponent window [lo, hi] must be supplied by the
/// caller from structural bounds; the fit is solved on the first window of
/// samples and verified on every remaining exact diagonal entry, so a wrong
/// window is detected, never silently accepted.
struct DiagSeries {
    long k0 = 0;
    std::vector<RatQ> low;
    std::map<long, RatQ> coef;
};

class NotSummable : public Error {
public:
    using Error::Error;
};

inline DiagSeries fit_diag_series(const ShiftOp<EdgeScalar>& op, long lo, long hi) {
    if (hi < lo) throw Error("empty exponent window");
    const long k0 = op.bandwidth;
    const long width = hi - lo + 1;
    const long B = op.exact_band;
    if (B < k0 + width + 1)
        throw NotSummable("truncation too small to certify the diagonal closed form");
    auto diag_at = [&](long k) {
        EdgeScalar v = op.at(int(k), int(k));
        if (!v.is_rational()) throw Error("irrational diagonal entry on a closed walk");
        return v.rational_part();
    };
    DiagSeries f;
    f.k0 = k0;
    for (long k = 0; k < k0; ++k) f.low.push_back(diag_at(k));
    Mat V = mat_zero(size_t(width), size_t(width));
    Vec y = Vec(size_t(width));
    for (long r = 0; r < width; ++r) {
        long k = k0 + r;
        for (long c = 0; c < width; ++c) V[size_t(r)][size_t(c)] = RatQ::q_pow(-k * (lo + c));
        y[size_t(r)] = diag_at(k);
    }
    Vec sol = mat_solve(V, y);
    for (long c = 0; c < width; ++c)
        if (!sol[size_t(c)].is_zero()) f.coef[lo + c] = sol[size_t(c)];
    for (long k = k0 + width; k < B; ++k) {
        RatQ acc;
        for (auto& [a, cf] : f.coef) acc += cf * RatQ::q_pow(-a * k);
        if (!(acc == diag_at(k)))
            throw Error("diagonal closed-form verification failed; exponent window too small");
    }
    return f;
}

/// sum_{k>=0} q^{z(k+1)} diag(k) in closed form.  Throws NotSummable when a
/// surviving exponent makes the geometric ratio >= 1 (the certified
/// trace-class rejection).
inline RatQ weighted_diag_sum(const DiagSeries& f, long z) {
    RatQ total;
    for (long k = 0; k < f.k0; ++k)
        if (!f.low[size_t(k)].is_zero()) total += RatQ::q_pow(z * (k + 1)) * f.low[size_t(k)];
    for (auto& [a, cf] : f.coef) {
        if (z - a >= 0) throw NotSummable("diagonal is not summable against the given weight");
        // sum_{k>=k0} q^{z(k+1) - a k} = q^{z + (z-a) k0} / (1 - q^{z-a})
        RatQ geo = RatQ::q_pow(z + (z - a) * f.k0) / (RatQ(1) - RatQ::q_pow(z - a));
        total += cf * geo;
    }
    return total;
}

}  // namespace cqk
