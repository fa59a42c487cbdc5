#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "cqk/diagsum.hpp"
#include "cqk/repwt.hpp"

namespace cqk {

/// Result of an invariant-integral evaluation.  In exact mode `exact` holds
/// the closed-form value and `tail` is zero; in float mode `value` carries a
/// truncated evaluation and `tail` a rigorous bound on the truncation error.
struct HaarResult {
    bool has_exact = false;
    RatQ exact;
    std::complex<double> value{};
    double tail = 0.0;
    /// True when `tail` is a rigorous bound (always in exact mode); false for
    /// the reported-estimate float paths.
    bool certified = true;
};

namespace haardetail {

inline std::vector<Vec> lift(const std::vector<Vec>& small, const std::vector<size_t>& idxs,
                             size_t dim) {
    std::vector<Vec> out;
    for (const auto& s : small) {
        Vec v(dim);
        for (size_t k = 0; k < idxs.size(); ++k) v[idxs[k]] = s[k];
        out.push_back(std::move(v));
    }
    return out;
}

/// Basis of vectors of weight zero killed by every E_i and F_i.
inline std::vector<Vec> invariant_vectors(const UqModule& M) {
    auto idxs = M.weight_space(WKey(size_t(M.cd.rank), 0));
    if (idxs.empty()) return {};
    Mat rows;
    for (int i = 1; i <= M.cd.rank; ++i)
        for (const Mat* g : {&M.E[size_t(i - 1)], &M.F[size_t(i - 1)]})
            for (size_t r = 0; r < M.dim; ++r) {
                Vec row;
                bool nz = false;
                for (size_t c : idxs) {
                    row.push_back((*g)[r][c]);
                    nz = nz || !row.back().is_zero();
                }
                if (nz) rows.push_back(std::move(row));
            }
    if (rows.empty()) {
        std::vector<Vec> all;
        for (size_t k = 0; k < idxs.size(); ++k) {
            Vec u(idxs.size());
            u[k] = RatQ(1);
            all.push_back(std::move(u));
        }
        return lift(all, idxs, M.dim);
    }
    return lift(mat_kernel(rows), idxs, M.dim);
}

/// Basis of weight-zero covectors annihilating the images of every E_i, F_i.
inline std::vector<Vec> invariant_covectors(const UqModule& M) {
    auto idxs = M.weight_space(WKey(size_t(M.cd.rank), 0));
    if (idxs.empty()) return {};
    Mat rows;
    for (int i = 1; i <= M.cd.rank; ++i)
        for (const Mat* g : {&M.E[size_t(i - 1)], &M.F[size_t(i - 1)]})
            for (size_t c = 0; c < M.dim; ++c) {
                Vec row;
                bool nz = false;
                for (size_t r : idxs) {
                    row.push_back((*g)[r][c]);
                    nz = nz || !row.back().is_zero();
                }
                if (nz) rows.push_back(std::move(row));
            }
    if (rows.empty()) {
        std::vector<Vec> all;
        for (size_t k = 0; k < idxs.size(); ++k) {
            Vec u(idxs.size());
            u[k] = RatQ(1);
            all.push_back(std::move(u));
        }
        return lift(all, idxs, M.dim);
    }
    return lift(mat_kernel(rows), idxs, M.dim);
}

}  // namespace haardetail

/// Invariant integral of a single matrix coefficient via projection onto the
/// trivial isotypic component: sum_ab <l, w_a> (g^{-1})_ab <beta_b, v> with
/// g_ab = <beta_a, w_b>.  Zero when the module has no trivial submodule.
inline RatQ haar_schur(const MatrixCoefficient& c) {
    const UqModule& M = *c.M;
    auto ws = haardetail::invariant_vectors(M);
    if (ws.empty()) return RatQ(0);
    auto bs = haardetail::invariant_covectors(M);
    if (bs.size() != ws.size()) throw Error("invariant multiplicity mismatch");
    size_t n = ws.size();
    Mat g = mat_zero(n, n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) g[a][b] = dot(bs[a], ws[b]);
    Mat gi = mat_inverse(g);
    RatQ out;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            out += dot(c.l, ws[a]) * gi[a][b] * dot(bs[b], c.v);
    return out;
}

/// Invariant integral of a product of two matrix coefficients, as the single
/// coefficient (l tensor l', v tensor v') of the tensor module.
inline RatQ haar_schur_pair(const MatrixCoefficient& a, const MatrixCoefficient& b) {
    auto T = std::make_shared<const UqModule>(tensor_module(*a.M, *b.M));
    MatrixCoefficient c;
    c.M = T;
    c.l = Vec(T->dim);
    c.v = Vec(T->dim);
    for (size_t u = 0; u < a.M->dim; ++u)
        for (size_t w = 0; w < b.M->dim; ++w) {
            c.l[u * b.M->dim + w] = a.l[u] * b.l[w];
            c.v[u * b.M->dim + w] = a.v[u] * b.v[w];
        }
    return haar_schur(c);
}

/// Invariant integral from the representation at the longest word: the torus
/// integral keeps the trivial character, and each slot is summed against the
/// weight q^{-(2 rho, beta_j)(k+1)}; the prefactor product over positive roots
/// normalizes the integral of 1 to 1.
template <class S>
HaarResult haar_trace(const RepContext& ctx, const TensorOp<S>& op) {
    const CartanDatum& cd = ctx.cd;
    if (ctx.word.size() != cd.pos_roots.size())
        throw Error("invariant integral requires a longest-word representation");
    if (op.n != ctx.slots()) throw Error("operator arity mismatch");
    auto e = ctx.a_exponents(WKey(size_t(cd.rank), 1));
    std::vector<long> z;
    for (long x : e) z.push_back(-2 * x);

    HaarResult res;
    if constexpr (std::is_same_v<S, EdgeScalar>) {
        RatQ sum;
        for (const auto& t : op.terms) {
            if (!torus_is_zero(t.tor)) continue;
            if (!t.coeff.is_rational()) throw Error("irrational coefficient in a closed walk");
            RatQ prod = t.coeff.rational_part();
            for (size_t j = 0; j < op.n && !prod.is_zero(); ++j) {
                const auto& s = t.slots[j];
                RatQ sj;
                if (s.geom) {
                    long w = z[j] + *s.geom;
                    if (w >= 0) throw NotSummable("weighted diagonal sum diverges");
                    sj = RatQ::q_pow(w) / (RatQ(1) - RatQ::q_pow(w));
                } else {
                    DiagSeries f = fit_diag_series(s.op, s.slope_lo, s.slope_hi);
                    sj = weighted_diag_sum(f, z[j]);
                }
                prod *= sj;
            }
            sum += prod;
        }
        RatQ pref(1);
        for (long zj : z) pref *= RatQ::q_pow(-zj) - RatQ(1);
        res.has_exact = true;
        res.exact = pref * sum;
        res.value = {res.exact.eval(ctx.par.q()), 0.0};
    } else {
        const double q = ctx.par.q();
        std::complex<double> sum{};
        double tail = 0.0;
        for (const auto& t : op.terms) {
            if (!torus_is_zero(t.tor)) continue;
            std::complex<double> prod = t.coeff;
            double mag = std::abs(t.coeff);
            double magtrunc = mag;
            for (size_t j = 0; j < op.n; ++j) {
                const auto& s = t.slots[j];
                int B = s.op.exact_band;
                std::complex<double> sj{};
                for (int k = 0; k < B; ++k)
                    sj += std::pow(q, double(z[j]) * (k + 1)) * s.op.at(k, k);
                // |diag(k)| <= norm for the compression of a norm-bounded
                // operator, so the discarded range is geometrically bounded
                double ratio = std::pow(q, double(z[j]));
                if (!(ratio < 1.0)) throw NotSummable("weighted diagonal sum diverges");
                double tj = s.norm * std::pow(ratio, double(B + 1)) / (1.0 - ratio);
                prod *= sj;
                mag *= std::abs(sj) + tj;
                magtrunc *= std::abs(sj);
            }
            sum += prod;
            tail += mag - magtrunc;
        }
        double pref = 1.0;
        for (long zj : z) pref *= std::pow(q, double(-zj)) - 1.0;
        res.value = pref * sum;
        res.tail = pref * tail;
    }
    return res;
}

}  // namespace cqk
