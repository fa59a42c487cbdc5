#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "cqk/haar.hpp"
#include "cqk/repwt.hpp"

namespace cqk {

/// Product over the inversion set of w of (q^{(2 rho, beta)} - 1).
inline RatQ const_w(const CartanDatum& cd, const WeylWord& w) {
    RatQ out(1);
    for (const auto& beta : inversion_set(cd, w))
        out *= RatQ::q_pow(two_rho_pair(cd, beta)) - RatQ(1);
    return out;
}

/// Representation context enriched with the quasi-trace data: the balancing
/// exponents (pairings of rho with the inversion roots), the normalizing
/// constant, and the covariance character exponent 2(w rho - rho).
struct QuasiTraceContext {
    RepContext rep;
    RatQ cw;
    std::vector<long> e;  // e_j = (rho, beta_j) > 0
    WKey nu;              // 2(w rho - rho) in fundamental-weight coordinates
};

inline QuasiTraceContext make_qtrace_context(RepContext ctx) {
    QuasiTraceContext q;
    q.e = ctx.a_exponents(WKey(size_t(ctx.cd.rank), 1));
    q.cw = const_w(ctx.cd, ctx.word);
    WeightQ wr = weyl_apply(ctx.cd, ctx.word, ctx.cd.rho());
    for (int i = 0; i < ctx.cd.rank; ++i) {
        Rational c = 2 * (wr[size_t(i)] - 1);
        if (c.get_den() != 1) throw Error("non-integral covariance exponent");
        q.nu.push_back(c.get_num().get_si());
    }
    q.rep = std::move(ctx);
    return q;
}

/// The point q^{nu} of the torus: t_i = q^{(nu, omega_i)} for a root-lattice
/// weight nu given in fundamental-weight coordinates.
inline TorusPoint q_power_point(const CartanDatum& cd, const WKey& nu) {
    std::vector<long> e;
    for (int i = 0; i < cd.rank; ++i) {
        Rational s = 0;
        for (int j = 0; j < cd.rank; ++j) s += cd.wp[size_t(j)][size_t(i)] * nu[size_t(j)];
        if (s.get_den() != 1) throw Error("torus point exponent is not integral");
        e.push_back(s.get_num().get_si());
    }
    return TorusPoint::q_power(e);
}

namespace qtrdetail {

/// chi_t(mu) for an exact torus point, as a q-power; mu in omega-coordinates.
inline RatQ torus_character_exact(const TorusPoint& t, const TorusExp& mu) {
    if (t.kind == TorusPoint::Kind::Symbolic) {
        if (!torus_is_zero(mu))
            throw Error("symbolic torus point: character of a nonzero weight");
        return RatQ(1);
    }
    if (t.kind != TorusPoint::Kind::QPower)
        throw Error("numeric torus point requires float mode");
    long s = 0;
    for (size_t i = 0; i < mu.size(); ++i) s += t.qexp[i] * long(mu[i]);
    return RatQ::q_pow(s);
}

inline std::complex<double> torus_character_float(const TorusPoint& t, const TorusExp& mu,
                                                  double q) {
    if (t.kind == TorusPoint::Kind::Numeric) return torus_monomial_eval(mu, t.num);
    return {torus_character_exact(t, mu).eval(q), 0.0};
}

}  // namespace qtrdetail

/// Quasi-trace of an operator on the representation space of the context:
/// const_w times the trace against the inverse balancing diagonal
/// q^{2 e_j (k_j + 1)} per slot, with the character leg evaluated at the
/// context torus point.  Non-summable diagonals are rejected.
template <class S>
HaarResult qtr(const QuasiTraceContext& qc, const TensorOp<S>& op) {
    const RepContext& ctx = qc.rep;
    if (op.n != ctx.slots()) throw Error("operator arity mismatch");
    std::vector<long> z;
    for (long x : qc.e) z.push_back(2 * x);

    HaarResult res;
    if constexpr (std::is_same_v<S, EdgeScalar>) {
        RatQ sum;
        for (const auto& t : op.terms) {
            if (!t.coeff.is_rational()) throw Error("irrational coefficient in a closed walk");
            RatQ prod = t.coeff.rational_part() *
                        qtrdetail::torus_character_exact(ctx.t, t.tor);
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
        res.has_exact = true;
        res.exact = qc.cw * sum;
        res.value = {res.exact.eval(ctx.par.q()), 0.0};
    } else {
        const double q = ctx.par.q();
        std::complex<double> sum{};
        double tail = 0.0;
        for (const auto& t : op.terms) {
            std::complex<double> prod =
                t.coeff * qtrdetail::torus_character_float(ctx.t, t.tor, q);
            double mag = std::abs(prod);
            double magtrunc = mag;
            for (size_t j = 0; j < op.n; ++j) {
                const auto& s = t.slots[j];
                std::complex<double> sj{};
                double tj = 0.0;
                if (s.geom) {
                    long w = z[j] + *s.geom;
                    if (w >= 0) throw NotSummable("weighted diagonal sum diverges");
                    double r = std::pow(q, double(w));
                    sj = r / (1.0 - r);
                } else {
                    // structural decay: diagonal entries lie in
                    // span{q^{-a k} : a >= slope_lo}; reject if the weighted
                    // ratio cannot be certified below one
                    double ratio = std::pow(q, double(z[j] - s.slope_lo));
                    if (!(ratio < 1.0)) throw NotSummable("weighted diagonal sum diverges");
                    int B = s.op.exact_band;
                    double cest = 0.0;
                    for (int k = 0; k < B; ++k) {
                        std::complex<double> d = s.op.at(k, k);
                        sj += std::pow(q, double(z[j]) * (k + 1)) * d;
                        cest = std::max(cest, std::abs(d) * std::pow(q, double(s.slope_lo) * k));
                    }
                    // estimate, not a certified bound: extrapolates the
                    // sampled diagonal magnitude at the structural decay rate
                    tj = cest * std::pow(q, double(z[j])) * std::pow(ratio, double(B)) /
                         (1.0 - ratio);
                    res.certified = false;
                }
                prod *= sj;
                mag *= std::abs(sj) + tj;
                magtrunc *= std::abs(sj);
            }
            sum += prod;
            tail += mag - magtrunc;
        }
        double pref = qc.cw.eval(q);
        res.value = pref * sum;
        res.tail = std::abs(pref) * tail;
    }
    return res;
}

/// chi_{q^nu}(c_{l,v}) = q^{(nu, mu_v)} <l, v> with nu = 2(w rho - rho).
inline RatQ covariance_character(const QuasiTraceContext& qc, const MatrixCoefficient& c) {
    RatQ pair = dot(c.l, c.v);
    if (pair.is_zero()) return RatQ(0);
    WKey mu = c.v_weight();
    Rational s = 0;
    const CartanDatum& cd = qc.rep.cd;
    for (int i = 0; i < cd.rank; ++i)
        for (int j = 0; j < cd.rank; ++j)
            s += Rational(qc.nu[size_t(i)]) * Rational(mu[size_t(j)]) *
                 cd.wp[size_t(i)][size_t(j)];
    if (s.get_den() != 1) throw Error("non-integral character exponent");
    return RatQ::q_pow(s.get_num().get_si()) * pair;
}

namespace qtrdetail {

inline const DualIso& dual_iso_cached(const std::shared_ptr<const UqModule>& M) {
    static std::map<std::shared_ptr<const UqModule>, DualIso> memo;
    auto it = memo.find(M);
    if (it == memo.end()) it = memo.emplace(M, dual_module_iso(*M)).first;
    return it->second;
}

}  // namespace qtrdetail

/// Adjoint action of a matrix coefficient on an operator:
/// c.L = sum_u pi(c_{l, e_u}) L pi(S(c_{delta_u, v})), with the antipode
/// realized on the dual module.
template <class S>
TensorOp<S> adjoint_action(const RepContext& ctx, const MatrixCoefficient& c,
                           const TensorOp<S>& L) {
    const auto& iso = qtrdetail::dual_iso_cached(c.M);
    auto N = std::make_shared<const UqModule>(iso.dual);
    const UqModule& M = *c.M;
    TensorOp<S> out;
    out.n = ctx.slots();
    out.rank = ctx.cd.rank;
    out.K = ctx.par.trunc;
    bool first = true;
    for (size_t u = 0; u < M.dim; ++u) {
        MatrixCoefficient left;
        left.M = c.M;
        left.l = c.l;
        left.v = Vec(M.dim);
        left.v[u] = RatQ(1);
        // S(c_{delta_u, v}) = c^{dual}_{v . theta^{-1}, theta e_u}
        MatrixCoefficient right;
        right.M = N;
        right.l = vec_mat(c.v, iso.theta_inv);
        right.v = Vec(N->dim);
        for (size_t r = 0; r < N->dim; ++r) right.v[r] = iso.theta[r][u];
        auto piece = evaluate_coefficient<S>(ctx, left) * L * evaluate_coefficient<S>(ctx, right);
        if (first) {
            out = std::move(piece);
            first = false;
        } else {
            out = out + piece;
        }
    }
    return out;
}

/// Residual report for the character covariance of the quasi-trace:
/// qtr(c.L) - chi_{q^{2(w rho - rho)}}(c) qtr(L).
struct CovarianceReport {
    HaarResult lhs;
    HaarResult rhs;
    RatQ chi;
    double residual = 0.0;
    bool exact_zero = false;
};

template <class S>
CovarianceReport covariance_check(const QuasiTraceContext& qc, const MatrixCoefficient& c,
                                  const TensorOp<S>& L) {
    CovarianceReport rep;
    rep.chi = covariance_character(qc, c);
    rep.lhs = qtr(qc, adjoint_action(qc.rep, c, L));
    rep.rhs = qtr(qc, L);
    if (rep.lhs.has_exact && rep.rhs.has_exact) {
        RatQ diff = rep.lhs.exact - rep.chi * rep.rhs.exact;
        rep.exact_zero = diff.is_zero();
        rep.residual = std::abs(diff.eval(qc.rep.par.q()));
    } else {
        double q = qc.rep.par.q();
        rep.residual = std::abs(rep.lhs.value - rep.chi.eval(q) * rep.rhs.value);
    }
    return rep;
}

/// Both sides of the tensor multiplicativity identity:
///   qtr_{ww'}( L J_{w, q^{2(w' rho - rho)}} tensor L' )
///     = const_{ww'} / (const_w const_{w'}) qtr_w(L) qtr_{w'}(L').
/// Returns {lhs, rhs} for exact comparison.
template <class S>
std::pair<HaarResult, HaarResult> qtr_multiplicativity(const QuasiTraceContext& A,
                                                       const QuasiTraceContext& B,
                                                       const TensorOp<S>& L,
                                                       const TensorOp<S>& Lp) {
    const CartanDatum& cd = A.rep.cd;
    auto C = make_qtrace_context(tensor_concat(A.rep, B.rep));
    auto J = j_operator<S>(A.rep, q_power_point(cd, B.nu));
    auto lhs = qtr(C, tensor_op_concat(L * J, Lp));
    auto a = qtr(A, L);
    auto b = qtr(B, Lp);
    HaarResult rhs;
    if (a.has_exact && b.has_exact) {
        rhs.has_exact = true;
        rhs.exact = C.cw / (A.cw * B.cw) * a.exact * b.exact;
        rhs.value = {rhs.exact.eval(A.rep.par.q()), 0.0};
    } else {
        double q = A.rep.par.q();
        double ratio = C.cw.eval(q) / (A.cw.eval(q) * B.cw.eval(q));
        rhs.value = ratio * a.value * b.value;
        rhs.tail = std::abs(ratio) * (std::abs(a.value) * b.tail + std::abs(b.value) * a.tail +
                                      a.tail * b.tail);
        rhs.certified = a.certified && b.certified;
    }
    return {lhs, rhs};
}

/// pi(a_{Lambda,w} a*_{Lambda,w}) as a diagonal operator with trivial
/// character leg (the torus monomials cancel).
template <class S>
TensorOp<S> balanced_extreme_square(const RepContext& ctx, const WKey& La) {
    return a_operator<S>(ctx, La) * a_operator<S>(ctx, La, true);
}

}  // namespace cqk
