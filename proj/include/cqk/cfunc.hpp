#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "cqk/qtrace.hpp"

namespace cqk {

/// Harish-Chandra-type c-function query: a reduced word and a complex spectral
/// parameter lambda in fundamental-weight coordinates.  The operator side uses
/// i*lambda; convergence requires Im(lambda, beta) < 0 for every inversion
/// root beta of the word.
struct CFunctionQuery {
    CartanDatum cd;
    WeylWord word;
    WeightC lambda;
    QParams par;
};

/// Pairing (mu, beta) of an omega-coordinate weight with a root given in
/// simple-root coordinates: sum_j beta_j d_j mu_j.
template <class T>
T root_pairing(const CartanDatum& cd, const std::vector<T>& mu, const RootZ& beta) {
    if (mu.size() != size_t(cd.rank) || beta.size() != size_t(cd.rank))
        throw Error("rank mismatch in root pairing");
    T s{};
    for (int j = 0; j < cd.rank; ++j)
        s += T(beta[size_t(j)]) * T(cd.d[size_t(j)]) * mu[size_t(j)];
    return s;
}

inline std::string root_str(const RootZ& beta) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < beta.size(); ++i) os << (i ? "," : "") << beta[i];
    os << "]";
    return os.str();
}

/// Spectral parameter outside the open convergence cone; carries the first
/// inversion root violating Im(lambda, beta) < 0.
struct DomainError : Error {
    RootZ beta;
    explicit DomainError(RootZ b)
        : Error("spectral parameter outside the convergence domain at root " + root_str(b)),
          beta(std::move(b)) {}
};

/// Pole of the closed-form product; carries the root whose factor vanishes.
struct RootPoleError : PoleError {
    RootZ beta;
    explicit RootPoleError(RootZ b)
        : PoleError("c-function pole: q^{(i lambda, beta)} = 1 at root " + root_str(b)),
          beta(std::move(b)) {}
};

/// i * lambda, the weight entering the operator exponents.
inline WeightC spectral_shift(const WeightC& lambda) {
    WeightC il(lambda.size());
    for (size_t i = 0; i < lambda.size(); ++i)
        il[i] = std::complex<double>(0.0, 1.0) * lambda[i];
    return il;
}

/// Domain report: the inversion roots with Im(lambda, beta) >= 0, if any.
struct DomainReport {
    bool ok = true;
    std::vector<RootZ> failing;
};

inline DomainReport c_function_domain(const CartanDatum& cd, const WeylWord& w,
                                      const WeightC& lambda) {
    DomainReport rep;
    for (auto& beta : inversion_set(cd, w)) {
        auto p = root_pairing(cd, lambda, beta);
        if (!(p.imag() < 0.0)) {
            rep.ok = false;
            rep.failing.push_back(beta);
        }
    }
    return rep;
}

/// Diagonal spectral operator for an integral weight, taken at the trivial
/// torus point: entries prod_j q^{-(k_j+1) (w_j mu, alpha_{i_j})}.  Unlike the
/// extreme-coefficient operator this accepts non-dominant weights and carries
/// no character monomial.
template <class S>
TensorOp<S> d_operator_exact(const RepContext& ctx, const WKey& mu) {
    auto e = ctx.a_exponents(mu);
    TensorOp<S> out;
    out.n = ctx.slots();
    out.rank = ctx.cd.rank;
    out.K = ctx.par.trunc;
    TensorTerm<S> t;
    t.coeff = S(1);
    t.tor = torus_zero(size_t(out.rank));
    for (size_t j = 0; j < out.n; ++j) {
        RepSlot<S> s;
        s.op = ShiftOp<S>::zero(out.K);
        for (int k = 0; k < out.K; ++k)
            s.op.set(k, k, ScalarOps<S>::from_ratq(RatQ::q_pow(-(k + 1) * e[j]), ctx.par));
        s.op.exact_band = out.K;
        s.slope_lo = s.slope_hi = e[j];
        s.geom = -e[j];
        double g = e[j] >= 0 ? double(-e[j]) : double(-e[j]) * out.K;
        s.norm = std::pow(ctx.par.q(), g);
        t.slots.push_back(std::move(s));
    }
    out.terms.push_back(std::move(t));
    return out;
}

/// Diagonal spectral operator for a complex weight: entries
/// exp(-(k_j+1) (w_j mu, alpha_{i_j}) ln q), principal branch.
inline TensorOp<std::complex<double>> d_operator(const RepContext& ctx, const WeightC& mu) {
    auto e = suffix_exponents<std::complex<double>>(ctx.cd, ctx.word, mu);
    const double lq = std::log(ctx.par.q());
    TensorOp<std::complex<double>> out;
    out.n = ctx.slots();
    out.rank = ctx.cd.rank;
    out.K = ctx.par.trunc;
    TensorTerm<std::complex<double>> t;
    t.coeff = {1.0, 0.0};
    t.tor = torus_zero(size_t(out.rank));
    for (size_t j = 0; j < out.n; ++j) {
        RepSlot<std::complex<double>> s;
        s.op = ShiftOp<std::complex<double>>::zero(out.K);
        std::complex<double> x = std::exp(-lq * e[j]);
        std::complex<double> p = x;
        for (int k = 0; k < out.K; ++k) {
            s.op.set(k, k, p);
            p *= x;
        }
        s.op.exact_band = out.K;
        double ax = std::abs(x);
        s.norm = std::max(ax, std::pow(ax, double(out.K)));
        t.slots.push_back(std::move(s));
    }
    out.terms.push_back(std::move(t));
    return out;
}

/// c-function via the balanced trace of the shifted spectral operator
/// d_{i lambda + 2 rho}.  Exact mode requires i*lambda integral (closed-form
/// geometric sums); float mode sums the constructed diagonal against the
/// balancing weight with a rigorous geometric tail bound.  The spectral
/// parameter must lie in the open convergence cone.
inline HaarResult c_function_trace(const CFunctionQuery& qy) {
    qy.par.validate();
    auto roots = inversion_set(qy.cd, qy.word);
    WeightC il = spectral_shift(qy.lambda);
    for (auto& beta : roots)
        if (!(root_pairing(qy.cd, il, beta).real() > 0.0)) throw DomainError(beta);

    const size_t rank = size_t(qy.cd.rank);
    if (qy.par.mode == Mode::Exact) {
        WKey ik(rank);
        for (size_t i = 0; i < rank; ++i) {
            double re = il[i].real();
            long r = std::lround(re);
            if (std::abs(il[i].imag()) > 1e-9 || std::abs(re - double(r)) > 1e-9)
                throw Error("exact mode requires an integral i*lambda");
            ik[i] = r;
        }
        auto ctx = make_context(qy.cd, qy.word, TorusPoint::ones(rank), qy.par);
        auto qc = make_qtrace_context(std::move(ctx));
        WKey shifted = ik;
        for (auto& c : shifted) c += 2;  // + 2 rho
        return qtr(qc, d_operator_exact<EdgeScalar>(qc.rep, shifted));
    }

    auto ctx = make_context(qy.cd, qy.word, TorusPoint::ones(rank), qy.par);
    WeightC shifted = il;
    for (auto& c : shifted) c += 2.0;  // + 2 rho
    auto D = d_operator(ctx, shifted);
    auto zr = ctx.a_exponents(WKey(rank, 1));  // balancing exponents (rho, beta_j)
    auto eil = suffix_exponents<std::complex<double>>(qy.cd, qy.word, il);
    const double q = qy.par.q();
    const int K = qy.par.trunc;
    std::complex<double> prod{1.0, 0.0};
    double mag = 1.0, magtrunc = 1.0;
    for (size_t j = 0; j < D.n; ++j) {
        const auto& s = D.terms[0].slots[j];
        std::complex<double> sj{};
        for (int k = 0; k < K; ++k) sj += std::pow(q, double(2 * zr[j]) * (k + 1)) * s.op.at(k, k);
        // the weighted diagonal is exactly geometric with ratio q^{-(i lambda, beta_j)}
        double r = std::exp(-std::log(q) * eil[j].real());
        double tj = std::pow(r, double(K + 1)) / (1.0 - r);
        prod *= sj;
        mag *= std::abs(sj) + tj;
        magtrunc *= std::abs(sj);
    }
    HaarResult res;
    double cw = const_w(qy.cd, qy.word).eval(q);
    res.value = cw * prod;
    res.tail = std::abs(cw) * (mag - magtrunc);
    return res;
}

/// c-function as the closed-form product over the inversion roots:
/// prod_beta (q^{(2 rho, beta)} - 1) / (q^{(i lambda, beta)} - 1).
/// Defined by continuation wherever no factor has a pole.
inline HaarResult c_function_product(const CFunctionQuery& qy) {
    qy.par.validate();
    auto roots = inversion_set(qy.cd, qy.word);
    WeightC il = spectral_shift(qy.lambda);
    HaarResult res;
    if (qy.par.mode == Mode::Exact) {
        WKey ik(size_t(qy.cd.rank));
        for (size_t i = 0; i < ik.size(); ++i) {
            double re = il[i].real();
            long r = std::lround(re);
            if (std::abs(il[i].imag()) > 1e-9 || std::abs(re - double(r)) > 1e-9)
                throw Error("exact mode requires an integral i*lambda");
            ik[i] = r;
        }
        RatQ out(1);
        for (auto& beta : roots) {
            RatQ den = RatQ::q_pow(root_pairing<long>(qy.cd, ik, beta)) - RatQ(1);
            if (den.is_zero()) throw RootPoleError(beta);
            out *= (RatQ::q_pow(two_rho_pair(qy.cd, beta)) - RatQ(1)) / den;
        }
        res.has_exact = true;
        res.exact = out;
        res.value = {out.eval(qy.par.q()), 0.0};
        return res;
    }
    const double q = qy.par.q();
    const double lq = std::log(q);
    std::complex<double> out{1.0, 0.0};
    for (auto& beta : roots) {
        std::complex<double> den = std::exp(lq * root_pairing(qy.cd, il, beta)) - 1.0;
        if (std::abs(den) < 1e-12) throw RootPoleError(beta);
        out *= (std::pow(q, double(two_rho_pair(qy.cd, beta))) - 1.0) / den;
    }
    res.value = out;
    return res;
}

}  // namespace cqk
