#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "cqk/cqsu2.hpp"
#include "cqk/diagsum.hpp"
#include "cqk/rootdata.hpp"
#include "cqk/sl2nf.hpp"
#include "cqk/torus.hpp"
#include "cqk/uqmod.hpp"

namespace cqk {

/// The diagonal intertwiner can be read with the partial products of the word
/// taken from the left (prefixes) or from the right (suffixes).  The suffix
/// reading is the one under which the tensor-concatenation trace identity
/// holds exactly, so it is the default; the prefix reading is kept selectable.
enum class JConvention { SuffixWords, PrefixWords };
inline constexpr JConvention kJDefault = JConvention::SuffixWords;

/// A point of the real torus (S^1)^l: fully symbolic, numeric unit-modulus
/// coordinates, or coordinates of the form q^{e_i} (positive real, used by the
/// exact trace identities).
struct TorusPoint {
    enum class Kind { Symbolic, QPower, Numeric };
    Kind kind = Kind::Symbolic;
    std::vector<long> qexp;
    std::vector<std::complex<double>> num;

    static TorusPoint symbolic() { return {}; }
    static TorusPoint q_power(std::vector<long> e) {
        TorusPoint t;
        t.kind = Kind::QPower;
        t.qexp = std::move(e);
        return t;
    }
    static TorusPoint ones(size_t l) { return q_power(std::vector<long>(l, 0)); }
    static TorusPoint numeric(std::vector<std::complex<double>> v) {
        TorusPoint t;
        t.kind = Kind::Numeric;
        t.num = std::move(v);
        return t;
    }
};

/// e_j = (w_j mu, alpha_{i_j}) with w_j the suffix product s_{i_{j+1}}...s_{i_n}
/// of the word (so w_n = identity): the pairings of mu with the inversion roots
/// beta_j = s_{i_n}...s_{i_{j+1}} alpha_{i_j}.  Generic over the coordinate
/// scalar so complex spectral parameters reuse the same recursion.
template <class T>
std::vector<T> suffix_exponents(const CartanDatum& cd, const WeylWord& word,
                                std::vector<T> mu) {
    if (mu.size() != size_t(cd.rank)) throw Error("weight rank mismatch");
    size_t n = word.size();
    std::vector<T> e(n, T(0));
    for (size_t j = n; j-- > 0;) {
        size_t i = size_t(word[j] - 1);
        e[j] = T(cd.d[i]) * mu[i];
        T c = mu[i];
        for (int k = 0; k < cd.rank; ++k) mu[size_t(k)] -= c * T(cd.a[size_t(k)][i]);
    }
    return e;
}

/// Context for the representation attached to a reduced word and a torus
/// point: one deformed shift-operator slot per letter plus a character leg.
struct RepContext {
    CartanDatum cd;
    WeylWord word;
    TorusPoint t;
    QParams par;

    size_t slots() const { return word.size(); }

    /// e_j = (w_j Lambda, alpha_{i_j}) with w_j the suffix product
    /// s_{i_{j+1}} ... s_{i_n} (so w_n = identity).  These are the pairings of
    /// Lambda with the inversion roots of the word.
    std::vector<long> a_exponents(const WKey& La) const;

    /// Keyed by the owning pointer so cached chains can never outlive (or be
    /// confused with) the module they were computed for.
    const std::vector<Sl2Chain>& chains(const std::shared_ptr<const UqModule>& M,
                                        int node) const {
        auto key = std::make_pair(M, node);
        auto it = chains_.find(key);
        if (it == chains_.end()) it = chains_.emplace(key, sl2_decompose(*M, node)).first;
        return it->second;
    }

private:
    mutable std::map<std::pair<std::shared_ptr<const UqModule>, int>, std::vector<Sl2Chain>>
        chains_;
};

inline std::vector<long> RepContext::a_exponents(const WKey& La) const {
    return suffix_exponents<long>(cd, word, La);
}

inline RepContext make_context(const CartanDatum& cd, const WeylWord& word,
                               const TorusPoint& t, const QParams& par) {
    if (!is_reduced(cd, word)) throw Error("representation word must be reduced");
    par.validate();
    if (t.kind == TorusPoint::Kind::QPower && t.qexp.size() != size_t(cd.rank))
        throw Error("torus point rank mismatch");
    if (t.kind == TorusPoint::Kind::Numeric) {
        if (t.num.size() != size_t(cd.rank)) throw Error("torus point rank mismatch");
        for (auto& z : t.num)
            if (std::abs(std::abs(z) - 1.0) > 1e-12)
                throw Error("numeric torus coordinates must have modulus one");
    }
    RepContext ctx;
    ctx.cd = cd;
    ctx.word = word;
    ctx.t = t;
    ctx.par = par;
    return ctx;
}

/// One tensor slot: the operator plus certified structural metadata.
/// Diagonal entries of `op` lie in span{ q^{-a k} : slope_lo <= a <= slope_hi }
/// for k >= op.bandwidth, and `norm` bounds the operator sup-norm (at the
/// numeric q).  `geom` is set when the slot is exactly the scalar-free
/// geometric diagonal entry(k) = q^{geom (k+1)}.
template <class S>
struct RepSlot {
    ShiftOp<S> op;
    long slope_lo = 0;
    long slope_hi = 0;
    double norm = 0.0;
    std::optional<long> geom;

    RepSlot<S> operator*(const RepSlot<S>& o) const {
        RepSlot<S> out;
        out.op = op * o.op;
        out.slope_lo = slope_lo + o.slope_lo;
        out.slope_hi = slope_hi + o.slope_hi;
        out.norm = norm * o.norm;
        if (geom && o.geom) out.geom = *geom + *o.geom;
        return out;
    }
};

template <class S>
struct TensorTerm {
    std::vector<RepSlot<S>> slots;
    TorusExp tor;
    S coeff{};
};

/// Sum of pure tensors of slot operators, each carrying one symbolic torus
/// monomial; the character leg is always kept symbolic.
template <class S>
struct TensorOp {
    size_t n = 0;
    int rank = 0;
    int K = 0;
    std::vector<TensorTerm<S>> terms;

    static TensorOp identity(const RepContext& ctx) {
        TensorOp out;
        out.n = ctx.slots();
        out.rank = ctx.cd.rank;
        out.K = ctx.par.trunc;
        TensorTerm<S> t;
        t.tor = torus_zero(size_t(out.rank));
        t.coeff = S(1);
        for (size_t j = 0; j < out.n; ++j) {
            RepSlot<S> s;
            s.op = ShiftOp<S>::identity(out.K);
            s.norm = 1.0;
            s.geom = 0;
            t.slots.push_back(std::move(s));
        }
        out.terms.push_back(std::move(t));
        return out;
    }

    TensorOp operator*(const TensorOp& o) const {
        if (n != o.n || rank != o.rank || K != o.K) throw Error("tensor operator shape mismatch");
        TensorOp out;
        out.n = n;
        out.rank = rank;
        out.K = K;
        for (const auto& a : terms)
            for (const auto& b : o.terms) {
                TensorTerm<S> t;
                t.coeff = a.coeff * b.coeff;
                if (ScalarOps<S>::is_zero(t.coeff)) continue;
                t.tor = a.tor + b.tor;
                for (size_t j = 0; j < n; ++j) t.slots.push_back(a.slots[j] * b.slots[j]);
                out.terms.push_back(std::move(t));
            }
        return out;
    }
    TensorOp operator+(const TensorOp& o) const {
        if (n != o.n || rank != o.rank || K != o.K) throw Error("tensor operator shape mismatch");
        TensorOp out = *this;
        out.terms.insert(out.terms.end(), o.terms.begin(), o.terms.end());
        return out;
    }
    TensorOp scaled(const S& s) const {
        TensorOp out = *this;
        for (auto& t : out.terms) t.coeff = t.coeff * s;
        return out;
    }
    TensorOp adjoint() const {
        TensorOp out;
        out.n = n;
        out.rank = rank;
        out.K = K;
        for (const auto& a : terms) {
            TensorTerm<S> t;
            t.coeff = ScalarOps<S>::conj(a.coeff);
            t.tor = -a.tor;
            for (const auto& s : a.slots) {
                RepSlot<S> r = s;
                r.op = s.op.adjoint();
                t.slots.push_back(std::move(r));
            }
            out.terms.push_back(std::move(t));
        }
        return out;
    }
};

namespace repdetail {

/// Cached universal chain coefficients and their per-deformation blocks.
inline const NormalFormElem& chain_nf(long m, long k, long j) {
    static std::map<std::tuple<long, long, long>, NormalFormElem> memo;
    auto key = std::make_tuple(m, k, j);
    auto it = memo.find(key);
    if (it == memo.end()) {
        Vec l(size_t(m) + 1), v(size_t(m) + 1);
        l[size_t(k)] = RatQ(1);
        v[size_t(j)] = RatQ(1);
        it = memo.emplace(key, sl2_nf_coefficient(m, l, v)).first;
    }
    return it->second;
}

template <class S>
struct BlockCache {
    std::map<std::tuple<long, long, long, long>, std::pair<ShiftOp<S>, double>> blocks;

    const std::pair<ShiftOp<S>, double>& get(long m, long k, long j, long d,
                                             const QParams& par) {
        auto key = std::make_tuple(m, k, j, d);
        auto it = blocks.find(key);
        if (it == blocks.end()) {
            const NormalFormElem& nf = chain_nf(m, k, j);
            ShiftOp<S> op = pi_su2<S>(nf, par, d);
            double norm = 0.0;
            for (auto& [mo, c] : nf.terms()) {
                RatQ cd = d == 1 ? c : c.subst_pow(d);
                norm += std::abs(cd.eval(par.q()));
            }
            it = blocks.emplace(key, std::make_pair(std::move(op), norm)).first;
        }
        return it->second;
    }
};

template <class S>
BlockCache<S>& block_cache(const QParams& par) {
    // one cache per (q, truncation) signature
    static std::map<std::tuple<long, double, int>, BlockCache<S>> caches;
    long tag = par.mode == Mode::Exact ? 0 : 1;
    auto key = std::make_tuple(tag, par.q(), par.trunc);
    return caches[key];
}

/// pi of the restriction of the coefficient c_{l,v} of M to the rank-one
/// subalgebra at `node`, as a deformed shift operator.
template <class S>
RepSlot<S> slot_op(const RepContext& ctx, const std::shared_ptr<const UqModule>& Mp,
                   int node, const Vec& l, const Vec& v) {
    const UqModule& M = *Mp;
    const long d = M.cd.d[size_t(node - 1)];
    auto& cache = block_cache<S>(ctx.par);
    RepSlot<S> out;
    out.op = ShiftOp<S>::zero(ctx.par.trunc);
    for (const auto& ch : ctx.chains(Mp, node)) {
        std::vector<RatQ> lc, vc;
        bool lnz = false, vnz = false;
        for (long k = 0; k <= ch.m; ++k) {
            lc.push_back(dot(l, ch.vecs[size_t(k)]));
            vc.push_back(dot(ch.duals[size_t(k)], v));
            lnz = lnz || !lc.back().is_zero();
            vnz = vnz || !vc.back().is_zero();
        }
        if (!lnz || !vnz) continue;
        for (long k = 0; k <= ch.m; ++k) {
            if (lc[size_t(k)].is_zero()) continue;
            for (long j = 0; j <= ch.m; ++j) {
                if (vc[size_t(j)].is_zero()) continue;
                RatQ amb = lc[size_t(k)] * vc[size_t(j)];
                const auto& [blk, blknorm] = cache.get(ch.m, k, j, d, ctx.par);
                if (blk.e.empty()) continue;
                out.op = out.op + blk.scaled(ScalarOps<S>::from_ratq(amb, ctx.par));
                out.norm += std::abs(amb.eval(ctx.par.q())) * blknorm;
                out.slope_hi = std::max(out.slope_hi, 2 * d * ch.m);
            }
        }
    }
    return out;
}

inline TorusExp weight_torus(const WKey& mu) {
    TorusExp e;
    for (long x : mu) e.push_back(int(x));
    return e;
}

}  // namespace repdetail

/// pi_{w,t}(c^Lambda_{l,v}) as a sum of pure tensors over the iterated
/// coproduct chains through a fixed basis of the module; the character leg is
/// kept as a symbolic torus monomial.
template <class S>
TensorOp<S> evaluate_coefficient(const RepContext& ctx, const MatrixCoefficient& c) {
    const UqModule& M = *c.M;
    if (!(M.cd == ctx.cd)) throw Error("datum mismatch");
    size_t n = ctx.slots();
    TensorOp<S> out;
    out.n = n;
    out.rank = ctx.cd.rank;
    out.K = ctx.par.trunc;

    if (n == 0) {
        // pure character: group the pairing by weight
        std::map<WKey, RatQ> by_wt;
        for (size_t u = 0; u < M.dim; ++u) {
            RatQ p = c.l[u] * c.v[u];
            if (!p.is_zero()) by_wt[M.wt[u]] += p;
        }
        for (auto& [mu, val] : by_wt) {
            if (val.is_zero()) continue;
            TensorTerm<S> t;
            t.tor = repdetail::weight_torus(mu);
            t.coeff = ScalarOps<S>::from_ratq(val, ctx.par);
            out.terms.push_back(std::move(t));
        }
        return out;
    }

    // memoized slot operators: key (position, previous index or dim for c.l, index)
    std::map<std::tuple<size_t, size_t, size_t>, RepSlot<S>> memo;
    auto slot_for = [&](size_t j, size_t prev, size_t u) -> const RepSlot<S>& {
        auto key = std::make_tuple(j, prev, u);
        auto it = memo.find(key);
        if (it == memo.end()) {
            Vec lv;
            if (prev == M.dim) {
                lv = c.l;
            } else {
                lv = Vec(M.dim);
                lv[prev] = RatQ(1);
            }
            Vec vv(M.dim);
            vv[u] = RatQ(1);
            it = memo.emplace(key, repdetail::slot_op<S>(ctx, c.M, ctx.word[j], lv, vv)).first;
        }
        return it->second;
    };

    std::vector<RepSlot<S>> stack;
    std::vector<size_t> path;
    auto recurse = [&](auto&& self, size_t j, size_t prev) -> void {
        if (j == n) {
            if (c.v[prev].is_zero()) return;
            TensorTerm<S> t;
            t.slots = stack;
            t.tor = repdetail::weight_torus(M.wt[prev]);
            t.coeff = ScalarOps<S>::from_ratq(c.v[prev], ctx.par);
            out.terms.push_back(std::move(t));
            return;
        }
        for (size_t u = 0; u < M.dim; ++u) {
            const RepSlot<S>& s = slot_for(j, prev, u);
            if (s.op.e.empty()) continue;
            stack.push_back(s);
            self(self, j + 1, u);
            stack.pop_back();
        }
    };
    recurse(recurse, 0, M.dim);
    return out;
}

/// pi_{s_1,t} of an element of the rank-one coordinate algebra (monomials
/// grouped by the exponent of their character leg).
template <class S>
TensorOp<S> evaluate_su2_element(const RepContext& ctx, const NormalFormElem& a) {
    if (ctx.cd.rank != 1 || ctx.word != WeylWord{1})
        throw Error("rank-one evaluation needs the one-letter context");
    std::map<int, NormalFormElem> by_tor;
    for (auto& [mo, c] : a.terms()) {
        long e = (mo.fam == 1 ? mo.m : -mo.m) - mo.p + mo.r;
        by_tor[int(e)].add_term(mo, c);
    }
    TensorOp<S> out;
    out.n = 1;
    out.rank = 1;
    out.K = ctx.par.trunc;
    for (auto& [e, part] : by_tor) {
        TensorTerm<S> t;
        t.tor = TorusExp{e};
        t.coeff = S(1);
        RepSlot<S> s;
        s.op = pi_su2<S>(part, ctx.par, 1);
        s.slope_hi = 2 * part.degree();
        for (auto& [mo, c] : part.terms()) s.norm += std::abs(c.eval(ctx.par.q()));
        t.slots.push_back(std::move(s));
        out.terms.push_back(std::move(t));
    }
    return out;
}

/// The diagonal extreme-coefficient operator: entries
/// prod_j q^{-(k_j+1)(w_j Lambda, alpha_{i_j})} times the character monomial
/// t^{(Lambda, alpha^vee)}; `star` conjugates (negating the torus monomial).
template <class S>
TensorOp<S> a_operator(const RepContext& ctx, const WKey& La, bool star = false) {
    for (long x : La)
        if (x < 0) throw Error("a-operator weight must be dominant");
    auto e = ctx.a_exponents(La);
    TensorOp<S> out;
    out.n = ctx.slots();
    out.rank = ctx.cd.rank;
    out.K = ctx.par.trunc;
    TensorTerm<S> t;
    t.coeff = S(1);
    t.tor = repdetail::weight_torus(La);
    if (star) t.tor = -t.tor;
    for (size_t j = 0; j < out.n; ++j) {
        RepSlot<S> s;
        s.op = ShiftOp<S>::zero(out.K);
        for (int k = 0; k < out.K; ++k)
            s.op.set(k, k, ScalarOps<S>::from_ratq(RatQ::q_pow(-(k + 1) * e[j]), ctx.par));
        s.op.exact_band = out.K;
        s.slope_lo = s.slope_hi = e[j];
        s.norm = std::pow(ctx.par.q(), -double(e[j]));
        s.geom = -e[j];
        t.slots.push_back(std::move(s));
    }
    out.terms.push_back(std::move(t));
    return out;
}

/// Per-slot torus exponent vectors nu_j of the diagonal intertwiner:
/// entry multiplier prod_i t_i^{(k_j+1) nu_j[i]}.
inline std::vector<std::vector<long>> j_exponents(const RepContext& ctx,
                                                  JConvention conv = kJDefault) {
    size_t n = ctx.slots();
    int l = ctx.cd.rank;
    std::vector<std::vector<long>> nu(n, std::vector<long>(size_t(l), 0));
    for (size_t j = 0; j < n; ++j) {
        WeylWord wa, wb;  // partial products w_{j-1} and w_j
        if (conv == JConvention::PrefixWords) {
            wa = WeylWord(ctx.word.begin(), ctx.word.begin() + long(j));
            wb = WeylWord(ctx.word.begin(), ctx.word.begin() + long(j) + 1);
        } else {
            wa = WeylWord(ctx.word.begin() + long(j), ctx.word.end());
            wb = WeylWord(ctx.word.begin() + long(j) + 1, ctx.word.end());
        }
        auto ma = weyl_torus_exponents(ctx.cd, wa);
        auto mb = weyl_torus_exponents(ctx.cd, wb);
        size_t row = size_t(ctx.word[j] - 1);
        for (int i = 0; i < l; ++i)
            nu[j][size_t(i)] = ma[row][size_t(i)] - mb[row][size_t(i)];
    }
    return nu;
}

/// Materialized diagonal intertwiner at a concrete torus point.
template <class S>
TensorOp<S> j_operator(const RepContext& ctx, const TorusPoint& tp,
                       JConvention conv = kJDefault) {
    auto nu = j_exponents(ctx, conv);
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
        if (tp.kind == TorusPoint::Kind::QPower) {
            long z = 0;
            for (int i = 0; i < out.rank; ++i) z += nu[j][size_t(i)] * tp.qexp[size_t(i)];
            for (int k = 0; k < out.K; ++k)
                s.op.set(k, k, ScalarOps<S>::from_ratq(RatQ::q_pow((k + 1) * z), ctx.par));
            s.slope_lo = s.slope_hi = -z;
            s.geom = z;
            s.norm = std::pow(ctx.par.q(), double(std::max(z * long(out.K), z)));
        } else if (tp.kind == TorusPoint::Kind::Numeric) {
            if constexpr (std::is_same_v<S, std::complex<double>>) {
                std::complex<double> z{1.0, 0.0};
                for (int i = 0; i < out.rank; ++i)
                    z *= std::pow(tp.num[size_t(i)], double(nu[j][size_t(i)]));
                std::complex<double> p = z;
                for (int k = 0; k < out.K; ++k) {
                    s.op.set(k, k, p);
                    p *= z;
                }
                s.norm = 1.0;
            } else {
                throw Error("numeric torus point requires the floating-point scalar type");
            }
        } else {
            throw Error("symbolic torus point cannot be materialized");
        }
        s.op.exact_band = out.K;
        t.slots.push_back(std::move(s));
    }
    out.terms.push_back(std::move(t));
    return out;
}

/// Concatenation of two representation contexts: word w w' (lengths must
/// add), torus point (w')^{-1}(t) t'.
inline RepContext tensor_concat(const RepContext& A, const RepContext& B) {
    if (!(A.cd == B.cd)) throw Error("datum mismatch");
    if (A.par.mode != B.par.mode || A.par.trunc != B.par.trunc ||
        A.par.q() != B.par.q())
        throw Error("parameter mismatch");
    WeylWord w = A.word;
    w.insert(w.end(), B.word.begin(), B.word.end());
    if (!is_reduced(A.cd, w)) throw Error("word lengths are not additive");
    TorusPoint t;
    WeylWord binv(B.word.rbegin(), B.word.rend());
    auto m = weyl_torus_exponents(A.cd, binv);
    size_t l = size_t(A.cd.rank);
    if (A.t.kind == TorusPoint::Kind::Symbolic && B.t.kind == TorusPoint::Kind::Symbolic) {
        t = TorusPoint::symbolic();
    } else if (A.t.kind == TorusPoint::Kind::QPower && B.t.kind == TorusPoint::Kind::QPower) {
        std::vector<long> e(l, 0);
        for (size_t j = 0; j < l; ++j) {
            for (size_t i = 0; i < l; ++i) e[j] += m[i][j] * A.t.qexp[i];
            e[j] += B.t.qexp[j];
        }
        t = TorusPoint::q_power(std::move(e));
    } else if (A.t.kind == TorusPoint::Kind::Numeric &&
               B.t.kind == TorusPoint::Kind::Numeric) {
        std::vector<std::complex<double>> z(l, {1.0, 0.0});
        for (size_t j = 0; j < l; ++j) {
            for (size_t i = 0; i < l; ++i) z[j] *= std::pow(A.t.num[i], double(m[i][j]));
            z[j] *= B.t.num[j];
        }
        t = TorusPoint::numeric(std::move(z));
    } else {
        throw Error("unsupported torus point combination in concatenation");
    }
    return make_context(A.cd, w, t, A.par);
}

/// Tensor product of operators living on contexts whose words concatenate.
template <class S>
TensorOp<S> tensor_op_concat(const TensorOp<S>& A, const TensorOp<S>& B) {
    if (A.rank != B.rank || A.K != B.K) throw Error("tensor operator shape mismatch");
    TensorOp<S> out;
    out.n = A.n + B.n;
    out.rank = A.rank;
    out.K = A.K;
    for (const auto& a : A.terms)
        for (const auto& b : B.terms) {
            TensorTerm<S> t;
            t.coeff = a.coeff * b.coeff;
            if (ScalarOps<S>::is_zero(t.coeff)) continue;
            t.tor = a.tor + b.tor;
            t.slots = a.slots;
            t.slots.insert(t.slots.end(), b.slots.begin(), b.slots.end());
            out.terms.push_back(std::move(t));
        }
    return out;
}

/// Image of a basis vector e_{col} under the operator, as a sparse map from
/// (row multi-index, torus monomial) to scalar.  Used for exact entrywise
/// comparisons on certified bands.
template <class S>
std::map<std::pair<std::vector<int>, TorusExp>, S> apply_to_basis(
    const TensorOp<S>& op, const std::vector<int>& col) {
    if (col.size() != op.n) throw Error("multi-index arity mismatch");
    std::map<std::pair<std::vector<int>, TorusExp>, S> out;
    for (const auto& t : op.terms) {
        // per-slot sparse columns
        std::vector<std::vector<std::pair<int, S>>> cols(op.n);
        bool dead = false;
        for (size_t j = 0; j < op.n && !dead; ++j) {
            for (const auto& [rc, v] : t.slots[j].op.e)
                if (rc.second == col[j]) cols[j].push_back({rc.first, v});
            dead = cols[j].empty();
        }
        if (dead) continue;
        std::vector<size_t> pick(op.n, 0);
        while (true) {
            std::vector<int> row(op.n);
            S val = t.coeff;
            for (size_t j = 0; j < op.n; ++j) {
                row[j] = cols[j][pick[j]].first;
                val = val * cols[j][pick[j]].second;
            }
            auto key = std::make_pair(std::move(row), t.tor);
            auto it = out.find(key);
            if (it == out.end()) {
                if (!ScalarOps<S>::is_zero(val)) out.emplace(std::move(key), val);
            } else {
                it->second += val;
                if (ScalarOps<S>::is_zero(it->second)) out.erase(it);
            }
            size_t j = 0;
            while (j < op.n && ++pick[j] == cols[j].size()) pick[j++] = 0;
            if (j == op.n) break;
        }
    }
    return out;
}

/// Largest band on which every slot of every term is certified exact.
template <class S>
int certified_band(const TensorOp<S>& op) {
    int b = op.K;
    for (const auto& t : op.terms)
        for (const auto& s : t.slots) b = std::min(b, s.op.exact_band);
    return b;
}

}  // namespace cqk
