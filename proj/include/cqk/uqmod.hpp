#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "cqk/linalg.hpp"
#include "cqk/qcombi.hpp"
#include "cqk/rootdata.hpp"

namespace cqk {

/// [n] in q^d for n of either sign ([-n] = -[n]).
inline LaurentQ q_int_signed(long n, long d) {
    return n >= 0 ? q_int(n, d) : -q_int(-n, d);
}

/// Integral weight in fundamental-weight coordinates, used as a map key.
using WKey = std::vector<long>;

inline WKey wkey_of(const WeightQ& w) {
    WKey k;
    for (const Rational& c : w) {
        if (c.get_den() != 1) throw Error("non-integral weight");
        k.push_back(c.get_num().get_si());
    }
    return k;
}
inline WeightQ wkey_to_weight(const WKey& k) {
    WeightQ w;
    for (long c : k) w.emplace_back(c);
    return w;
}
inline WKey wkey_sub_root(const CartanDatum& cd, WKey mu, int i) {
    for (int j = 0; j < cd.rank; ++j) mu[size_t(j)] -= cd.a[size_t(j)][size_t(i - 1)];
    return mu;
}

namespace uqdetail {

/// Word (i1,...,ik) denotes F_{i1} F_{i2} ... F_{ik} applied to the
/// highest-weight vector.
using FWord = std::vector<int>;
using FVec = std::map<FWord, RatQ>;

/// Contravariant-form engine on the span of F-words, with the *-compatible
/// convention <F_i x, y> = <x, K_i^{-1} E_i y>, <v, v> = 1 at the top.
struct FormEngine {
    const CartanDatum& cd;
    WKey La;
    std::map<std::pair<int, FWord>, FVec> ememo;
    std::map<std::pair<FWord, FWord>, RatQ> fmemo;

    WKey weight(const FWord& w) const {
        WKey mu = La;
        for (int i : w) mu = wkey_sub_root(cd, std::move(mu), i);
        return mu;
    }

    const FVec& e_apply(int i, const FWord& w) {
        auto key = std::make_pair(i, w);
        auto it = ememo.find(key);
        if (it != ememo.end()) return it->second;
        FVec res;
        if (!w.empty()) {
            int j = w.front();
            FWord u(w.begin() + 1, w.end());
            for (auto& [t, c] : e_apply(i, u)) {
                FWord jt;
                jt.reserve(t.size() + 1);
                jt.push_back(j);
                jt.insert(jt.end(), t.begin(), t.end());
                auto jt_it = res.find(jt);
                if (jt_it == res.end())
                    res[jt] = c;
                else {
                    jt_it->second += c;
                    if (jt_it->second.is_zero()) res.erase(jt_it);
                }
            }
            if (i == j) {
                WKey mu = weight(u);
                RatQ coef(q_int_signed(mu[size_t(i - 1)], cd.d[size_t(i - 1)]));
                if (!coef.is_zero()) {
                    auto u_it = res.find(u);
                    if (u_it == res.end())
                        res[u] = coef;
                    else {
                        u_it->second += coef;
                        if (u_it->second.is_zero()) res.erase(u_it);
                    }
                }
            }
        }
        return ememo.emplace(std::move(key), std::move(res)).first->second;
    }

    RatQ form(const FWord& a, const FWord& b) {
        if (weight(a) != weight(b)) return RatQ(0);
        if (a.empty()) return RatQ(1);
        auto key = std::make_pair(a, b);
        auto it = fmemo.find(key);
        if (it != fmemo.end()) return it->second;
        int j = a.front();
        FWord u(a.begin() + 1, a.end());
        WKey nu = weight(u);
        RatQ s;
        for (auto& [t, c] : e_apply(j, b)) s += c * form(u, t);
        s *= RatQ::q_pow(-cd.d[size_t(j - 1)] * nu[size_t(j - 1)]);
        fmemo.emplace(std::move(key), s);
        return s;
    }

    RatQ form_vec(const FWord& a, const FVec& x) {
        RatQ s;
        for (auto& [t, c] : x) s += c * form(a, t);
        return s;
    }
};

}  // namespace uqdetail

/// Finite-dimensional type-1 module with explicit generator matrices over
/// rational functions of q.  K_i acts on a weight-mu vector by q^{d_i mu_i}.
struct UqModule {
    CartanDatum cd;
    WKey hw;
    size_t dim = 0;
    size_t hw_index = 0;
    std::vector<WKey> wt;
    std::vector<Mat> E, F;  // E[i-1], F[i-1] for node i, column-action matrices
    Mat gram;               // *-compatible contravariant form, hw norm 1
    std::map<WKey, std::vector<size_t>> by_weight;
    std::vector<uqdetail::FWord> words;  // construction words when built from F-words

    long k_exponent(size_t v, int i) const {
        return cd.d[size_t(i - 1)] * wt[v][size_t(i - 1)];
    }
    Mat k_matrix(int i, long sign = 1) const {
        Mat m = mat_zero(dim, dim);
        for (size_t v = 0; v < dim; ++v) m[v][v] = RatQ::q_pow(sign * k_exponent(v, i));
        return m;
    }
    std::vector<size_t> weight_space(const WKey& mu) const {
        auto it = by_weight.find(mu);
        return it == by_weight.end() ? std::vector<size_t>{} : it->second;
    }
};

inline UqModule build_irreducible(const CartanDatum& cd, const WKey& La) {
    if (La.size() != size_t(cd.rank)) throw Error("weight rank mismatch");
    for (long c : La)
        if (c < 0) throw Error("highest weight must be dominant");

    uqdetail::FormEngine eng{cd, La, {}, {}};
    UqModule M;
    M.cd = cd;
    M.hw = La;
    M.words = {{}};
    M.wt = {La};
    M.by_weight[La] = {0};
    M.hw_index = 0;

    std::vector<size_t> frontier = {0};
    long level_cap = 4096;
    while (!frontier.empty() && level_cap-- > 0) {
        // candidate words grouped by weight
        std::map<WKey, std::vector<uqdetail::FWord>> cands;
        for (size_t idx : frontier)
            for (int i = 1; i <= cd.rank; ++i) {
                uqdetail::FWord w;
                w.reserve(M.words[idx].size() + 1);
                w.push_back(i);
                w.insert(w.end(), M.words[idx].begin(), M.words[idx].end());
                cands[eng.weight(w)].push_back(std::move(w));
            }
        std::vector<size_t> next;
        for (auto& [mu, group] : cands) {
            std::vector<uqdetail::FWord> sel;
            Mat g;  // gram of selected
            for (auto& w : group) {
                // accept w iff it raises the rank of the form restricted to sel+w
                Mat trial = g;
                Vec newrow;
                for (auto& s : sel) newrow.push_back(eng.form(s, w));
                for (size_t r = 0; r < trial.size(); ++r) trial[r].push_back(newrow[r]);
                newrow.push_back(eng.form(w, w));
                trial.push_back(newrow);
                if (mat_rank(trial) > sel.size()) {
                    sel.push_back(w);
                    g = std::move(trial);
                }
            }
            for (auto& w : sel) {
                size_t idx = M.words.size();
                M.words.push_back(w);
                M.wt.push_back(mu);
                M.by_weight[mu].push_back(idx);
                next.push_back(idx);
            }
        }
        frontier = std::move(next);
    }
    if (level_cap <= 0) throw Error("module construction did not terminate");
    M.dim = M.words.size();

    // per-weight gram blocks and their inverses, for expressing vectors
    std::map<WKey, Mat> gram_inv;
    M.gram = mat_zero(M.dim, M.dim);
    for (auto& [mu, idxs] : M.by_weight) {
        Mat g = mat_zero(idxs.size(), idxs.size());
        for (size_t a = 0; a < idxs.size(); ++a)
            for (size_t b = 0; b < idxs.size(); ++b) {
                g[a][b] = eng.form(M.words[idxs[a]], M.words[idxs[b]]);
                M.gram[idxs[a]][idxs[b]] = g[a][b];
            }
        gram_inv[mu] = mat_inverse(g);
    }

    auto express = [&](const uqdetail::FVec& x, const WKey& mu, Vec& out) {
        auto it = M.by_weight.find(mu);
        if (it == M.by_weight.end()) return;
        const auto& idxs = it->second;
        Vec b;
        for (size_t k : idxs) b.push_back(eng.form_vec(M.words[k], x));
        Vec c = mat_vec(gram_inv[mu], b);
        for (size_t k = 0; k < idxs.size(); ++k) out[idxs[k]] = c[k];
    };

    M.E.assign(size_t(cd.rank), mat_zero(M.dim, M.dim));
    M.F.assign(size_t(cd.rank), mat_zero(M.dim, M.dim));
    for (size_t j = 0; j < M.dim; ++j)
        for (int i = 1; i <= cd.rank; ++i) {
            uqdetail::FWord fw;
            fw.push_back(i);
            fw.insert(fw.end(), M.words[j].begin(), M.words[j].end());
            uqdetail::FVec fx = {{fw, RatQ(1)}};
            Vec fcol(M.dim);
            express(fx, wkey_sub_root(cd, M.wt[j], i), fcol);
            for (size_t r = 0; r < M.dim; ++r) M.F[size_t(i - 1)][r][j] = fcol[r];

            WKey up = M.wt[j];
            for (int k = 0; k < cd.rank; ++k) up[size_t(k)] += cd.a[size_t(k)][size_t(i - 1)];
            Vec ecol(M.dim);
            express(eng.e_apply(i, M.words[j]), up, ecol);
            for (size_t r = 0; r < M.dim; ++r) M.E[size_t(i - 1)][r][j] = ecol[r];
        }
    return M;
}

inline UqModule build_fundamental(const CartanDatum& cd, int i) {
    if (i < 1 || i > cd.rank) throw Error("fundamental weight index out of range");
    WKey La(size_t(cd.rank), 0);
    La[size_t(i - 1)] = 1;
    return build_irreducible(cd, La);
}

inline UqModule tensor_module(const UqModule& A, const UqModule& B) {
    if (!(A.cd == B.cd)) throw Error("datum mismatch");
    const CartanDatum& cd = A.cd;
    UqModule M;
    M.cd = cd;
    M.dim = A.dim * B.dim;
    auto flat = [&](size_t u, size_t v) { return u * B.dim + v; };
    M.wt.resize(M.dim);
    for (size_t u = 0; u < A.dim; ++u)
        for (size_t v = 0; v < B.dim; ++v) {
            WKey mu = A.wt[u];
            for (int k = 0; k < cd.rank; ++k) mu[size_t(k)] += B.wt[v][size_t(k)];
            M.wt[flat(u, v)] = mu;
            M.by_weight[mu].push_back(flat(u, v));
        }
    M.hw.assign(size_t(cd.rank), 0);
    for (int k = 0; k < cd.rank; ++k)
        M.hw[size_t(k)] = A.hw[size_t(k)] + B.hw[size_t(k)];
    M.hw_index = flat(A.hw_index, B.hw_index);

    // Delta(E_i) = E_i ⊗ K_i + 1 ⊗ E_i ; Delta(F_i) = F_i ⊗ 1 + K_i^{-1} ⊗ F_i
    M.E.assign(size_t(cd.rank), mat_zero(M.dim, M.dim));
    M.F.assign(size_t(cd.rank), mat_zero(M.dim, M.dim));
    for (int i = 1; i <= cd.rank; ++i) {
        const Mat& Ea = A.E[size_t(i - 1)];
        const Mat& Fa = A.F[size_t(i - 1)];
        const Mat& Eb = B.E[size_t(i - 1)];
        const Mat& Fb = B.F[size_t(i - 1)];
        Mat& Em = M.E[size_t(i - 1)];
        Mat& Fm = M.F[size_t(i - 1)];
        for (size_t u = 0; u < A.dim; ++u)
            for (size_t v = 0; v < B.dim; ++v) {
                size_t col = flat(u, v);
                RatQ kb = RatQ::q_pow(B.k_exponent(v, i));
                for (size_t r = 0; r < A.dim; ++r)
                    if (!Ea[r][u].is_zero()) Em[flat(r, v)][col] += Ea[r][u] * kb;
                for (size_t r = 0; r < B.dim; ++r)
                    if (!Eb[r][v].is_zero()) Em[flat(u, r)][col] += Eb[r][v];
                RatQ kainv = RatQ::q_pow(-A.k_exponent(u, i));
                for (size_t r = 0; r < A.dim; ++r)
                    if (!Fa[r][u].is_zero()) Fm[flat(r, v)][col] += Fa[r][u];
                for (size_t r = 0; r < B.dim; ++r)
                    if (!Fb[r][v].is_zero()) Fm[flat(u, r)][col] += kainv * Fb[r][v];
            }
    }
    M.gram = mat_zero(M.dim, M.dim);
    for (size_t u = 0; u < A.dim; ++u)
        for (size_t u2 = 0; u2 < A.dim; ++u2) {
            if (A.gram[u][u2].is_zero()) continue;
            for (size_t v = 0; v < B.dim; ++v)
                for (size_t v2 = 0; v2 < B.dim; ++v2) {
                    if (B.gram[v][v2].is_zero()) continue;
                    M.gram[flat(u, v)][flat(u2, v2)] = A.gram[u][u2] * B.gram[v][v2];
                }
        }
    return M;
}

/// Weight-homogeneous singular vectors (killed by every E_i) of weight mu,
/// Gram-orthogonalized in basis order.
inline std::vector<Vec> singular_vectors(const UqModule& M, const WKey& mu) {
    auto idxs = M.weight_space(mu);
    if (idxs.empty()) return {};
    Mat rows;
    for (int i = 1; i <= M.cd.rank; ++i)
        for (size_t r = 0; r < M.dim; ++r) {
            Vec row;
            bool nz = false;
            for (size_t c : idxs) {
                row.push_back(M.E[size_t(i - 1)][r][c]);
                nz = nz || !row.back().is_zero();
            }
            if (nz) rows.push_back(std::move(row));
        }
    std::vector<Vec> out;
    std::vector<Vec> small = rows.empty() ? [&] {
        std::vector<Vec> all;
        for (size_t k = 0; k < idxs.size(); ++k) {
            Vec e(idxs.size());
            e[k] = RatQ(1);
            all.push_back(std::move(e));
        }
        return all;
    }()
                                          : mat_kernel(rows);
    // lift to ambient coordinates
    for (auto& s : small) {
        Vec v(M.dim);
        for (size_t k = 0; k < idxs.size(); ++k) v[idxs[k]] = s[k];
        out.push_back(std::move(v));
    }
    // Gram-Schmidt against the invariant form (no normalization)
    for (size_t a = 0; a < out.size(); ++a)
        for (size_t b = 0; b < a; ++b) {
            RatQ nb = dot(out[b], mat_vec(M.gram, out[b]));
            if (nb.is_zero()) continue;
            RatQ pr = dot(out[b], mat_vec(M.gram, out[a])) / nb;
            for (size_t k = 0; k < M.dim; ++k) out[a][k] -= pr * out[b][k];
        }
    return out;
}

inline UqModule highest_weight_submodule(const UqModule& M, const WKey& La) {
    auto sing = singular_vectors(M, La);
    if (sing.empty()) throw Error("no singular vector of the requested weight");
    Vec v0 = sing.front();

    // F-closure with an exact independence filter
    std::vector<Vec> basis = {v0};
    std::vector<WKey> wts = {La};
    Mat echelon = {v0};
    rref(echelon);
    size_t head = 0;
    while (head < basis.size()) {
        for (int i = 1; i <= M.cd.rank; ++i) {
            Vec u = mat_vec(M.F[size_t(i - 1)], basis[head]);
            bool zero = true;
            for (auto& x : u) zero = zero && x.is_zero();
            if (zero) continue;
            Mat test = echelon;
            test.push_back(u);
            if (mat_rank(test) > echelon.size()) {
                echelon.push_back(u);
                rref(echelon);
                basis.push_back(u);
                wts.push_back(wkey_sub_root(M.cd, wts[head], i));
            }
        }
        ++head;
    }

    UqModule S;
    S.cd = M.cd;
    S.hw = La;
    S.dim = basis.size();
    S.hw_index = 0;
    S.wt = wts;
    for (size_t k = 0; k < S.dim; ++k) S.by_weight[wts[k]].push_back(k);

    // columns of B are the basis vectors in ambient coordinates
    Mat B = mat_zero(M.dim, S.dim);
    for (size_t k = 0; k < S.dim; ++k)
        for (size_t r = 0; r < M.dim; ++r) B[r][k] = basis[k][r];
    // solve B X = A B for each generator action A
    auto restrict_action = [&](const Mat& A) {
        Mat rhs = mat_mul(A, B);
        Mat aug = B;
        for (size_t r = 0; r < M.dim; ++r)
            for (size_t c = 0; c < S.dim; ++c) aug[r].push_back(rhs[r][c]);
        auto pivots = rref(aug);
        if (pivots.size() != S.dim)
            throw Error("submodule not closed under the algebra action");
        for (size_t c : pivots)
            if (c >= S.dim) throw Error("submodule not closed under the algebra action");
        Mat X = mat_zero(S.dim, S.dim);
        for (size_t r = 0; r < S.dim; ++r)
            for (size_t c = 0; c < S.dim; ++c) X[r][c] = aug[r][S.dim + c];
        return X;
    };
    for (int i = 1; i <= M.cd.rank; ++i) {
        S.E.push_back(restrict_action(M.E[size_t(i - 1)]));
        S.F.push_back(restrict_action(M.F[size_t(i - 1)]));
    }
    // induced form, rescaled so the highest-weight vector has norm 1
    Mat G = mat_mul(mat_transpose(B), mat_mul(M.gram, B));
    RatQ n0 = G[0][0];
    if (n0.is_zero()) throw Error("degenerate induced form");
    S.gram = mat_zero(S.dim, S.dim);
    for (size_t r = 0; r < S.dim; ++r)
        for (size_t c = 0; c < S.dim; ++c) S.gram[r][c] = G[r][c] / n0;
    return S;
}

enum class BraidConvention {
    QAcMinusB,  // coefficient q_i^{ac-b}
    QBMinusAc,  // coefficient q_i^{b-ac}
};
inline constexpr BraidConvention kBraidDefault = BraidConvention::QBMinusAc;

/// Quantum Weyl group operator T_i: on a weight-mu vector, the sum over
/// a - b + c = -<mu, alpha_i^vee> of (-1)^b q_i^{±(ac-b)} E^{(a)} F^{(b)} E^{(c)}.
inline Mat braid_generator(const UqModule& M, int i,
                           BraidConvention conv = kBraidDefault) {
    const long d = M.cd.d[size_t(i - 1)];
    const Mat& E = M.E[size_t(i - 1)];
    const Mat& F = M.F[size_t(i - 1)];
    Mat T = mat_zero(M.dim, M.dim);
    for (size_t j = 0; j < M.dim; ++j) {
        long n = -M.wt[j][size_t(i - 1)];  // required a - b + c
        Vec v(M.dim);
        v[j] = RatQ(1);
        Vec ec = v;  // E^{(c)} v
        for (long c = 0;; ++c) {
            if (c > 0) {
                ec = mat_vec(E, ec);
                RatQ fact(q_int(c, d));
                bool zero = true;
                for (auto& x : ec) {
                    x = x / fact;
                    zero = zero && x.is_zero();
                }
                if (zero) break;
            }
            Vec fb = ec;  // F^{(b)} E^{(c)} v
            for (long b = 0;; ++b) {
                if (b > 0) {
                    fb = mat_vec(F, fb);
                    RatQ fact(q_int(b, d));
                    bool zero = true;
                    for (auto& x : fb) {
                        x = x / fact;
                        zero = zero && x.is_zero();
                    }
                    if (zero) break;
                }
                long a = n + b - c;
                if (a >= 0) {
                    Vec ea = fb;
                    bool zero = false;
                    for (long s = 1; s <= a; ++s) {
                        ea = mat_vec(E, ea);
                        RatQ fact(q_int(s, d));
                        zero = true;
                        for (auto& x : ea) {
                            x = x / fact;
                            zero = zero && x.is_zero();
                        }
                        if (zero) break;
                    }
                    if (!zero || a == 0) {
                        long expo = a * c - b;
                        if (conv == BraidConvention::QBMinusAc) expo = -expo;
                        RatQ coef = RatQ::q_pow(d * expo);
                        if (b % 2) coef = -coef;
                        for (size_t r = 0; r < M.dim; ++r) T[r][j] += coef * ea[r];
                    }
                }
            }
        }
    }
    return T;
}

inline Mat braid_apply(const UqModule& M, const WeylWord& w,
                       BraidConvention conv = kBraidDefault) {
    WeylWord red = reduce_word(M.cd, w);
    Mat T = mat_identity(M.dim);
    for (int i : red) T = mat_mul(T, braid_generator(M, i, conv));
    return T;
}

/// Irreducible U_{q_i}-chain inside a module: vecs[k] = F_i^{(k)} (top),
/// duals[k] the Gram-dual rows (duals[k] . vecs[j] = delta_{kj}, vanishing on
/// every other chain).
struct Sl2Chain {
    int node = 0;
    long m = 0;
    std::vector<Vec> vecs;
    std::vector<Vec> duals;
};

inline std::vector<Sl2Chain> sl2_decompose(const UqModule& M, int i) {
    const long d = M.cd.d[size_t(i - 1)];
    std::vector<Sl2Chain> chains;
    for (auto& [mu, idxs] : M.by_weight) {
        // kernel of E_i restricted to this weight space
        Mat rows;
        for (size_t r = 0; r < M.dim; ++r) {
            Vec row;
            bool nz = false;
            for (size_t c : idxs) {
                row.push_back(M.E[size_t(i - 1)][r][c]);
                nz = nz || !row.back().is_zero();
            }
            if (nz) rows.push_back(std::move(row));
        }
        std::vector<Vec> tops;
        if (rows.empty()) {
            for (size_t k = 0; k < idxs.size(); ++k) {
                Vec e(idxs.size());
                e[k] = RatQ(1);
                tops.push_back(std::move(e));
            }
        } else {
            tops = mat_kernel(rows);
        }
        // lift and orthogonalize
        std::vector<Vec> lifted;
        for (auto& s : tops) {
            Vec v(M.dim);
            for (size_t k = 0; k < idxs.size(); ++k) v[idxs[k]] = s[k];
            lifted.push_back(std::move(v));
        }
        for (size_t a = 0; a < lifted.size(); ++a)
            for (size_t b = 0; b < a; ++b) {
                RatQ nb = dot(lifted[b], mat_vec(M.gram, lifted[b]));
                if (nb.is_zero()) continue;
                RatQ pr = dot(lifted[b], mat_vec(M.gram, lifted[a])) / nb;
                for (size_t k = 0; k < M.dim; ++k) lifted[a][k] -= pr * lifted[b][k];
            }
        for (auto& top : lifted) {
            Sl2Chain ch;
            ch.node = i;
            ch.vecs.push_back(top);
            for (long k = 1;; ++k) {
                Vec next = mat_vec(M.F[size_t(i - 1)], ch.vecs.back());
                RatQ fact(q_int(k, d));
                bool zero = true;
                for (auto& x : next) {
                    x = x / fact;
                    zero = zero && x.is_zero();
                }
                if (zero) break;
                ch.vecs.push_back(std::move(next));
            }
            ch.m = long(ch.vecs.size()) - 1;
            for (auto& v : ch.vecs) {
                Vec gv = mat_vec(M.gram, v);
                RatQ nn = dot(v, gv);
                if (nn.is_zero()) throw Error("degenerate chain vector");
                for (auto& x : gv) x = x / nn;
                ch.duals.push_back(std::move(gv));
            }
            chains.push_back(std::move(ch));
        }
    }
    size_t total = 0;
    for (auto& ch : chains) total += size_t(ch.m + 1);
    if (total != M.dim) throw Error("chain decomposition does not partition the module");
    return chains;
}

/// The dual module realized as L(-w0 Λ) together with the exact basis change:
/// theta maps coordinate-dual covector coordinates on M to coordinates of
/// `dual`; theta_inv is its inverse.
struct DualIso {
    UqModule dual;
    Mat theta;
    Mat theta_inv;
};

inline DualIso dual_module_iso(const UqModule& M) {
    const CartanDatum& cd = M.cd;
    // dual action: x . l = l ∘ S(x);  S(E_i) = -E_i K_i^{-1}, S(F_i) = -K_i F_i
    std::vector<Mat> dE, dF;
    for (int i = 1; i <= cd.rank; ++i) {
        Mat se = mat_mul(M.E[size_t(i - 1)], M.k_matrix(i, -1));
        Mat sf = mat_mul(M.k_matrix(i, 1), M.F[size_t(i - 1)]);
        for (auto& row : se)
            for (auto& x : row) x = -x;
        for (auto& row : sf)
            for (auto& x : row) x = -x;
        dE.push_back(mat_transpose(se));
        dF.push_back(mat_transpose(sf));
    }
    WeylWord w0 = longest_element(cd);
    WeightQ mw0 = weyl_apply(cd, w0, wkey_to_weight(M.hw));
    WKey hwdual;
    for (auto& c : mw0) hwdual.push_back(-c.get_num().get_si());

    UqModule N = build_irreducible(cd, hwdual);

    // singular covector of the dual action at weight -w0 Λ
    std::vector<size_t> cand;
    for (size_t k = 0; k < M.dim; ++k) {
        WKey neg;
        for (long c : M.wt[k]) neg.push_back(-c);
        if (neg == hwdual) cand.push_back(k);
    }
    Mat rows;
    for (int i = 0; i < cd.rank; ++i)
        for (size_t r = 0; r < M.dim; ++r) {
            Vec row;
            bool nz = false;
            for (size_t c : cand) {
                row.push_back(dE[size_t(i)][r][c]);
                nz = nz || !row.back().is_zero();
            }
            if (nz) rows.push_back(std::move(row));
        }
    std::vector<Vec> kern =
        rows.empty() ? std::vector<Vec>{Vec{RatQ(1)}} : mat_kernel(rows);
    if (kern.empty()) throw Error("dual module has no singular covector");
    Vec l0(M.dim);
    for (size_t k = 0; k < cand.size(); ++k) l0[cand[k]] = kern.front()[k];

    // intertwiner: follow N's construction words through the dual action
    Mat A = mat_zero(M.dim, N.dim);
    for (size_t j = 0; j < N.dim; ++j) {
        // basis vector j of N is exactly F_{words[j]} applied to its top
        // vector, so the intertwiner sends it to the same word applied to l0
        Vec v = l0;
        const auto& word = N.words[j];
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            v = mat_vec(dF[size_t(*it - 1)], v);
        for (size_t r = 0; r < M.dim; ++r) A[r][j] = v[r];
    }
    DualIso out;
    out.theta_inv = A;
    out.theta = mat_inverse(A);
    out.dual = std::move(N);
    return out;
}

/// Matrix coefficient c^Λ_{l,v}: l a covector in coordinate-dual coordinates,
/// v a vector, both weight-homogeneous.
struct MatrixCoefficient {
    std::shared_ptr<const UqModule> M;
    Vec l;
    Vec v;

    WKey l_weight() const { return support_weight(l); }
    WKey v_weight() const { return support_weight(v); }

private:
    WKey support_weight(const Vec& x) const {
        const WKey* found = nullptr;
        for (size_t k = 0; k < x.size(); ++k) {
            if (x[k].is_zero()) continue;
            if (!found)
                found = &M->wt[k];
            else if (*found != M->wt[k])
                throw Error("coefficient datum is not weight-homogeneous");
        }
        if (!found) throw Error("zero coefficient datum");
        return *found;
    }
};

/// a_{Λ,w} = c^Λ_{l, v_Λ} with l supported on the 1-dimensional weight space
/// wΛ, normalized by <l, T_w v_Λ> = 1.
inline MatrixCoefficient a_coefficient(std::shared_ptr<const UqModule> M,
                                       const WeylWord& w,
                                       BraidConvention conv = kBraidDefault) {
    Mat Tw = braid_apply(*M, w, conv);
    Vec u(M->dim);
    for (size_t r = 0; r < M->dim; ++r) u[r] = Tw[r][M->hw_index];
    size_t support = M->dim;
    for (size_t r = 0; r < M->dim; ++r)
        if (!u[r].is_zero()) {
            if (support != M->dim) throw Error("extreme weight space not one-dimensional");
            support = r;
        }
    if (support == M->dim) throw Error("braid image of the highest-weight vector vanished");
    MatrixCoefficient c;
    c.M = std::move(M);
    c.l = Vec(c.M->dim);
    c.l[support] = RatQ(1) / u[support];
    c.v = Vec(c.M->dim);
    c.v[c.M->hw_index] = RatQ(1);
    return c;
}

/// <l, x v> for x a word in the generators, for tests and duality checks.
enum class UqGen { E, F, K, Kinv };
inline RatQ evaluate_uq_word(const UqModule& M, const std::vector<std::pair<UqGen, int>>& word,
                             const Vec& l, const Vec& v) {
    Vec cur = v;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        auto [g, i] = *it;
        switch (g) {
            case UqGen::E: cur = mat_vec(M.E[size_t(i - 1)], cur); break;
            case UqGen::F: cur = mat_vec(M.F[size_t(i - 1)], cur); break;
            case UqGen::K: cur = mat_vec(M.k_matrix(i, 1), cur); break;
            case UqGen::Kinv: cur = mat_vec(M.k_matrix(i, -1), cur); break;
        }
    }
    return dot(l, cur);
}

}  // namespace cqk
