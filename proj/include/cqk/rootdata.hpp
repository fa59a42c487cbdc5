#pragma once

#include <algorithm>
#include <complex>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "cqk/laurent.hpp"

namespace cqk {

/// Weight in fundamental-weight coordinates.
using WeightQ = std::vector<Rational>;
using WeightC = std::vector<std::complex<double>>;

/// Root in simple-root (root lattice) coordinates.
using RootZ = std::vector<long>;

/// Sequence of simple-reflection indices, 1-based: (i1,...,in) = s_{i1}...s_{in}.
using WeylWord = std::vector<int>;

namespace detail {

inline std::vector<std::vector<Rational>> invert_matrix(std::vector<std::vector<Rational>> m) {
    size_t n = m.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw Error("singular matrix");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rational p = m[col][col];
        for (size_t j = 0; j < n; ++j) {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

}  // namespace detail

/// Root datum of a finite-type simple Lie algebra: Cartan matrix a_ij with
/// K_i X_j K_i^{-1} = q_i^{a_ij} X_j convention, symmetrizers d_i
/// (d_i a_ij = d_j a_ji, short roots have squared length 2),
/// positive roots, and the fundamental-weight pairing table.
struct CartanDatum {
    std::string label;  // e.g. "A2", "B2"
    int rank = 0;
    std::vector<std::vector<long>> a;       // Cartan matrix
    std::vector<long> d;                    // symmetrizers
    std::vector<std::vector<Rational>> wp;  // wp[i][j] = (omega_i, omega_j)
    std::vector<RootZ> pos_roots;           // sorted by height, then lex

    bool operator==(const CartanDatum& o) const { return label == o.label; }

    /// alpha_i in fundamental-weight coordinates (column i of the Cartan matrix).
    WeightQ simple_root_weight(int i) const {
        auto w = WeightQ(size_t(rank));
        for (int j = 0; j < rank; ++j) w[size_t(j)] = a[size_t(j)][size_t(i - 1)];
        return w;
    }

    WeightQ rho() const { return WeightQ(size_t(rank), 1); }
};

inline CartanDatum build_cartan(char series, int rank) {
    CartanDatum cd;
    cd.label = std::string(1, series) + std::to_string(rank);
    cd.rank = rank;
    auto bad = [&] { throw Error("unsupported series/rank: " + cd.label); };
    int n = rank;
    if (n < 1) bad();
    auto chain = [&](int len) {
        cd.a.assign(size_t(len), std::vector<long>(size_t(len), 0));
        for (int i = 0; i < len; ++i) {
            cd.a[size_t(i)][size_t(i)] = 2;
            if (i + 1 < len) cd.a[size_t(i)][size_t(i + 1)] = cd.a[size_t(i + 1)][size_t(i)] = -1;
        }
    };
    switch (series) {
        case 'A':
            chain(n);
            cd.d.assign(size_t(n), 1);
            break;
        case 'B':
            if (n < 2) bad();
            chain(n);
            cd.a[size_t(n - 1)][size_t(n - 2)] = -2;  // alpha_n short
            cd.d.assign(size_t(n), 2);
            cd.d[size_t(n - 1)] = 1;
            break;
        case 'C':
            if (n < 2) bad();
            chain(n);
            cd.a[size_t(n - 2)][size_t(n - 1)] = -2;  // alpha_n long
            cd.d.assign(size_t(n), 1);
            cd.d[size_t(n - 1)] = 2;
            break;
        case 'D':
            // chain 1-2-...-(n-2) with both n-1 and n attached to n-2
            if (n < 3) bad();
            chain(n - 1);
            for (auto& row : cd.a) row.resize(size_t(n), 0);
            cd.a.emplace_back(size_t(n), 0);
            cd.a[size_t(n - 1)][size_t(n - 1)] = 2;
            cd.a[size_t(n - 1)][size_t(n - 3)] = cd.a[size_t(n - 3)][size_t(n - 1)] = -1;
            cd.d.assign(size_t(n), 1);
            break;
        case 'E': {
            if (n < 6 || n > 8) bad();
            // Bourbaki: chain 1-3-4-5-...-n, node 2 attached to node 4
            cd.a.assign(size_t(n), std::vector<long>(size_t(n), 0));
            for (int i = 0; i < n; ++i) cd.a[size_t(i)][size_t(i)] = 2;
            auto link = [&](int i, int j) {
                cd.a[size_t(i - 1)][size_t(j - 1)] = cd.a[size_t(j - 1)][size_t(i - 1)] = -1;
            };
            link(1, 3);
            link(3, 4);
            link(2, 4);
            for (int i = 4; i < n; ++i) link(i, i + 1);
            cd.d.assign(size_t(n), 1);
            break;
        }
        case 'F':
            if (n != 4) bad();
            chain(4);
            cd.a[size_t(2)][size_t(1)] = -2;  // alpha_3, alpha_4 short
            cd.d = {2, 2, 1, 1};
            break;
        case 'G':
            if (n != 2) bad();
            cd.a = {{2, -1}, {-3, 2}};
            cd.d = {3, 1};
            break;
        default:
            bad();
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (cd.d[size_t(i)] * cd.a[size_t(i)][size_t(j)] !=
                cd.d[size_t(j)] * cd.a[size_t(j)][size_t(i)])
                throw Error("Cartan matrix not symmetrizable: " + cd.label);

    // (omega_i, omega_j) = d_i * (A^{-1})_{ij}
    auto A = std::vector<std::vector<Rational>>(size_t(n), std::vector<Rational>(size_t(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A[size_t(i)][size_t(j)] = cd.a[size_t(i)][size_t(j)];
    auto inv = detail::invert_matrix(A);
    cd.wp.assign(size_t(n), std::vector<Rational>(size_t(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cd.wp[size_t(i)][size_t(j)] = cd.d[size_t(i)] * inv[size_t(i)][size_t(j)];

    // positive roots: closure of the simple roots under simple reflections
    std::set<RootZ> roots;
    for (int i = 0; i < n; ++i) {
        RootZ e(size_t(n), 0);
        e[size_t(i)] = 1;
        roots.insert(e);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<RootZ> cur(roots.begin(), roots.end());
        for (const auto& r : cur)
            for (int i = 1; i <= n; ++i) {
                RootZ s = r;
                long pair = 0;
                for (int m = 0; m < n; ++m) pair += cd.a[size_t(i - 1)][size_t(m)] * r[size_t(m)];
                s[size_t(i - 1)] -= pair;
                bool pos = std::all_of(s.begin(), s.end(), [](long c) { return c >= 0; });
                if (pos && roots.insert(s).second) grew = true;
            }
    }
    cd.pos_roots.assign(roots.begin(), roots.end());
    std::sort(cd.pos_roots.begin(), cd.pos_roots.end(), [](const RootZ& x, const RootZ& y) {
        long hx = std::accumulate(x.begin(), x.end(), 0L);
        long hy = std::accumulate(y.begin(), y.end(), 0L);
        if (hx != hy) return hx < hy;
        return x < y;
    });
    return cd;
}

inline CartanDatum build_cartan(const std::string& label) {
    if (label.size() < 2) throw Error("bad group label: " + label);
    int rank;
    try {
        rank = std::stoi(label.substr(1));
    } catch (...) {
        throw Error("bad group label: " + label);
    }
    return build_cartan(label[0], rank);
}

/// Invariant pairing of two weights in fundamental-weight coordinates.
template <class T>
T pairing(const CartanDatum& cd, const std::vector<T>& la, const std::vector<T>& mu) {
    if (la.size() != size_t(cd.rank) || mu.size() != size_t(cd.rank))
        throw Error("weight rank mismatch");
    T s{};
    for (int i = 0; i < cd.rank; ++i)
        for (int j = 0; j < cd.rank; ++j) {
            if constexpr (std::is_same_v<T, std::complex<double>>)
                s += la[size_t(i)] * mu[size_t(j)] * cd.wp[size_t(i)][size_t(j)].get_d();
            else
                s += la[size_t(i)] * mu[size_t(j)] * cd.wp[size_t(i)][size_t(j)];
        }
    return s;
}

/// (lambda, beta) for a weight in omega-coordinates and a root in alpha-coordinates:
/// (lambda, alpha_k) = d_k * lambda_k.
template <class T>
T pairing_root(const CartanDatum& cd, const std::vector<T>& la, const RootZ& beta) {
    if (la.size() != size_t(cd.rank) || beta.size() != size_t(cd.rank))
        throw Error("rank mismatch");
    T s{};
    for (int k = 0; k < cd.rank; ++k)
        s += la[size_t(k)] * T(cd.d[size_t(k)] * beta[size_t(k)]);
    return s;
}

/// (2 rho, beta) for a positive root beta in alpha-coordinates.
inline long two_rho_pair(const CartanDatum& cd, const RootZ& beta) {
    long s = 0;
    for (int k = 0; k < cd.rank; ++k) s += 2 * cd.d[size_t(k)] * beta[size_t(k)];
    return s;
}

/// <lambda, alpha_i^vee> = lambda_i for weights in omega-coordinates.
template <class T>
T coroot_pair(const std::vector<T>& la, int i) {
    return la[size_t(i - 1)];
}

/// s_i on weights in omega-coordinates: lambda - lambda_i * alpha_i.
template <class T>
void simple_reflect_weight(const CartanDatum& cd, int i, std::vector<T>& la) {
    T c = la[size_t(i - 1)];
    for (int j = 0; j < cd.rank; ++j)
        la[size_t(j)] -= c * T(cd.a[size_t(j)][size_t(i - 1)]);
}

/// s_i on the root lattice in alpha-coordinates.
inline void simple_reflect_root(const CartanDatum& cd, int i, RootZ& r) {
    long pair = 0;
    for (int m = 0; m < cd.rank; ++m) pair += cd.a[size_t(i - 1)][size_t(m)] * r[size_t(m)];
    r[size_t(i - 1)] -= pair;
}

/// s_k on the coroot lattice: s_k alpha_j^vee = alpha_j^vee - a_jk alpha_k^vee.
inline void simple_reflect_coroot(const CartanDatum& cd, int k, std::vector<long>& g) {
    long pair = 0;
    for (int j = 0; j < cd.rank; ++j) pair += cd.a[size_t(j)][size_t(k - 1)] * g[size_t(j)];
    g[size_t(k - 1)] -= pair;
}

/// Apply w = s_{i1}...s_{in} to a weight (rightmost reflection acts first).
template <class T>
std::vector<T> weyl_apply(const CartanDatum& cd, const WeylWord& w, std::vector<T> la) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) simple_reflect_weight(cd, *it, la);
    return la;
}

inline RootZ weyl_apply_root(const CartanDatum& cd, const WeylWord& w, RootZ r) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) simple_reflect_root(cd, *it, r);
    return r;
}

/// Action matrix of w on the weight lattice in the omega basis; columns are
/// w(omega_j).  Faithful, so it identifies the group element.
inline std::vector<std::vector<Rational>> weyl_matrix(const CartanDatum& cd, const WeylWord& w) {
    int n = cd.rank;
    std::vector<std::vector<Rational>> m(size_t(n), std::vector<Rational>(size_t(n), 0));
    for (int j = 0; j < n; ++j) {
        WeightQ e(size_t(n), 0);
        e[size_t(j)] = 1;
        e = weyl_apply(cd, w, e);
        for (int i = 0; i < n; ++i) m[size_t(i)][size_t(j)] = e[size_t(i)];
    }
    return m;
}

inline bool weyl_equal(const CartanDatum& cd, const WeylWord& u, const WeylWord& v) {
    return weyl_matrix(cd, u) == weyl_matrix(cd, v);
}

/// l(w) = #{beta in Delta_+ : w(beta) negative}.
inline int weyl_length(const CartanDatum& cd, const WeylWord& w) {
    int l = 0;
    for (const auto& beta : cd.pos_roots) {
        RootZ img = weyl_apply_root(cd, w, beta);
        if (std::any_of(img.begin(), img.end(), [](long c) { return c < 0; })) ++l;
    }
    return l;
}

inline bool is_reduced(const CartanDatum& cd, const WeylWord& w) {
    return int(w.size()) == weyl_length(cd, w);
}

/// Lexicographically least reduced word of the element represented by `word`:
/// repeatedly strip the smallest left descent.
inline WeylWord reduce_word(const CartanDatum& cd, const WeylWord& word) {
    for (int i : word)
        if (i < 1 || i > cd.rank) throw Error("reflection index out of range");
    WeylWord cur = word, out;
    int len = weyl_length(cd, cur);
    while (len > 0) {
        WeylWord inv(cur.rbegin(), cur.rend());
        int pick = 0;
        for (int i = 1; i <= cd.rank; ++i) {
            RootZ e(size_t(cd.rank), 0);
            e[size_t(i - 1)] = 1;
            RootZ img = weyl_apply_root(cd, inv, e);
            if (std::any_of(img.begin(), img.end(), [](long c) { return c < 0; })) {
                pick = i;
                break;
            }
        }
        if (!pick) throw Error("descent search failed");
        out.push_back(pick);
        cur.insert(cur.begin(), pick);  // s_pick * w, one shorter as an element
        --len;
    }
    return out;
}

/// Reduced word for the longest element, by greedy length ascent.
inline WeylWord longest_element(const CartanDatum& cd) {
    WeylWord w;
    for (;;) {
        int pick = 0;
        for (int i = 1; i <= cd.rank; ++i) {
            RootZ e(size_t(cd.rank), 0);
            e[size_t(i - 1)] = 1;
            RootZ img = weyl_apply_root(cd, w, e);
            if (std::all_of(img.begin(), img.end(), [](long c) { return c >= 0; })) {
                pick = i;
                break;
            }
        }
        if (!pick) return reduce_word(cd, w);
        w.push_back(pick);
    }
}

/// beta_j = w_j^{-1} alpha_{i_j} with w_j = s_{i_{j+1}}...s_{i_n}; for a reduced
/// word these are n distinct positive roots, and as a set Delta_+ ∩ w^{-1}Delta_-.
inline std::vector<RootZ> inversion_set(const CartanDatum& cd, const WeylWord& w) {
    if (!is_reduced(cd, w)) throw Error("inversion_set requires a reduced word");
    std::vector<RootZ> out;
    for (size_t j = 0; j < w.size(); ++j) {
        RootZ e(size_t(cd.rank), 0);
        e[size_t(w[j] - 1)] = 1;
        // w_j^{-1} = s_{i_n}...s_{i_{j+1}}: pass the suffix reversed
        WeylWord suffix_inv(w.rbegin(), w.rend() - long(j) - 1);
        out.push_back(weyl_apply_root(cd, suffix_inv, e));
    }
    return out;
}

/// Exponent matrix m with w^{-1} alpha_j^vee = sum_i m_ij alpha_i^vee,
/// so that (w(t))_j = prod_i t_i^{m_ij}.
inline std::vector<std::vector<long>> weyl_torus_exponents(const CartanDatum& cd,
                                                           const WeylWord& w) {
    int n = cd.rank;
    std::vector<std::vector<long>> m(size_t(n), std::vector<long>(size_t(n), 0));
    WeylWord inv(w.rbegin(), w.rend());
    for (int j = 0; j < n; ++j) {
        std::vector<long> g(size_t(n), 0);
        g[size_t(j)] = 1;
        for (auto it = inv.rbegin(); it != inv.rend(); ++it) simple_reflect_coroot(cd, *it, g);
        for (int i = 0; i < n; ++i) m[size_t(i)][size_t(j)] = g[size_t(i)];
    }
    return m;
}

}  // namespace cqk
