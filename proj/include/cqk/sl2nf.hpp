#pragma once

#include <map>

#include "cqk/cqsu2.hpp"
#include "cqk/uqmod.hpp"

namespace cqk {

namespace sl2detail {

/// Model data for the (m+1)-dimensional rank-one chain realized inside the
/// m-fold tensor power of the two-dimensional module: the divided-power chain
/// basis and its coordinate-dual rows.
struct ChainModel {
    UqModule V;
    std::vector<Vec> basis;
    std::vector<Vec> duals;
};

inline const ChainModel& chain_model(long m) {
    static std::map<long, ChainModel> memo;
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    auto a1 = build_cartan('A', 1);
    UqModule L1 = build_fundamental(a1, 1);
    ChainModel cm;
    cm.V = L1;
    for (long s = 1; s < m; ++s) cm.V = tensor_module(cm.V, L1);
    Vec t(cm.V.dim);
    t[cm.V.hw_index] = RatQ(1);
    cm.basis.push_back(t);
    for (long k = 1; k <= m; ++k) {
        t = mat_vec(cm.V.F[0], cm.basis.back());
        RatQ fact(q_int(k, 1));
        for (auto& x : t) x = x / fact;
        cm.basis.push_back(t);
    }
    for (const auto& b : cm.basis) {
        Vec gv = mat_vec(cm.V.gram, b);
        RatQ nn = dot(b, gv);
        if (nn.is_zero()) throw Error("degenerate chain model vector");
        for (auto& x : gv) x = x / nn;
        cm.duals.push_back(std::move(gv));
    }
    return memo.emplace(m, std::move(cm)).first->second;
}

}  // namespace sl2detail

/// Matrix coefficient of the irreducible rank-one chain of length m, expressed
/// in the coordinate algebra. `l` holds covector coordinates dual to the
/// divided-power chain basis, `v` holds vector coordinates in that basis.
inline NormalFormElem sl2_nf_coefficient(long m, const Vec& l, const Vec& v) {
    if (m < 0 || l.size() != size_t(m) + 1 || v.size() != size_t(m) + 1)
        throw Error("chain coordinate length mismatch");
    if (m == 0) return NormalFormElem(l[0] * v[0]);
    const auto& cm = sl2detail::chain_model(m);
    Vec lrow(cm.V.dim), vcol(cm.V.dim);
    for (long k = 0; k <= m; ++k) {
        if (!l[size_t(k)].is_zero())
            for (size_t i = 0; i < cm.V.dim; ++i)
                lrow[i] += l[size_t(k)] * cm.duals[size_t(k)][i];
        if (!v[size_t(k)].is_zero())
            for (size_t i = 0; i < cm.V.dim; ++i)
                vcol[i] += v[size_t(k)] * cm.basis[size_t(k)][i];
    }
    NormalFormElem out;
    for (size_t i = 0; i < cm.V.dim; ++i) {
        if (lrow[i].is_zero()) continue;
        for (size_t j = 0; j < cm.V.dim; ++j) {
            if (vcol[j].is_zero()) continue;
            NormalFormElem mono = NormalFormElem::one();
            for (long s = 0; s < m; ++s) {
                int is = int((i >> (m - 1 - s)) & 1u) + 1;
                int js = int((j >> (m - 1 - s)) & 1u) + 1;
                mono = mono * NormalFormElem::gen(is, js);
            }
            out += mono.scaled(lrow[i] * vcol[j]);
        }
    }
    return out;
}

}  // namespace cqk
