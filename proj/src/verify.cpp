#include "verify.hpp"

#include <algorithm>
#include <complex>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "cqk/cfunc.hpp"
#include "cqk/haar.hpp"
#include "cqk/qtrace.hpp"

namespace cqk::verify {

using namespace cqk;
using ES = EdgeScalar;
using C = std::complex<double>;
using NF = NormalFormElem;

namespace {

/// Check accumulator: counts, worst residual, and the first failure label.
struct Tally {
    int checked = 0;
    int failed = 0;
    double worst = 0.0;
    std::string first;

    void require(bool ok, const std::string& what) {
        ++checked;
        if (!ok && failed++ == 0) first = what;
    }
    void residual(double r) { worst = std::max(worst, r); }

    CriterionResult done(int id, std::string name) const {
        CriterionResult r;
        r.id = id;
        r.name = std::move(name);
        r.pass = failed == 0 && checked > 0;
        std::ostringstream os;
        os << checked << " checks";
        if (failed) os << ", " << failed << " failed (first: " << first << ")";
        if (worst > 0.0) os << ", worst residual " << worst;
        r.detail = os.str();
        return r;
    }
};

std::shared_ptr<const UqModule> share(UqModule m) {
    return std::make_shared<const UqModule>(std::move(m));
}

MatrixCoefficient coeff(std::shared_ptr<const UqModule> M, Vec l, Vec v) {
    MatrixCoefficient c;
    c.M = std::move(M);
    c.l = std::move(l);
    c.v = std::move(v);
    return c;
}

Vec unitv(size_t dim, size_t k) {
    Vec v(dim);
    v[k] = RatQ(1);
    return v;
}

std::vector<WeylWord> all_weyl(const CartanDatum& cd) {
    std::map<std::vector<std::vector<Rational>>, WeylWord> seen;
    std::vector<WeylWord> frontier = {{}};
    seen[weyl_matrix(cd, {})] = {};
    while (!frontier.empty()) {
        std::vector<WeylWord> next;
        for (const auto& w : frontier)
            for (int i = 1; i <= cd.rank; ++i) {
                WeylWord e = w;
                e.push_back(i);
                e = reduce_word(cd, e);
                auto m = weyl_matrix(cd, e);
                if (seen.emplace(std::move(m), e).second) next.push_back(e);
            }
        frontier = std::move(next);
    }
    std::vector<WeylWord> out;
    for (auto& [m, w] : seen) out.push_back(w);
    return out;
}

std::string word_str(const WeylWord& w) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
    os << ")";
    return os.str();
}

WeightC lambda_of_integral(const WKey& ik) {
    WeightC la(ik.size());
    for (size_t i = 0; i < ik.size(); ++i) la[i] = C(0.0, -double(ik[i]));
    return la;
}

bool close_rel(const C& flt, double exact, double tail, double rel = 1e-10) {
    return std::abs(flt - exact) <= rel * std::max(1.0, std::abs(exact)) + tail;
}

// --- criterion bodies -------------------------------------------------------

CriterionResult c1_su2_oracle() {
    Tally t;
    auto a1 = build_cartan('A', 1);
    auto par = QParams::exact(Rational(2), 32);
    auto ctx = make_context(a1, {1}, TorusPoint::symbolic(), par);
    for (int fam = 1; fam <= 2; ++fam)
        for (long m = fam == 2 ? 1 : 0; m <= 6; ++m)
            for (long p = 0; m + p <= 6; ++p)
                for (long r = 0; m + p + r <= 6; ++r) {
                    auto a = NF::monomial(fam, m, p, r);
                    RatQ got = haar_trace(ctx, evaluate_su2_element<ES>(ctx, a)).exact;
                    std::ostringstream os;
                    os << "fam=" << fam << " m=" << m << " p=" << p << " r=" << r;
                    t.require(got == haar_closed_form(fam, m, p, r), os.str());
                }
    return t.done(1, "rank-one invariant integral equals the closed form, degree <= 6");
}

CriterionResult c2_unit_normalization() {
    Tally t;
    auto par = QParams::exact(Rational(2), 12);
    for (auto& label : {"A1", "A2", "B2", "A3"}) {
        auto cd = build_cartan(label);
        auto ctx = make_context(cd, longest_element(cd), TorusPoint::symbolic(), par);
        auto res = haar_trace(ctx, TensorOp<ES>::identity(ctx));
        t.require(res.exact == RatQ(1), label);
    }
    return t.done(2, "invariant integral of 1 is 1 for A1, A2, B2, A3");
}

CriterionResult c3_vanishing() {
    Tally t;
    auto a2 = build_cartan('A', 2);
    auto par = QParams::flt(2.0, 40);
    auto ctx = make_context(a2, {1, 2, 1}, TorusPoint::symbolic(), par);
    for (int f = 1; f <= 2; ++f) {
        auto M = share(build_fundamental(a2, f));
        for (size_t i = 0; i < M->dim; ++i)
            for (size_t j = 0; j < M->dim; ++j) {
                auto op = evaluate_coefficient<C>(ctx, coeff(M, unitv(M->dim, i), unitv(M->dim, j)));
                auto res = haar_trace(ctx, op);
                std::ostringstream os;
                os << "L(w" << f << ") (" << i << "," << j << ")";
                t.require(std::abs(res.value) <= res.tail + 1e-9, os.str());
                t.residual(std::abs(res.value));
            }
    }
    return t.done(3, "integral vanishes on nontrivial fundamental coefficients (float, K=40)");
}

CriterionResult c4_schur_pairs() {
    Tally t;
    auto a1 = build_cartan('A', 1);
    auto par = QParams::flt(2.0, 60);
    auto ctx = make_context(a1, {1}, TorusPoint::symbolic(), par);
    auto M = share(build_fundamental(a1, 1));
    int nonzero = 0;
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j)
            for (size_t k = 0; k < 2; ++k)
                for (size_t l = 0; l < 2; ++l) {
                    auto ca = coeff(M, unitv(2, i), unitv(2, j));
                    auto cb = coeff(M, unitv(2, k), unitv(2, l));
                    RatQ closed = haar_schur_pair(ca, cb);
                    auto traced = haar_trace(
                        ctx, evaluate_coefficient<C>(ctx, ca) * evaluate_coefficient<C>(ctx, cb));
                    double diff = std::abs(traced.value - closed.eval(2.0));
                    std::ostringstream os;
                    os << "pair (" << i << j << "," << k << l << ")";
                    t.require(diff <= 1e-9, os.str());
                    t.residual(diff);
                    if (!closed.is_zero()) ++nonzero;
                }
    t.require(nonzero >= 4, "fewer than 4 nonzero pairs");
    return t.done(4, "pair integrals match the invariant-projection formula (float, K=60)");
}

/// Entries of op e_col with every row index inside the band.
std::map<std::pair<std::vector<int>, TorusExp>, ES> banded(const TensorOp<ES>& op,
                                                           const std::vector<int>& col,
                                                           int band) {
    auto m = apply_to_basis(op, col);
    for (auto it = m.begin(); it != m.end();) {
        bool keep = true;
        for (int r : it->first.first) keep = keep && r < band;
        it = keep ? std::next(it) : m.erase(it);
    }
    return m;
}

CriterionResult c5_extreme_arbiter() {
    Tally t;
    auto a2 = build_cartan('A', 2);
    auto par = QParams::exact(Rational(2), 12);
    const std::vector<WeylWord> words = {{1}, {1, 2}, {1, 2, 1}};
    const std::vector<WKey> weights = {{1, 0}, {0, 1}, {1, 1}};
    for (const auto& word : words)
        for (const auto& La : weights) {
            auto ctx = make_context(a2, word, TorusPoint::symbolic(), par);
            auto M = share(build_irreducible(a2, La));
            auto lhs = evaluate_coefficient<ES>(ctx, a_coefficient(M, word));
            auto rhs = a_operator<ES>(ctx, La);
            int band = std::min(certified_band(lhs), certified_band(rhs));
            std::ostringstream os;
            os << "word " << word_str(word) << " La [" << La[0] << "," << La[1] << "]";
            t.require(band >= 3, os.str() + " band too small");
            int cols = std::min(3, band);
            std::vector<int> col(lhs.n, 0);
            for (;;) {
                t.require(banded(lhs, col, band) == banded(rhs, col, band), os.str());
                size_t j = 0;
                while (j < lhs.n && ++col[j] == cols) col[j++] = 0;
                if (j == lhs.n) break;
            }
        }
    return t.done(5, "braid-extreme coefficients represent as the diagonal q-power operators");
}

CriterionResult c6_trace_normalization() {
    Tally t;
    auto par = QParams::exact(Rational(2), 16);
    for (auto& label : {"A2", "B2"}) {
        auto cd = build_cartan(label);
        for (const auto& w : all_weyl(cd)) {
            auto qc = make_qtrace_context(make_context(cd, w, TorusPoint::symbolic(), par));
            auto L = balanced_extreme_square<ES>(qc.rep, WKey(size_t(cd.rank), 2));
            t.require(qtr(qc, L).exact == RatQ(1), std::string(label) + " " + word_str(w));
        }
    }
    return t.done(6, "normalized quasi-trace of the balanced extreme square is 1, all Weyl elements");
}

CriterionResult c7_cfunction() {
    Tally t;
    auto a2 = build_cartan('A', 2);
    std::mt19937 rng(701);
    std::uniform_int_distribution<long> coord(2, 5);  // samples >= 2 rho
    auto pe = QParams::exact(Rational(2), 16);
    for (const auto& w : all_weyl(a2)) {
        for (int s = 0; s < 10; ++s) {
            WKey ik(2);
            for (auto& c : ik) c = coord(rng);
            CFunctionQuery qy{a2, w, lambda_of_integral(ik), pe};
            auto tr = c_function_trace(qy);
            auto pr = c_function_product(qy);
            std::ostringstream os;
            os << "w " << word_str(w) << " ik [" << ik[0] << "," << ik[1] << "]";
            t.require(tr.has_exact && tr.exact == pr.exact, os.str());
        }
    }
    std::uniform_real_distribution<double> re(-2.0, 2.0);
    std::uniform_real_distribution<double> im(-3.0, -1.0);
    auto pf = QParams::flt(2.0, 60);
    auto w0 = longest_element(a2);
    for (int s = 0; s < 20; ++s) {
        WeightC la = {C(re(rng), im(rng)), C(re(rng), im(rng))};
        CFunctionQuery qy{a2, w0, la, pf};
        auto tr = c_function_trace(qy);
        auto pr = c_function_product(qy);
        double rel = std::abs(tr.value - pr.value) / std::abs(pr.value);
        t.require(rel <= 1e-10, "generic sample " + std::to_string(s));
        t.residual(rel);
    }
    return t.done(7, "spectral trace equals the inversion-root product (exact and float)");
}

CriterionResult c8_multiplicativity() {
    Tally t;
    auto par = QParams::exact(Rational(2), 16);
    for (auto& label : {"A2", "B2"}) {
        auto cd = build_cartan(label);
        auto qa = make_qtrace_context(make_context(cd, {1}, TorusPoint::symbolic(), par));
        auto qb = make_qtrace_context(make_context(cd, {2}, TorusPoint::symbolic(), par));
        WKey two(size_t(cd.rank), 2);
        auto L = balanced_extreme_square<ES>(qa.rep, two);
        auto Lp = balanced_extreme_square<ES>(qb.rep, two);
        auto [lhs, rhs] = qtr_multiplicativity(qa, qb, L, Lp);
        t.require(lhs.has_exact && lhs.exact == rhs.exact, label);
    }
    return t.done(8, "quasi-trace multiplicativity across concatenated words (s1, s2)");
}

// randomized degree-<=3 element of the rank-one coordinate algebra
NF random_elem(unsigned& seed) {
    auto next = [&] {
        seed = seed * 1103515245u + 12345u;
        return (seed >> 16) & 0x7fff;
    };
    NF e;
    int nterms = 1 + int(next() % 3);
    for (int tt = 0; tt < nterms; ++tt) {
        NF term(RatQ(long(next() % 7) - 3));
        int len = int(next() % 4);
        for (int g = 0; g < len; ++g)
            term = term * NF::gen(1 + int(next() % 2), 1 + int(next() % 2));
        e += term;
    }
    return e;
}

NF mono_elem(const SU2Mono& mo, const RatQ& c = RatQ(1)) {
    return NF::monomial(mo.fam, mo.m, mo.p, mo.r, c);
}

void check_module_relations(Tally& t, const UqModule& M, const std::string& tag) {
    const CartanDatum& cd = M.cd;
    for (int i = 1; i <= cd.rank; ++i)
        for (size_t r = 0; r < M.dim; ++r)
            for (size_t c = 0; c < M.dim; ++c) {
                if (!M.E[size_t(i - 1)][r][c].is_zero()) {
                    WKey want = M.wt[c];
                    for (int k = 0; k < cd.rank; ++k)
                        want[size_t(k)] += cd.a[size_t(k)][size_t(i - 1)];
                    t.require(M.wt[r] == want, tag + " E-grading");
                }
                if (!M.F[size_t(i - 1)][r][c].is_zero())
                    t.require(M.wt[r] == wkey_sub_root(cd, M.wt[c], i), tag + " F-grading");
            }
    for (int i = 1; i <= cd.rank; ++i)
        for (int j = 1; j <= cd.rank; ++j) {
            Mat lhs = mat_mul(M.E[size_t(i - 1)], M.F[size_t(j - 1)]);
            Mat rhs = mat_mul(M.F[size_t(j - 1)], M.E[size_t(i - 1)]);
            for (size_t r = 0; r < M.dim; ++r)
                for (size_t c = 0; c < M.dim; ++c) lhs[r][c] -= rhs[r][c];
            Mat want = mat_zero(M.dim, M.dim);
            if (i == j)
                for (size_t v = 0; v < M.dim; ++v)
                    want[v][v] =
                        RatQ(q_int_signed(M.wt[v][size_t(i - 1)], cd.d[size_t(i - 1)]));
            t.require(lhs == want, tag + " commutator");
        }
    for (int i = 1; i <= cd.rank; ++i)
        for (int j = 1; j <= cd.rank; ++j) {
            if (i == j) continue;
            long n = 1 - cd.a[size_t(i - 1)][size_t(j - 1)];
            for (auto* gens : {&M.E, &M.F}) {
                const Mat& X = (*gens)[size_t(i - 1)];
                const Mat& Y = (*gens)[size_t(j - 1)];
                Mat acc = mat_zero(M.dim, M.dim);
                for (long s = 0; s <= n; ++s) {
                    Mat term = mat_identity(M.dim);
                    for (long k = 0; k < s; ++k) term = mat_mul(term, X);
                    term = mat_mul(term, Y);
                    for (long k = 0; k < n - s; ++k) term = mat_mul(term, X);
                    RatQ coef(q_binomial(n, s, cd.d[size_t(i - 1)]));
                    if (s % 2) coef = -coef;
                    for (size_t r = 0; r < M.dim; ++r)
                        for (size_t c = 0; c < M.dim; ++c) acc[r][c] += coef * term[r][c];
                }
                t.require(mat_is_zero(acc), tag + " Serre");
            }
        }
    for (int i = 1; i <= cd.rank; ++i) {
        Mat lhs = mat_mul(mat_transpose(M.E[size_t(i - 1)]), M.gram);
        Mat rhs = mat_mul(M.gram, mat_mul(M.F[size_t(i - 1)], M.k_matrix(i, 1)));
        t.require(lhs == rhs, tag + " contravariance");
    }
    t.require(M.gram == mat_transpose(M.gram), tag + " gram symmetry");
    t.require(M.gram[M.hw_index][M.hw_index] == RatQ(1), tag + " hw norm");
}

std::vector<std::pair<UqGen, int>> antipode_word(const std::vector<std::pair<UqGen, int>>& w,
                                                 int* sign) {
    std::vector<std::pair<UqGen, int>> out;
    *sign = 1;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        auto [g, i] = *it;
        switch (g) {
            case UqGen::E:
                out.push_back({UqGen::E, i});
                out.push_back({UqGen::Kinv, i});
                *sign = -*sign;
                break;
            case UqGen::F:
                out.push_back({UqGen::K, i});
                out.push_back({UqGen::F, i});
                *sign = -*sign;
                break;
            case UqGen::K: out.push_back({UqGen::Kinv, i}); break;
            case UqGen::Kinv: out.push_back({UqGen::K, i}); break;
        }
    }
    return out;
}

CriterionResult c9_property_suites() {
    Tally t;

    // coordinate-algebra inventory: associativity, Hopf axioms, star structure
    unsigned seed = 11;
    for (int trial = 0; trial < 50; ++trial) {
        NF a = random_elem(seed), b = random_elem(seed), d = random_elem(seed);
        t.require((a * b) * d == a * (b * d), "associativity");
    }
    using Triple = std::map<std::tuple<SU2Mono, SU2Mono, SU2Mono>, RatQ>;
    auto triple_add = [](Triple& tr, const SU2Mono& a, const SU2Mono& b, const SU2Mono& c,
                         const RatQ& v) {
        auto key = std::make_tuple(a, b, c);
        auto it = tr.find(key);
        if (it == tr.end()) {
            if (!v.is_zero()) tr[key] = v;
        } else {
            it->second += v;
            if (it->second.is_zero()) tr.erase(it);
        }
    };
    seed = 23;
    for (int trial = 0; trial < 25; ++trial) {
        NF a = random_elem(seed);
        Triple lhs, rhs;
        for (auto& [ab, v] : a.coproduct().terms()) {
            for (auto& [xy, w] : mono_elem(ab.first).coproduct().terms())
                triple_add(lhs, xy.first, xy.second, ab.second, v * w);
            for (auto& [xy, w] : mono_elem(ab.second).coproduct().terms())
                triple_add(rhs, ab.first, xy.first, xy.second, v * w);
        }
        t.require(lhs == rhs, "coassociativity");
        NF left, right, anti;
        for (auto& [ab, v] : a.coproduct().terms()) {
            left += mono_elem(ab.second, v * mono_elem(ab.first).counit());
            right += mono_elem(ab.first, v * mono_elem(ab.second).counit());
            anti += (mono_elem(ab.first).antipode() * mono_elem(ab.second)).scaled(v);
        }
        t.require(left == a && right == a, "counit");
        t.require(anti == NF(a.counit()), "antipode convolution");
        NF b = random_elem(seed);
        t.require((a * b).star() == b.star() * a.star(), "star antihomomorphism");
        t.require(a.star().star() == a, "star involution");
    }
    // representation property and star compatibility on exact bands
    QParams par = QParams::exact(Rational(2), 12);
    seed = 5;
    for (int trial = 0; trial < 30; ++trial) {
        NF a = random_elem(seed), b = random_elem(seed);
        auto pa = pi_su2<ES>(a, par);
        auto pb = pi_su2<ES>(b, par);
        auto pab = pi_su2<ES>(a * b, par);
        auto prod = pa * pb;
        int band = std::min(pab.exact_band, prod.exact_band);
        t.require(band > 0, "empty exact band");
        bool ok = true;
        for (int r = 0; r < band; ++r)
            for (int cc = 0; cc < band; ++cc) ok = ok && pab.at(r, cc) == prod.at(r, cc);
        t.require(ok, "representation property");
        auto pastar = pi_su2<ES>(a.star(), par);
        auto padj = pa.adjoint();
        ok = true;
        for (int r = 0; r < pa.exact_band; ++r)
            for (int cc = 0; cc < pa.exact_band; ++cc)
                ok = ok && pastar.at(r, cc) == padj.at(r, cc);
        t.require(ok, "star representation");
    }

    // module inventory: defining relations, contravariant form, braid moves
    {
        auto a1 = build_cartan('A', 1);
        check_module_relations(t, build_fundamental(a1, 1), "A1 f1");
        auto a2 = build_cartan('A', 2);
        check_module_relations(t, build_fundamental(a2, 1), "A2 f1");
        check_module_relations(t, build_fundamental(a2, 2), "A2 f2");
        check_module_relations(t, build_irreducible(a2, {1, 1}), "A2 rho");
        auto b2 = build_cartan('B', 2);
        check_module_relations(t, build_fundamental(b2, 1), "B2 f1");
        check_module_relations(t, build_fundamental(b2, 2), "B2 f2");

        auto M = build_fundamental(a2, 1);
        Mat t1 = braid_generator(M, 1), t2 = braid_generator(M, 2);
        t.require(mat_mul(t1, mat_mul(t2, t1)) == mat_mul(t2, mat_mul(t1, t2)),
                  "A2 braid relation");
        auto N = build_fundamental(b2, 2);
        Mat u1 = braid_generator(N, 1), u2 = braid_generator(N, 2);
        t.require(mat_mul(mat_mul(u1, u2), mat_mul(u1, u2)) ==
                      mat_mul(mat_mul(u2, u1), mat_mul(u2, u1)),
                  "B2 braid relation");
        for (auto* Mp : {&M, &N}) {
            Mat T = braid_apply(*Mp, longest_element(Mp->cd));
            bool ok = true;
            for (size_t c = 0; c < Mp->dim; ++c) {
                WKey target = wkey_of(
                    weyl_apply(Mp->cd, longest_element(Mp->cd), wkey_to_weight(Mp->wt[c])));
                for (size_t r = 0; r < Mp->dim; ++r)
                    if (!T[r][c].is_zero()) ok = ok && Mp->wt[r] == target;
            }
            t.require(ok, "braid weight transport");
        }
    }
    // antipode through the dual module on random coefficients
    for (const char* g : {"A1", "A2"}) {
        auto cd = build_cartan(g);
        auto M = build_fundamental(cd, 1);
        auto di = dual_module_iso(M);
        unsigned s2 = 13;
        auto next = [&] {
            s2 = s2 * 1103515245u + 12345u;
            return (s2 >> 16) & 0x7fff;
        };
        for (int trial = 0; trial < 20; ++trial) {
            size_t li = next() % M.dim, vi = next() % M.dim;
            Vec l(M.dim), v(M.dim);
            l[li] = RatQ(long(next() % 5) + 1);
            v[vi] = RatQ(long(next() % 5) + 1);
            Vec lp = vec_mat(v, di.theta_inv);
            Vec vp = mat_vec(di.theta, l);
            std::vector<std::pair<UqGen, int>> word;
            int len = int(next() % 4);
            for (int k = 0; k < len; ++k)
                word.push_back({UqGen(next() % 4), 1 + int(next() % size_t(cd.rank))});
            int sign = 1;
            auto sw = antipode_word(word, &sign);
            RatQ lhs = evaluate_uq_word(di.dual, word, lp, vp);
            RatQ rhs = evaluate_uq_word(M, sw, l, v);
            if (sign < 0) rhs = -rhs;
            t.require(lhs == rhs, std::string(g) + " dual antipode");
        }
    }
    return t.done(9, "Hopf, star, and representation property inventories (exact mode)");
}

CriterionResult c10_word_independence() {
    Tally t;
    auto a2 = build_cartan('A', 2);
    auto par = QParams::flt(2.0, 30);
    auto cA = make_context(a2, {1, 2, 1}, TorusPoint::symbolic(), par);
    auto cB = make_context(a2, {2, 1, 2}, TorusPoint::symbolic(), par);
    auto M = share(build_irreducible(a2, {1, 1}));
    std::mt19937 rng(1001);
    std::uniform_int_distribution<long> val(-3, 3);
    for (int s = 0; s < 5; ++s) {
        Vec l(M->dim), v(M->dim);
        for (auto& x : l) x = RatQ(Rational(val(rng)));
        for (auto& x : v) x = RatQ(Rational(val(rng)));
        auto ca = coeff(M, l, v);
        auto rA = haar_trace(cA, evaluate_coefficient<C>(cA, ca));
        auto rB = haar_trace(cB, evaluate_coefficient<C>(cB, ca));
        double diff = std::abs(rA.value - rB.value);
        t.require(diff <= 1e-9, "sample " + std::to_string(s));
        t.residual(diff);
    }
    return t.done(10, "integral agrees across the two longest words (float, K=30)");
}

CriterionResult c11_cross_mode() {
    Tally t;
    const double q = 2.0;

    // rank-one monomials, degree <= 6
    {
        auto a1 = build_cartan('A', 1);
        auto pe = QParams::exact(Rational(2), 32);
        auto pf = QParams::flt(q, 60);
        auto ce = make_context(a1, {1}, TorusPoint::symbolic(), pe);
        auto cf = make_context(a1, {1}, TorusPoint::symbolic(), pf);
        for (int fam = 1; fam <= 2; ++fam)
            for (long m = fam == 2 ? 1 : 0; m <= 6; ++m)
                for (long p = 0; m + p <= 6; ++p)
                    for (long r = 0; m + p + r <= 6; ++r) {
                        auto a = NF::monomial(fam, m, p, r);
                        double ex =
                            haar_trace(ce, evaluate_su2_element<ES>(ce, a)).exact.eval(q);
                        auto fl = haar_trace(cf, evaluate_su2_element<C>(cf, a));
                        t.require(close_rel(fl.value, ex, fl.tail), "rank-one monomial");
                        t.residual(std::abs(fl.value - ex));
                    }
    }
    // unit normalization across groups
    for (auto& label : {"A1", "A2", "B2", "A3"}) {
        auto cd = build_cartan(label);
        auto cf = make_context(cd, longest_element(cd), TorusPoint::symbolic(),
                               QParams::flt(q, 24));
        auto fl = haar_trace(cf, TensorOp<C>::identity(cf));
        t.require(close_rel(fl.value, 1.0, fl.tail), std::string(label) + " unit");
    }
    // pair integrals
    {
        auto a1 = build_cartan('A', 1);
        auto pe = QParams::exact(Rational(2), 16);
        auto pf = QParams::flt(q, 60);
        auto ce = make_context(a1, {1}, TorusPoint::symbolic(), pe);
        auto cf = make_context(a1, {1}, TorusPoint::symbolic(), pf);
        auto M = share(build_fundamental(a1, 1));
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 2; ++j)
                for (size_t k = 0; k < 2; ++k)
                    for (size_t l = 0; l < 2; ++l) {
                        auto ca = coeff(M, unitv(2, i), unitv(2, j));
                        auto cb = coeff(M, unitv(2, k), unitv(2, l));
                        double ex = haar_trace(ce, evaluate_coefficient<ES>(ce, ca) *
                                                       evaluate_coefficient<ES>(ce, cb))
                                        .exact.eval(q);
                        auto fl = haar_trace(cf, evaluate_coefficient<C>(cf, ca) *
                                                     evaluate_coefficient<C>(cf, cb));
                        t.require(close_rel(fl.value, ex, fl.tail), "pair integral");
                    }
    }
    // diagonal extreme operators, entrywise
    {
        auto a2 = build_cartan('A', 2);
        auto ce = make_context(a2, {1, 2, 1}, TorusPoint::symbolic(),
                               QParams::exact(Rational(2), 12));
        auto cf = make_context(a2, {1, 2, 1}, TorusPoint::symbolic(), QParams::flt(q, 12));
        auto De = a_operator<ES>(ce, {1, 1});
        auto Df = a_operator<C>(cf, {1, 1});
        bool ok = true;
        for (size_t j = 0; j < 3; ++j)
            for (int k = 0; k < 12; ++k) {
                double ev = De.terms[0].slots[j].op.at(k, k).rational_part().eval(q);
                ok = ok && close_rel(Df.terms[0].slots[j].op.at(k, k), ev, 0.0);
            }
        t.require(ok, "extreme operator entries");
    }
    // quasi-trace normalization and multiplicativity
    for (auto& label : {"A2", "B2"}) {
        auto cd = build_cartan(label);
        auto pf = QParams::flt(q, 16);
        for (const auto& w : all_weyl(cd)) {
            auto qf = make_qtrace_context(make_context(cd, w, TorusPoint::symbolic(), pf));
            auto Lf = balanced_extreme_square<C>(qf.rep, WKey(size_t(cd.rank), 2));
            auto rf = qtr(qf, Lf);
            t.require(rf.certified && close_rel(rf.value, 1.0, rf.tail),
                      std::string(label) + " normalization");
        }
        auto pe = QParams::exact(Rational(2), 16);
        auto qa = make_qtrace_context(make_context(cd, {1}, TorusPoint::symbolic(), pe));
        auto qb = make_qtrace_context(make_context(cd, {2}, TorusPoint::symbolic(), pe));
        auto qaf = make_qtrace_context(make_context(cd, {1}, TorusPoint::symbolic(), pf));
        auto qbf = make_qtrace_context(make_context(cd, {2}, TorusPoint::symbolic(), pf));
        WKey two(size_t(cd.rank), 2);
        auto [le, re2] = qtr_multiplicativity(qa, qb, balanced_extreme_square<ES>(qa.rep, two),
                                              balanced_extreme_square<ES>(qb.rep, two));
        auto [lf, rf2] = qtr_multiplicativity(qaf, qbf,
                                              balanced_extreme_square<C>(qaf.rep, two),
                                              balanced_extreme_square<C>(qbf.rep, two));
        t.require(close_rel(lf.value, le.exact.eval(q), lf.tail),
                  std::string(label) + " multiplicativity lhs");
        t.require(close_rel(rf2.value, re2.exact.eval(q), rf2.tail),
                  std::string(label) + " multiplicativity rhs");
    }
    // c-function samples
    {
        auto a2 = build_cartan('A', 2);
        std::mt19937 rng(1101);
        std::uniform_int_distribution<long> coord(2, 5);
        for (int s = 0; s < 10; ++s) {
            WKey ik = {coord(rng), coord(rng)};
            CFunctionQuery qe{a2, longest_element(a2), lambda_of_integral(ik),
                              QParams::exact(Rational(2), 16)};
            CFunctionQuery qf{a2, longest_element(a2), lambda_of_integral(ik),
                              QParams::flt(q, 60)};
            double ex = c_function_trace(qe).exact.eval(q);
            auto fl = c_function_trace(qf);
            t.require(close_rel(fl.value, ex, fl.tail), "c-function sample");
        }
    }
    return t.done(11, "float pipeline matches exact values within 1e-10 relative plus tails");
}

}  // namespace

CriterionResult run_criterion(int id) {
    switch (id) {
        case 1: return c1_su2_oracle();
        case 2: return c2_unit_normalization();
        case 3: return c3_vanishing();
        case 4: return c4_schur_pairs();
        case 5: return c5_extreme_arbiter();
        case 6: return c6_trace_normalization();
        case 7: return c7_cfunction();
        case 8: return c8_multiplicativity();
        case 9: return c9_property_suites();
        case 10: return c10_word_independence();
        case 11: return c11_cross_mode();
        default: throw Error("unknown criterion id");
    }
}

std::vector<CriterionResult> run_all() {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= 11; ++id) out.push_back(run_criterion(id));
    return out;
}

}  // namespace cqk::verify
