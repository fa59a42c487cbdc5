#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqk/haar.hpp"

using namespace cqk;
using ES = EdgeScalar;

namespace {

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

Vec unit(size_t dim, size_t k) {
    Vec v(dim);
    v[k] = RatQ(1);
    return v;
}

unsigned g_seed = 23;
RatQ rnd() {
    g_seed = g_seed * 1103515245u + 12345u;
    return RatQ(Rational(long((g_seed >> 16) % 7) - 3));
}

RatQ haar_of_nf(const RepContext& ctx, const NormalFormElem& a) {
    return haar_trace(ctx, evaluate_su2_element<ES>(ctx, a)).exact;
}

}  // namespace

TEST_CASE("diagonal series fitting and weighted summation") {
    auto par = QParams::exact(Rational(2), 12);
    auto c12 = pi_su2_gen<ES>(NormalFormElem::C12, par);  // diag q^{-(k+1)}
    DiagSeries f = fit_diag_series(c12, 0, 2);
    CHECK(f.k0 == 0);
    REQUIRE(f.coef.size() == 1);
    CHECK(f.coef.at(1) == RatQ::q_pow(-1));
    // sum_k q^{-(k+1)} q^{-(k+1)} = q^{-2}/(1 - q^{-2})
    CHECK(weighted_diag_sum(f, -1) ==
          RatQ::q_pow(-2) / (RatQ(1) - RatQ::q_pow(-2)));
    CHECK_THROWS_AS(weighted_diag_sum(f, 1), NotSummable);
    // a window excluding the true exponent must be caught by verification
    CHECK_THROWS_AS(fit_diag_series(c12, 2, 3), Error);
    // window too wide for the certified band
    CHECK_THROWS_AS(fit_diag_series(c12, 0, 20), NotSummable);
}

TEST_CASE("rank-one invariant integral matches the closed form") {
    auto a1 = build_cartan('A', 1);
    auto par = QParams::exact(Rational(2), 16);
    auto ctx = make_context(a1, {1}, TorusPoint::symbolic(), par);
    for (int fam = 1; fam <= 2; ++fam)
        for (long m = fam == 2 ? 1 : 0; m <= 4; ++m)
            for (long p = 0; m + p <= 4; ++p)
                for (long r = 0; m + p + r <= 4; ++r) {
                    auto a = NormalFormElem::monomial(fam, m, p, r);
                    CHECK(haar_of_nf(ctx, a) == haar_closed_form(fam, m, p, r));
                }
}

TEST_CASE("the integral of one is one") {
    auto par = QParams::exact(Rational(2), 12);
    for (auto& label : {"A1", "A2", "B2", "A3"}) {
        auto cd = build_cartan(label);
        auto ctx = make_context(cd, longest_element(cd), TorusPoint::symbolic(), par);
        auto res = haar_trace(ctx, TensorOp<ES>::identity(ctx));
        CHECK(res.exact == RatQ(1));
    }
}

TEST_CASE("pair integrals agree with the invariant projection formula") {
    auto a1 = build_cartan('A', 1);
    auto par = QParams::exact(Rational(2), 16);
    auto ctx = make_context(a1, {1}, TorusPoint::symbolic(), par);
    auto M = share(build_fundamental(a1, 1));
    int nonzero = 0;
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j)
            for (size_t k = 0; k < 2; ++k)
                for (size_t l = 0; l < 2; ++l) {
                    auto ca = coeff(M, unit(2, i), unit(2, j));
                    auto cb = coeff(M, unit(2, k), unit(2, l));
                    RatQ closed = haar_schur_pair(ca, cb);
                    auto traced = haar_trace(
                        ctx, evaluate_coefficient<ES>(ctx, ca) * evaluate_coefficient<ES>(ctx, cb));
                    CHECK(traced.exact == closed);
                    if (!closed.is_zero()) ++nonzero;
                }
    CHECK(nonzero == 4);
    // spot values: H(c11 c22) = q^2/(q^2+1), H(c12 c21) = -q/(q^2+1)
    auto h1122 = haar_schur_pair(coeff(M, unit(2, 0), unit(2, 0)), coeff(M, unit(2, 1), unit(2, 1)));
    CHECK(h1122 == RatQ::q_pow(2) / (RatQ::q_pow(2) + RatQ(1)));
    auto h1221 = haar_schur_pair(coeff(M, unit(2, 0), unit(2, 1)), coeff(M, unit(2, 1), unit(2, 0)));
    CHECK(h1221 == -RatQ::q_pow(1) / (RatQ::q_pow(2) + RatQ(1)));
}

TEST_CASE("single-coefficient projection vanishes off the trivial type") {
    auto a2 = build_cartan('A', 2);
    auto M = share(build_fundamental(a2, 1));
    for (size_t i = 0; i < M->dim; ++i)
        for (size_t j = 0; j < M->dim; ++j)
            CHECK(haar_schur(coeff(M, unit(M->dim, i), unit(M->dim, j))) == RatQ(0));
    // the tensor with the dual contains one trivial component
    auto N = share(build_fundamental(a2, 2));
    auto T = share(tensor_module(*M, *N));
    Vec l(T->dim), v(T->dim);
    for (auto& x : l) x = rnd();
    for (auto& x : v) x = rnd();
    RatQ val = haar_schur(coeff(T, l, v));
    // consistency with the factorwise pair formula on decomposable data
    Vec lM(M->dim), vM(M->dim), lN(N->dim), vN(N->dim);
    for (auto* p : {&lM, &vM, &lN, &vN})
        for (auto& x : *p) x = rnd();
    Vec lT(T->dim), vT(T->dim);
    for (size_t u = 0; u < M->dim; ++u)
        for (size_t w = 0; w < N->dim; ++w) {
            lT[u * N->dim + w] = lM[u] * lN[w];
            vT[u * N->dim + w] = vM[u] * vN[w];
        }
    CHECK(haar_schur(coeff(T, lT, vT)) ==
          haar_schur_pair(coeff(M, lM, vM), coeff(N, lN, vN)));
    (void)val;
}

TEST_CASE("rank-two coefficients of a fundamental module integrate to zero") {
    auto a2 = build_cartan('A', 2);
    auto par = QParams::exact(Rational(2), 12);
    auto ctx = make_context(a2, {1, 2, 1}, TorusPoint::symbolic(), par);
    auto M = share(build_fundamental(a2, 1));
    for (size_t i = 0; i < M->dim; ++i)
        for (size_t j = 0; j < M->dim; ++j) {
            auto op = evaluate_coefficient<ES>(ctx, coeff(M, unit(M->dim, i), unit(M->dim, j)));
            CHECK(haar_trace(ctx, op).exact == RatQ(0));
        }
}

TEST_CASE("the integral is independent of the reduced word") {
    auto a2 = build_cartan('A', 2);
    auto par = QParams::exact(Rational(2), 12);
    auto c121 = make_context(a2, {1, 2, 1}, TorusPoint::symbolic(), par);
    auto c212 = make_context(a2, {2, 1, 2}, TorusPoint::symbolic(), par);
    auto M = share(build_irreducible(a2, {1, 1}));
    for (int trial = 0; trial < 2; ++trial) {
        Vec l(M->dim), v(M->dim);
        for (auto& x : l) x = rnd();
        for (auto& x : v) x = rnd();
        auto ca = coeff(M, l, v);
        CHECK(haar_trace(c121, evaluate_coefficient<ES>(c121, ca)).exact ==
              haar_trace(c212, evaluate_coefficient<ES>(c212, ca)).exact);
    }
}

TEST_CASE("left invariance of the rank-one integral") {
    auto a1 = build_cartan('A', 1);
    auto par = QParams::exact(Rational(2), 16);
    auto ctx = make_context(a1, {1}, TorusPoint::symbolic(), par);
    for (auto& a : {NormalFormElem::monomial(1, 1, 1, 1),
                    NormalFormElem::monomial(1, 0, 2, 2),
                    NormalFormElem::gen(1, 1) * NormalFormElem::gen(2, 2) +
                        NormalFormElem::monomial(2, 1, 1, 0, RatQ(3))}) {
        NormalFormElem lhs;
        for (auto& [pair, c] : a.coproduct().terms()) {
            RatQ h = haar_of_nf(ctx, NormalFormElem::monomial(pair.second.fam, pair.second.m,
                                                              pair.second.p, pair.second.r));
            lhs += NormalFormElem::monomial(pair.first.fam, pair.first.m, pair.first.p,
                                            pair.first.r)
                       .scaled(c * h);
        }
        CHECK(lhs == NormalFormElem(haar_of_nf(ctx, a)));
    }
}

TEST_CASE("divergent weighted sums are rejected") {
    auto a1 = build_cartan('A', 1);
    auto par = QParams::exact(Rational(2), 12);
    auto ctx = make_context(a1, {1}, TorusPoint::symbolic(), par);
    auto bad = j_operator<ES>(ctx, TorusPoint::q_power({-3}));
    CHECK_THROWS_AS(haar_trace(ctx, bad), NotSummable);
}

TEST_CASE("float evaluation tracks the exact value within its tail bound") {
    auto a1 = build_cartan('A', 1);
    auto pe = QParams::exact(Rational(2), 16);
    auto pf = QParams::flt(2.0, 40);
    auto ce = make_context(a1, {1}, TorusPoint::symbolic(), pe);
    auto cf = make_context(a1, {1}, TorusPoint::symbolic(), pf);
    auto M = share(build_irreducible(a1, {2}));
    Vec l(M->dim), v(M->dim);
    for (auto& x : l) x = rnd();
    for (auto& x : v) x = rnd();
    auto ca = coeff(M, l, v);
    auto exact = haar_trace(ce, evaluate_coefficient<ES>(ce, ca));
    auto flt = haar_trace(cf, evaluate_coefficient<std::complex<double>>(cf, ca));
    CHECK(std::abs(flt.value - exact.value) <= flt.tail + 1e-10);
    CHECK(flt.tail < 1e-6);
}
