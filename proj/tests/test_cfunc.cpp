#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cqk/cfunc.hpp"

using namespace cqk;
using ES = EdgeScalar;
using C = std::complex<double>;

namespace {

/// All Weyl group elements as reduced words, by breadth-first closure.
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

/// lambda with i*lambda equal to the given integral weight.
WeightC lambda_of_integral(const WKey& ik) {
    WeightC la(ik.size());
    for (size_t i = 0; i < ik.size(); ++i) la[i] = C(0.0, -double(ik[i]));
    return la;
}

}  // namespace

TEST_CASE("convergence domain over the inversion roots") {
    auto a1 = build_cartan('A', 1);
    auto ok = c_function_domain(a1, {1}, {C(0.0, -2.0)});
    CHECK(ok.ok);
    auto bad = c_function_domain(a1, {1}, {C(0.0, 2.0)});
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.failing.size() == 1);
    CHECK(bad.failing[0] == RootZ{1});
    // a real spectral parameter sits on the boundary: rejected
    CHECK_FALSE(c_function_domain(a1, {1}, {C(2.0, 0.0)}).ok);

    auto a2 = build_cartan('A', 2);
    // Im(lambda, alpha_1) = -1 < 0 but Im(lambda, alpha_1 + alpha_2) = +1
    auto rep = c_function_domain(a2, longest_element(a2), {C(0.0, -1.0), C(0.0, 2.0)});
    CHECK_FALSE(rep.ok);
}

TEST_CASE("spectral diagonal: identity, dominant agreement, multiplicativity") {
    auto a2 = build_cartan('A', 2);
    auto par = QParams::exact(Rational(2), 12);
    auto ctx = make_context(a2, {1, 2, 1}, TorusPoint::symbolic(), par);

    auto Z = d_operator_exact<ES>(ctx, {0, 0});
    for (size_t j = 0; j < 3; ++j)
        for (int k = 0; k < par.trunc; ++k)
            CHECK(Z.terms[0].slots[j].op.at(k, k) == ES(RatQ(1)));

    // matches the extreme-coefficient diagonal for dominant weights
    WKey rho(2, 1);
    auto D = d_operator_exact<ES>(ctx, rho);
    auto A = a_operator<ES>(ctx, rho);
    for (size_t j = 0; j < 3; ++j)
        for (int k = 0; k < par.trunc; ++k)
            CHECK(D.terms[0].slots[j].op.at(k, k) == A.terms[0].slots[j].op.at(k, k));

    // additive in the weight, including non-dominant weights
    WKey m1 = {1, -2}, m2 = {2, 1}, ms = {3, -1};
    auto P = d_operator_exact<ES>(ctx, m1) * d_operator_exact<ES>(ctx, m2);
    auto S = d_operator_exact<ES>(ctx, ms);
    REQUIRE(P.terms.size() == 1);
    for (size_t j = 0; j < 3; ++j)
        for (int k = 0; k < par.trunc; ++k)
            CHECK(P.terms[0].slots[j].op.at(k, k) == S.terms[0].slots[j].op.at(k, k));
}

TEST_CASE("complex spectral diagonal matches the integral one") {
    auto b2 = build_cartan('B', 2);
    auto par = QParams::flt(2.0, 10);
    auto ctx = make_context(b2, {1, 2, 1}, TorusPoint::ones(2), par);
    WKey mu = {2, -1};
    WeightC muc = {C(2.0, 0.0), C(-1.0, 0.0)};
    auto e = ctx.a_exponents(mu);
    auto D = d_operator(ctx, muc);
    for (size_t j = 0; j < 3; ++j)
        for (int k = 0; k < par.trunc; ++k) {
            C got = D.terms[0].slots[j].op.at(k, k);
            double want = std::pow(2.0, double(-(k + 1) * e[j]));
            CHECK(std::abs(got - want) < 1e-12 * std::abs(want));
        }
}

TEST_CASE("rank-one value and the fundamental domain rejection") {
    auto a1 = build_cartan('A', 1);
    CFunctionQuery qy{a1, {1}, lambda_of_integral({2}), QParams::exact(Rational(2), 16)};
    auto tr = c_function_trace(qy);
    auto pr = c_function_product(qy);
    REQUIRE(tr.has_exact);
    REQUIRE(pr.has_exact);
    CHECK(tr.exact == RatQ(1));
    CHECK(pr.exact == RatQ(1));

    CFunctionQuery bad{a1, {1}, {C(0.0, 2.0)}, QParams::exact(Rational(2), 16)};
    CHECK_THROWS_AS(c_function_trace(bad), DomainError);
}

TEST_CASE("closed form at the longest element of the rank-two chain") {
    auto a2 = build_cartan('A', 2);
    CFunctionQuery qy{a2, longest_element(a2), lambda_of_integral({4, 4}),
                      QParams::exact(Rational(2), 16)};
    auto pr = c_function_product(qy);
    RatQ f2 = RatQ::q_pow(2) - RatQ(1);
    RatQ f4 = RatQ::q_pow(4) - RatQ(1);
    RatQ f8 = RatQ::q_pow(8) - RatQ(1);
    CHECK(pr.exact == f2 * f2 / (f4 * f8));
    auto tr = c_function_trace(qy);
    CHECK(tr.exact == pr.exact);
}

TEST_CASE("trace and product agree exactly on integral samples") {
    std::mt19937 rng(20260824);
    std::uniform_int_distribution<long> coord(1, 5);
    auto par = QParams::exact(Rational(2), 16);
    for (auto& label : {"A2", "B2"}) {
        auto cd = build_cartan(label);
        for (const auto& w : all_weyl(cd)) {
            for (int s = 0; s < 10; ++s) {
                WKey ik(size_t(cd.rank));
                for (auto& c : ik) c = coord(rng);  // strictly dominant: in the domain
                CFunctionQuery qy{cd, w, lambda_of_integral(ik), par};
                auto tr = c_function_trace(qy);
                auto pr = c_function_product(qy);
                REQUIRE(tr.has_exact);
                CHECK(tr.exact == pr.exact);
            }
        }
    }
}

TEST_CASE("trace and product agree for generic complex parameters") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> re(-2.0, 2.0);
    std::uniform_real_distribution<double> im(-3.0, -1.0);
    auto par = QParams::flt(2.0, 60);
    for (auto& label : {"A2", "B2"}) {
        auto cd = build_cartan(label);
        auto w = longest_element(cd);
        for (int s = 0; s < 20; ++s) {
            WeightC la(size_t(cd.rank));
            for (auto& c : la) c = C(re(rng), im(rng));
            CFunctionQuery qy{cd, w, la, par};
            auto tr = c_function_trace(qy);
            auto pr = c_function_product(qy);
            CHECK(std::abs(tr.value - pr.value) <= 1e-10 * std::abs(pr.value));
            CHECK(tr.tail <= 1e-10 * std::abs(pr.value));
        }
    }
}

TEST_CASE("simple pole along a vanishing root pairing") {
    auto a1 = build_cartan('A', 1);
    auto par = QParams::flt(2.0, 16);
    auto value = [&](double eps) {
        CFunctionQuery qy{a1, {1}, {C(0.0, -eps)}, par};
        return std::abs(c_function_product(qy).value);
    };
    // |c| ~ (q^2 - 1)/(eps ln q): one decade in eps scales the value tenfold
    CHECK(value(1e-4) / value(1e-3) == doctest::Approx(10.0).epsilon(0.01));
    CHECK(value(1e-4) * 1e-4 ==
          doctest::Approx((4.0 - 1.0) / std::log(2.0)).epsilon(0.01));
    // exact pole hit: rejected with the offending root
    CFunctionQuery at{a1, {1}, {C(0.0, 0.0)}, QParams::exact(Rational(2), 16)};
    try {
        c_function_product(at);
        FAIL("pole not reported");
    } catch (const RootPoleError& e) {
        CHECK(e.beta == RootZ{1});
    }
}

TEST_CASE("partial sums diverge outside the closed domain") {
    auto a1 = build_cartan('A', 1);
    // Im(lambda, alpha) > 0: the balanced weight q^{2(k+1)} overwhelms the
    // diagonal and the partial sums blow up geometrically
    auto parA = QParams::flt(2.0, 10);
    auto parB = QParams::flt(2.0, 20);
    auto partial = [&](const QParams& par) {
        auto ctx = make_context(a1, {1}, TorusPoint::ones(1), par);
        WeightC il = spectral_shift({C(0.0, 2.0)});
        for (auto& c : il) c += 2.0;
        auto D = d_operator(ctx, il);
        C s{};
        for (int k = 0; k < par.trunc; ++k)
            s += std::pow(2.0, 2.0 * (k + 1)) * D.terms[0].slots[0].op.at(k, k);
        return std::abs(s);
    };
    CHECK(partial(parB) > 1e4 * partial(parA));
    // strict violation and the real boundary are both rejected up front
    CFunctionQuery qy{a1, {1}, {C(0.0, 2.0)}, parB};
    CHECK_THROWS_AS(c_function_trace(qy), DomainError);
    CFunctionQuery qb{a1, {1}, {C(2.0, 0.0)}, parB};
    CHECK_THROWS_AS(c_function_trace(qb), DomainError);
}
