#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tuple>

#include "cqk/cqsu2.hpp"

using namespace cqk;

namespace {

using NF = NormalFormElem;

NF c(int i, int j) { return NF::gen(i, j); }

RatQ qp(long e) { return RatQ::q_pow(e); }

// deterministic pseudo-random element of degree <= 3
NF random_elem(unsigned& seed) {
    auto next = [&] {
        seed = seed * 1103515245u + 12345u;
        return (seed >> 16) & 0x7fff;
    };
    NF e;
    int nterms = 1 + int(next() % 3);
    for (int t = 0; t < nterms; ++t) {
        NF term(RatQ(long(next() % 7) - 3));
        int len = int(next() % 4);
        for (int g = 0; g < len; ++g) {
            int i = 1 + int(next() % 2), j = 1 + int(next() % 2);
            term = term * c(i, j);
        }
        e += term;
    }
    return e;
}

NF mono_elem(const SU2Mono& mo, const RatQ& coeff = RatQ(1)) {
    return NF::monomial(mo.fam, mo.m, mo.p, mo.r, coeff);
}

using Triple = std::map<std::tuple<SU2Mono, SU2Mono, SU2Mono>, RatQ>;

void triple_add(Triple& t, const SU2Mono& a, const SU2Mono& b, const SU2Mono& cc,
                const RatQ& v) {
    auto key = std::make_tuple(a, b, cc);
    auto it = t.find(key);
    if (it == t.end()) {
        if (!v.is_zero()) t[key] = v;
    } else {
        it->second += v;
        if (it->second.is_zero()) t.erase(it);
    }
}

}  // namespace

TEST_CASE("normal-form products") {
    CHECK(c(2, 1) * c(1, 1) == mono_elem({1, 1, 0, 1}, qp(1)));
    CHECK(c(1, 1) * c(2, 2) == NF::one() + mono_elem({1, 0, 1, 1}, qp(-1)));
    CHECK(c(2, 2) * c(1, 1) == NF::one() + mono_elem({1, 0, 1, 1}, qp(1)));
    CHECK(c(1, 2) * c(2, 1) == c(2, 1) * c(1, 2));
    // c11 c12 = q^{-1} c12 c11, stated direction
    CHECK(c(1, 1) * c(1, 2) == mono_elem({1, 1, 1, 0}));
    CHECK(c(1, 2) * c(1, 1) == mono_elem({1, 1, 1, 0}, qp(1)));
}

TEST_CASE("associativity on random triples") {
    unsigned seed = 11;
    for (int trial = 0; trial < 200; ++trial) {
        NF a = random_elem(seed), b = random_elem(seed), d = random_elem(seed);
        CHECK((a * b) * d == a * (b * d));
    }
}

TEST_CASE("coproduct of generators") {
    NfTensor d = c(1, 1).coproduct();
    NfTensor want;
    want.add({1, 1, 0, 0}, {1, 1, 0, 0}, RatQ(1));
    want.add({1, 0, 1, 0}, {1, 0, 0, 1}, RatQ(1));
    CHECK(d.terms() == want.terms());
}

TEST_CASE("antipode and star on generators") {
    CHECK(c(2, 1).antipode() == mono_elem({1, 0, 0, 1}, -qp(-1)));
    CHECK(c(1, 2).antipode() == mono_elem({1, 0, 1, 0}, -qp(1)));
    CHECK(c(1, 1).antipode() == c(2, 2));
    CHECK(c(2, 1).star() == mono_elem({1, 0, 1, 0}, -qp(1)));
    CHECK(c(2, 1).scaled(-qp(-1)).star() == c(1, 2));
    CHECK(c(1, 1).star() == c(2, 2));
}

TEST_CASE("Hopf axioms on random elements") {
    unsigned seed = 23;
    for (int trial = 0; trial < 25; ++trial) {
        NF a = random_elem(seed);

        // coassociativity
        Triple lhs, rhs;
        for (auto& [ab, v] : a.coproduct().terms()) {
            for (auto& [xy, w] : mono_elem(ab.first).coproduct().terms())
                triple_add(lhs, xy.first, xy.second, ab.second, v * w);
            for (auto& [xy, w] : mono_elem(ab.second).coproduct().terms())
                triple_add(rhs, ab.first, xy.first, xy.second, v * w);
        }
        CHECK(lhs == rhs);

        // counit: (eps ⊗ id) Delta = id = (id ⊗ eps) Delta
        NF left, right;
        for (auto& [ab, v] : a.coproduct().terms()) {
            left += mono_elem(ab.second, v * mono_elem(ab.first).counit());
            right += mono_elem(ab.first, v * mono_elem(ab.second).counit());
        }
        CHECK(left == a);
        CHECK(right == a);

        // antipode: m(S ⊗ id)Delta(a) = eps(a) 1
        NF anti;
        for (auto& [ab, v] : a.coproduct().terms())
            anti += (mono_elem(ab.first).antipode() * mono_elem(ab.second)).scaled(v);
        CHECK(anti == NF(a.counit()));

        // star structure
        NF b = random_elem(seed);
        CHECK((a * b).star() == b.star() * a.star());
        CHECK(a.star().star() == a);
        NfTensor dstar = a.star().coproduct();
        NfTensor starred;
        for (auto& [ab, v] : a.coproduct().terms()) {
            NF l = mono_elem(ab.first).star(), r = mono_elem(ab.second).star();
            for (auto& [ml, cl] : l.terms())
                for (auto& [mr, cr] : r.terms()) starred.add(ml, mr, v * cl * cr);
        }
        CHECK(dstar.terms() == starred.terms());
    }
}

TEST_CASE("closed-form invariant integral values") {
    CHECK(haar_closed_form(1, 0, 0, 0) == RatQ(1));
    RatQ want(LaurentQ::q_pow(1) * (LaurentQ(1) - LaurentQ::q_pow(2)),
              LaurentQ::q_pow(4) - LaurentQ(1));
    CHECK(haar_closed_form(1, 0, 1, 1) == want);
    CHECK(haar_closed_form(1, 2, 1, 1).is_zero());
    CHECK(haar_closed_form(2, 1, 1, 1).is_zero());
    CHECK(haar_closed_form(1, 0, 2, 1).is_zero());
}

TEST_CASE("left and right invariance of the integral") {
    for (int fam = 1; fam <= 2; ++fam)
        for (long m = (fam == 1 ? 0 : 1); m <= 4; ++m)
            for (long p = 0; m + p <= 4; ++p)
                for (long r = 0; m + p + r <= 4; ++r) {
                    NF a = NF::monomial(fam, m, p, r);
                    RatQ h = haar_closed_form(a);
                    NF left, right;
                    for (auto& [xy, v] : a.coproduct().terms()) {
                        left += mono_elem(xy.first,
                                          v * haar_closed_form(mono_elem(xy.second)));
                        right += mono_elem(xy.second,
                                           v * haar_closed_form(mono_elem(xy.first)));
                    }
                    CHECK(left == NF(h));
                    CHECK(right == NF(h));
                }
}

TEST_CASE("shift representation of generators") {
    QParams par = QParams::exact(Rational(2), 8);
    auto p12 = pi_su2<EdgeScalar>(c(1, 2), par);
    CHECK(p12.at(3, 3) == EdgeScalar(RatQ::q_pow(-4)));
    CHECK(p12.bandwidth == 0);

    auto p11 = pi_su2<EdgeScalar>(c(1, 1), par);
    for (int r = 0; r < par.trunc; ++r) CHECK(p11.at(r, 0).is_zero());
    CHECK(p11.at(0, 1) == EdgeScalar::edge(1));

    auto p21 = pi_su2<EdgeScalar>(c(2, 1), par);
    auto prod = p21 * p12;
    for (int k = 0; k < par.trunc; ++k) {
        EdgeScalar want = EdgeScalar(RatQ::q_pow(-2 * k - 1));
        CHECK(prod.at(k, k) == EdgeScalar(0) - want);
    }
}

TEST_CASE("representation property on exact bands") {
    QParams par = QParams::exact(Rational(2), 12);
    unsigned seed = 5;
    for (int trial = 0; trial < 30; ++trial) {
        NF a = random_elem(seed), b = random_elem(seed);
        auto pa = pi_su2<EdgeScalar>(a, par);
        auto pb = pi_su2<EdgeScalar>(b, par);
        auto pab = pi_su2<EdgeScalar>(a * b, par);
        auto prod = pa * pb;
        int band = std::min(pab.exact_band, prod.exact_band);
        REQUIRE(band > 0);
        for (int r = 0; r < band; ++r)
            for (int cc = 0; cc < band; ++cc) CHECK(pab.at(r, cc) == prod.at(r, cc));
        // star representation: pi(a*) = pi(a)^dagger on the exact band
        auto pastar = pi_su2<EdgeScalar>(a.star(), par);
        auto padj = pa.adjoint();
        for (int r = 0; r < pa.exact_band; ++r)
            for (int cc = 0; cc < pa.exact_band; ++cc)
                CHECK(pastar.at(r, cc) == padj.at(r, cc));
    }
}

TEST_CASE("diagonal entries of generator words are rational") {
    QParams par = QParams::exact(Rational(2), 10);
    unsigned seed = 77;
    for (int trial = 0; trial < 40; ++trial) {
        seed = seed * 1103515245u + 12345u;
        int len = 1 + int((seed >> 16) % 4);
        NF w = NF::one();
        for (int g = 0; g < len; ++g) {
            seed = seed * 1103515245u + 12345u;
            int i = 1 + int((seed >> 16) % 2), j = 1 + int((seed >> 18) % 2);
            w = w * c(i, j);
        }
        auto op = pi_su2<EdgeScalar>(w, par);
        for (int k = 0; k < op.exact_band; ++k) CHECK(op.at(k, k).is_rational());
    }
}

TEST_CASE("float mode agrees with exact evaluation") {
    QParams pe = QParams::exact(Rational(3, 2), 10);
    QParams pf = QParams::flt(1.5, 10);
    unsigned seed = 99;
    for (int trial = 0; trial < 10; ++trial) {
        NF a = random_elem(seed);
        for (long d : {1L, 2L}) {
            auto ex = pi_su2<EdgeScalar>(a, pe, d);
            auto fl = pi_su2<std::complex<double>>(a, pf, d);
            for (auto& [rc, v] : ex.e)
                CHECK(fl.at(rc.first, rc.second).real() ==
                      doctest::Approx(v.eval(1.5)).epsilon(1e-12));
        }
    }
}

TEST_CASE("truncation enlargement preserves the exact band") {
    NF a = c(1, 1) * c(2, 2) * c(2, 1) * c(1, 2);
    QParams small = QParams::exact(Rational(2), 6);
    QParams big = QParams::exact(Rational(2), 12);
    auto s = pi_su2<EdgeScalar>(a, small);
    auto b = pi_su2<EdgeScalar>(a, big);
    for (int r = 0; r < s.exact_band; ++r)
        for (int cc = 0; cc < s.exact_band; ++cc) CHECK(s.at(r, cc) == b.at(r, cc));
}
