#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "cqk/rootdata.hpp"

using namespace cqk;

namespace {

WeightQ wq(std::initializer_list<long> c) {
    WeightQ w;
    for (long x : c) w.emplace_back(x);
    return w;
}

// Brute-force enumeration of W: all distinct action matrices reachable from
// the identity, with a shortest word for each.
std::map<std::vector<std::vector<Rational>>, WeylWord> enumerate_weyl(const CartanDatum& cd) {
    std::map<std::vector<std::vector<Rational>>, WeylWord> seen;
    std::vector<WeylWord> frontier = {{}};
    seen[weyl_matrix(cd, {})] = {};
    while (!frontier.empty()) {
        std::vector<WeylWord> next;
        for (const auto& w : frontier)
            for (int i = 1; i <= cd.rank; ++i) {
                WeylWord v = w;
                v.push_back(i);
                auto m = weyl_matrix(cd, v);
                if (seen.emplace(m, v).second) next.push_back(v);
            }
        frontier = std::move(next);
    }
    return seen;
}

}  // namespace

TEST_CASE("build_cartan desk-scale groups") {
    auto a1 = build_cartan('A', 1);
    CHECK(a1.pos_roots.size() == 1);
    CHECK(a1.d == std::vector<long>{1});

    auto a2 = build_cartan('A', 2);
    CHECK(a2.pos_roots == std::vector<RootZ>{{0, 1}, {1, 0}, {1, 1}});
    CHECK(a2.d == std::vector<long>({1, 1}));

    auto b2 = build_cartan('B', 2);
    CHECK(b2.d == std::vector<long>({2, 1}));
    CHECK(b2.a == std::vector<std::vector<long>>({{2, -1}, {-2, 2}}));
    CHECK(b2.pos_roots.size() == 4);
    // long root has squared length 4
    CHECK(pairing(b2, b2.simple_root_weight(1), b2.simple_root_weight(1)) == Rational(4));
    CHECK(pairing(b2, b2.simple_root_weight(2), b2.simple_root_weight(2)) == Rational(2));

    auto a3 = build_cartan('A', 3);
    CHECK(a3.pos_roots.size() == 6);
}

TEST_CASE("build_cartan invariants across series") {
    for (auto& [s, r, npos] : std::vector<std::tuple<char, int, size_t>>{
             {'A', 4, 10}, {'C', 3, 9}, {'D', 4, 12}, {'F', 4, 24}, {'G', 2, 6}}) {
        auto cd = build_cartan(s, r);
        CHECK(cd.pos_roots.size() == npos);
        CHECK(cd.pos_roots.size() == size_t(longest_element(cd).size()));
        // short roots have squared length 2
        Rational minlen;
        for (int i = 1; i <= cd.rank; ++i) {
            Rational l = pairing(cd, cd.simple_root_weight(i), cd.simple_root_weight(i));
            if (minlen == 0 || l < minlen) minlen = l;
        }
        CHECK(minlen == Rational(2));
    }
    CHECK_THROWS_AS(build_cartan('G', 3), Error);
    CHECK_THROWS_AS(build_cartan('X', 2), Error);
    CHECK(build_cartan("B2").label == "B2");
    CHECK_THROWS_AS(build_cartan("Zq"), Error);
}

TEST_CASE("pairing") {
    auto a2 = build_cartan('A', 2);
    CHECK(pairing(a2, a2.simple_root_weight(1), a2.simple_root_weight(1)) == Rational(2));
    CHECK(pairing(a2, wq({1, 0}), a2.simple_root_weight(2)) == Rational(0));
    // rho = alpha1 + alpha2 in A2
    WeightQ sum = a2.simple_root_weight(1);
    auto al2 = a2.simple_root_weight(2);
    for (size_t k = 0; k < sum.size(); ++k) sum[k] += al2[k];
    CHECK(sum == a2.rho());
    CHECK(pairing(a2, a2.rho(), sum) == Rational(2));
    CHECK(pairing_root(a2, a2.rho(), {1, 1}) == Rational(2));
    CHECK(two_rho_pair(a2, {1, 1}) == 4);
    CHECK_THROWS_AS(pairing(a2, wq({1}), wq({1, 0})), Error);
}

TEST_CASE("weyl_apply") {
    auto a2 = build_cartan('A', 2);
    CHECK(weyl_apply(a2, {1}, a2.simple_root_weight(1)) ==
          weyl_apply(a2, {}, [&] {
              auto v = a2.simple_root_weight(1);
              for (auto& c : v) c = -c;
              return v;
          }()));
    CHECK(weyl_apply_root(a2, {1}, {0, 1}) == RootZ({1, 1}));  // s1(a2) = a1+a2
    CHECK(weyl_apply(a2, {}, wq({3, -2})) == wq({3, -2}));
    // pairing preservation
    auto b2 = build_cartan('B', 2);
    WeylWord w = {1, 2, 1};
    WeightQ la = wq({2, -1}), mu = wq({-3, 5});
    CHECK(pairing(b2, weyl_apply(b2, w, la), weyl_apply(b2, w, mu)) == pairing(b2, la, mu));
}

TEST_CASE("reduce_word") {
    auto a2 = build_cartan('A', 2);
    CHECK(reduce_word(a2, {1, 1}).empty());
    CHECK(reduce_word(a2, {1, 2, 1, 2}) == WeylWord({2, 1}));
    CHECK(weyl_equal(a2, {1, 2, 1, 2}, {2, 1}));
    CHECK(reduce_word(a2, {1, 2, 1}) == WeylWord({1, 2, 1}));
    CHECK_THROWS_AS(reduce_word(a2, {3}), Error);
}

TEST_CASE("reduce_word is the lex-least reduced word (brute force)") {
    for (const char* lbl : {"A2", "B2"}) {
        auto cd = build_cartan(lbl);
        auto W = enumerate_weyl(cd);
        CHECK(W.size() == (cd.label == "A2" ? 6u : 8u));
        for (auto& [mat, shortest] : W) {
            // collect all reduced words of this element by DFS
            std::set<WeylWord> reduced;
            std::vector<WeylWord> stack = {{}};
            size_t len = shortest.size();
            while (!stack.empty()) {
                WeylWord w = stack.back();
                stack.pop_back();
                if (w.size() == len) {
                    if (weyl_matrix(cd, w) == mat && is_reduced(cd, w)) reduced.insert(w);
                    continue;
                }
                for (int i = 1; i <= cd.rank; ++i) {
                    WeylWord v = w;
                    v.push_back(i);
                    if (is_reduced(cd, v)) stack.push_back(v);
                }
            }
            REQUIRE(!reduced.empty());
            // canonicalization from any word of this element hits the lex min
            WeylWord probe = shortest;
            probe.insert(probe.end(), {1, 1});
            CHECK(reduce_word(cd, probe) == *reduced.begin());
            // inversion sets agree across reduced words, as sets
            auto ref_vec = inversion_set(cd, *reduced.begin());
            std::set<RootZ> ref(ref_vec.begin(), ref_vec.end());
            for (const auto& w : reduced) {
                auto inv = inversion_set(cd, w);
                CHECK(std::set<RootZ>(inv.begin(), inv.end()) == ref);
                CHECK(inv.size() == w.size());
            }
        }
    }
}

TEST_CASE("longest_element") {
    CHECK(longest_element(build_cartan('A', 1)) == WeylWord({1}));
    auto a2 = build_cartan('A', 2);
    auto w0 = longest_element(a2);
    CHECK(w0.size() == 3);
    CHECK(weyl_equal(a2, w0, {1, 2, 1}));
    auto b2 = build_cartan('B', 2);
    auto w0b = longest_element(b2);
    CHECK(w0b.size() == 4);
    // for every simple i there is a reduced form ending in s_i
    for (auto* cdp : {&a2, &b2})
        for (int i = 1; i <= cdp->rank; ++i) {
            WeylWord w = longest_element(*cdp);
            w.push_back(i);  // w0 s_i is shorter, so w0 = (w0 s_i) s_i reduced
            CHECK(weyl_length(*cdp, w) == int(longest_element(*cdp).size()) - 1);
        }
    // w0 sends all positive roots negative
    for (const auto& beta : a2.pos_roots) {
        RootZ img = weyl_apply_root(a2, w0, beta);
        CHECK(std::all_of(img.begin(), img.end(), [](long c) { return c <= 0; }));
    }
}

TEST_CASE("inversion_set") {
    auto a2 = build_cartan('A', 2);
    auto inv = inversion_set(a2, {1, 2, 1});
    REQUIRE(inv.size() == 3);
    CHECK(inv[0] == RootZ({0, 1}));
    CHECK(inv[1] == RootZ({1, 1}));
    CHECK(inv[2] == RootZ({1, 0}));
    CHECK(std::set<RootZ>(inv.begin(), inv.end()) ==
          std::set<RootZ>(a2.pos_roots.begin(), a2.pos_roots.end()));

    auto a1 = build_cartan('A', 1);
    CHECK(inversion_set(a1, {1}) == std::vector<RootZ>{{1}});

    auto inv12 = inversion_set(a2, {1, 2});
    CHECK(std::set<RootZ>(inv12.begin(), inv12.end()) ==
          std::set<RootZ>({{0, 1}, {1, 1}}));
    // the listed roots are exactly the positive roots made negative by w
    for (const auto& beta : inv12) {
        RootZ img = weyl_apply_root(a2, {1, 2}, beta);
        CHECK(std::any_of(img.begin(), img.end(), [](long c) { return c < 0; }));
    }
    CHECK_THROWS_AS(inversion_set(a2, WeylWord({1, 1})), Error);
}

TEST_CASE("weyl_torus_exponents") {
    auto a1 = build_cartan('A', 1);
    CHECK(weyl_torus_exponents(a1, {}) == std::vector<std::vector<long>>({{1}}));
    CHECK(weyl_torus_exponents(a1, {1}) == std::vector<std::vector<long>>({{-1}}));

    auto a2 = build_cartan('A', 2);
    // s1: alpha1v -> -alpha1v, alpha2v -> alpha1v + alpha2v
    CHECK(weyl_torus_exponents(a2, {1}) ==
          std::vector<std::vector<long>>({{-1, 1}, {0, 1}}));

    // contravariant composition m(ww') = m(w') m(w)
    auto b2 = build_cartan('B', 2);
    WeylWord u = {1, 2}, v = {2, 1, 2};
    WeylWord uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    auto mu = weyl_torus_exponents(b2, u);
    auto mv = weyl_torus_exponents(b2, v);
    auto muv = weyl_torus_exponents(b2, uv);
    int n = b2.rank;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long s = 0;
            for (int k = 0; k < n; ++k) s += mv[size_t(i)][size_t(k)] * mu[size_t(k)][size_t(j)];
            CHECK(muv[size_t(i)][size_t(j)] == s);
        }
    // inverse word gives inverse matrix
    WeylWord uinv(u.rbegin(), u.rend());
    auto mi = weyl_torus_exponents(b2, uinv);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long s = 0;
            for (int k = 0; k < n; ++k) s += mi[size_t(i)][size_t(k)] * mu[size_t(k)][size_t(j)];
            CHECK(s == (i == j ? 1 : 0));
        }
}
