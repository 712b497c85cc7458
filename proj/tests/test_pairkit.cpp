#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "helpers.hpp"
#include "pqm/pairkit.hpp"
#include "pqm/tanglezoo.hpp"

using namespace pqm;

namespace {

const Matching kEven{{{{2, 1}, {3, 4}}}};
const Matching kOdd{{{{2, 4}, {3, 1}}}};
const Matching kInf{{{{3, 2}, {4, 1}}}};

// multiset of Alexander bigradings (doubled) at each relative delta level
std::map<int, std::multiset<Alex2>> table(const GradedDims& d) {
    std::map<int, std::multiset<Alex2>> out;
    for (auto& [k, n] : d.normalized().dims)
        for (int i = 0; i < n; ++i) out[std::get<0>(k)].insert({std::get<1>(k), std::get<2>(k)});
    return out;
}

// components of the closure by walking the arcs: an independent count
int count_components(const Matching& a, const Matching& b) {
    std::map<int, std::set<int>> adj;
    for (const Matching* m : {&a, &b})
        for (auto& [i, o] : m->pairs) {
            adj[i].insert(o);
            adj[o].insert(i);
        }
    std::set<int> seen;
    int comps = 0;
    for (int s = 1; s <= 4; ++s) {
        if (seen.count(s)) continue;
        ++comps;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            if (!seen.insert(x).second) continue;
            for (int y : adj[x]) stack.push_back(y);
        }
    }
    return comps;
}

}  // namespace

TEST_CASE("the standard AA structure passes its own checks") {
    for (auto& m : {kEven, kOdd, kInf}) {
        const AAStructure p = standard_p(m);
        CHECK_FALSE(p.gens.empty());
        CHECK_FALSE(p.actions.empty());
        CHECK(check_aa_structure(p).empty());
        for (auto& g : p.gens) CHECK(p.index_of(g.name) >= 0);
    }
}

TEST_CASE("stabilization exponents") {
    for (auto& a : {kEven, kOdd, kInf})
        for (auto& b : {kEven, kOdd, kInf}) {
            const LinkInfo li = stabilization_exponent(a, b);
            CHECK(li.components == count_components(a, b));
            CHECK(li.stabilization == 2 + 2 - li.components - 2);
        }
    CHECK(stabilization_exponent(kEven, kEven).components == 2);
    CHECK(stabilization_exponent(kEven, kInf).components == 1);
    CHECK(stabilization_exponent(kEven, kInf).stabilization == 1);
}

TEST_CASE("two trivial tangles give the two-component unlink") {
    const auto r = box_pair(zero_tangle(), zero_tangle());
    CHECK(r.dims.total() == 2);
    CHECK(r.link.components == 2);
    CHECK(r.complex.d_squared_zero);
    CHECK(table(r.dims) == std::map<int, std::multiset<Alex2>>{{0, {{0, 0}}}, {2, {{0, 0}}}});
}

TEST_CASE("two crossings give the Hopf link") {
    const PqModule a = reverse(pos_crossing()), b = pos_crossing();
    const auto r = box_pair(a, b);
    CHECK(r.dims.total() == 4);
    CHECK(r.link.components == 2);
    CHECK(r.dims.note.empty());
    CHECK(table(r.dims) == std::map<int, std::multiset<Alex2>>{{0, {{-2, -2}, {-2, 2}, {2, -2}, {2, 2}}}});
    CHECK(mor_pair(a, b).total() == 4);
    CHECK(lagrangian_pair_modules(a, b).total == 4);
}

TEST_CASE("trivial tangle against three twists gives the trefoil") {
    for (int n : {3, -3}) {
        CAPTURE(n);
        const auto r = box_pair(zero_tangle(), twist_tangle(n));
        CHECK(r.dims.total() == 6);
        CHECK(r.link.components == 1);
        CHECK(r.dims.univariate);
        // (t + 1/t)(t^2 + 1 + 1/t^2), doubled exponents
        std::multiset<int> want;
        for (int x : {1, -1})
            for (int y : {2, 0, -2}) want.insert(2 * (x + y));
        const auto t = table(r.dims);
        REQUIRE(t.size() == 1);
        std::multiset<int> got;
        for (auto& a : t.begin()->second) got.insert(a[0]);
        CHECK(got == want);
        CHECK(mor_pair(zero_tangle(), twist_tangle(n)).total() == 6);
        CHECK(lagrangian_pair_modules(zero_tangle(), twist_tangle(n)).total == 6);
    }
}

TEST_CASE("Kinoshita-Terasaka pairing") {
    const PqModule p = pretzel_tangle(1, 1);
    const auto r = box_pair(mirror(reverse(p)), p);
    CHECK(r.dims.total() == 34);
    const auto t = table(r.dims);
    REQUIRE(t.size() == 2);
    CHECK(t.begin()->second == t.rbegin()->second);
    CHECK(t.begin()->second.size() == 17);
    CHECK(lagrangian_pair_modules(mirror(reverse(p)), p).total == 34);
}

TEST_CASE("lazy closure") {
    const PqModule p = pretzel_tangle(1, 1);
    const auto bd = omega_close(p, "b,d");
    CHECK(bd.dims.total() == 2);
    CHECK(bd.components == 1);
    CHECK(bd.dims.total() == box_pair(p, infinity_tangle()).dims.total());
    const auto ac = omega_close(p, "a,c");
    CHECK(ac.dims.total() == box_pair(p, zero_tangle()).dims.total());
    CHECK(ac.components == 2);
    for (auto& s : testutil::builder_specs()) {
        CAPTURE(s);
        const PqModule m = build(s);
        CHECK(omega_close(m, "a,c").dims.total() == box_pair(m, zero_tangle()).dims.total());
        CHECK(omega_close(m, "b,d").dims.total() == box_pair(m, infinity_tangle()).dims.total());
    }
    CHECK_THROWS_AS(omega_close(p, "a,b"), std::invalid_argument);
}

TEST_CASE("box pairing rejects unreduced and quotient inputs") {
    const PqModule z = zero_tangle();
    CHECK_THROWS_AS(box_pair(mapping_cone(z, z, identity_morphism(z)), z), std::invalid_argument);
    CHECK_THROWS_AS(box_pair(quotient_module(z, parse_kill_set({"p1"})), z), std::invalid_argument);
}

TEST_CASE("pairing is symmetric") {
    const auto& specs = testutil::builder_specs();
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = i; j < 12; ++j) {
            CAPTURE(specs[i]);
            CAPTURE(specs[j]);
            const PqModule a = build(specs[i]), b = build(specs[j]);
            CHECK(box_pair(a, b).dims.total() == box_pair(b, a).dims.total());
        }
}

TEST_CASE("minimal intersection examples") {
    const Word zero = curves_of(zero_tangle()).loops[0].word;
    const Word inf = curves_of(infinity_tangle()).loops[0].word;
    CHECK(min_intersection(zero, inf) == 2);
    CHECK(min_intersection(zero, zero) == 0);
    const Word x = curves_of(pos_crossing()).loops[0].word;
    CHECK(min_intersection(x.reversed(), x) == 0);
    CHECK(lagrangian_pair_modules(zero_tangle(), zero_tangle()).total == 2);
    CHECK(lagrangian_pair_modules(pretzel_tangle(1, 1), infinity_tangle()).total == 2);
}

TEST_CASE("minimal intersection is symmetric and rotation invariant") {
    std::vector<Word> words;
    for (auto& s : testutil::builder_specs())
        for (auto& l : curves_of(build(s)).loops) words.push_back(l.word);
    std::mt19937 rng(77);
    for (auto& u : words)
        for (auto& v : words) {
            const int k = min_intersection(u, v);
            CHECK(k >= 0);
            CHECK(min_intersection(v, u) == k);
            CHECK(min_intersection(u.rotated(static_cast<int>(rng() % u.size())), v.reversed()) == k);
        }
    for (auto& u : words) CHECK(self_intersection(u) == self_intersection(u.reversed()));
}

TEST_CASE("engines agree on builder pairs") {
    const std::vector<std::string> specs = {"zero", "inf", "x+", "x-", "twist:2", "twist:-3", "pretzel:1,1", "fig8:a"};
    int pairs = 0;
    for (auto& s1 : specs)
        for (auto& s2 : specs) {
            CAPTURE(s1);
            CAPTURE(s2);
            const PqModule a = build(s1), b = build(s2);
            const auto box = box_pair(a, b);
            const auto mor = mor_pair(a, b);
            const auto geo = lagrangian_pair_modules(a, b);
            CHECK(mor.stabilized);
            CHECK(box.dims.total() == mor.total());
            CHECK(box.dims.total() == geo.total);
            CHECK(box.dims.normalized().delta_support() == mor.normalized().delta_support());
            if (box.dims.note.empty() && !box.dims.univariate && !mor.univariate)
                CHECK(box.dims.normalized() == mor.normalized());
            ++pairs;
        }
    CHECK(pairs >= 20);
}

TEST_CASE("curve pairing details") {
    const auto r = lagrangian_pair(curves_of(zero_tangle()), curves_of(infinity_tangle()));
    CHECK(r.total == 2);
    REQUIRE(r.details.size() == 1);
    CHECK(r.details[0].find(": 2") != std::string::npos);
}
