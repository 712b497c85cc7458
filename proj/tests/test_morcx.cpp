#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "pqm/morcx.hpp"
#include "pqm/tanglezoo.hpp"

using namespace pqm;

namespace {

Morphism random_morphism(std::mt19937& rng, const PqModule& s, const PqModule& d, int degree2) {
    Morphism f;
    f.degree2 = degree2;
    for (auto& e : mor_basis(s, d, degree2))
        if (rng() % 2) f.add(e.from, e.to, e.path);
    return f;
}

}  // namespace

TEST_CASE("identity is a cycle") {
    for (auto& s : testutil::builder_specs()) {
        CAPTURE(s);
        const PqModule m = build(s);
        const Morphism id = identity_morphism(m);
        CHECK(morphism_well_formed(m, m, id));
        CHECK(is_cycle(m, m, id));
        CHECK(apply_d(m, m, id).is_zero());
    }
}

TEST_CASE("the differential is a cycle of degree one") {
    const PqModule x = pos_crossing();
    const Morphism d = differential(x);
    CHECK(d.degree2 == 2);
    CHECK(morphism_well_formed(x, x, d));
}

TEST_CASE("D squares to zero on random morphisms") {
    std::mt19937 rng(41);
    const std::vector<std::string> specs = {"zero", "inf", "x+", "x-", "twist:2", "pretzel:1,1", "fig8:a"};
    for (int t = 0; t < 200; ++t) {
        const PqModule a = build(specs[rng() % specs.size()]);
        const PqModule b = build(specs[rng() % specs.size()]);
        const int deg = 2 * static_cast<int>(rng() % 7) - 6 + static_cast<int>(rng() % 2);
        const Morphism f = random_morphism(rng, a, b, deg);
        REQUIRE(morphism_well_formed(a, b, f));
        const Morphism df = apply_d(a, b, f);
        CHECK(df.degree2 == deg + 2);
        CHECK(morphism_well_formed(a, b, df));
        CHECK(apply_d(a, b, df).is_zero());
    }
}

TEST_CASE("D is a derivation for composition") {
    std::mt19937 rng(43);
    const PqModule a = build("x+"), b = build("twist:-2"), c = build("zero");
    for (int t = 0; t < 100; ++t) {
        const Morphism f = random_morphism(rng, a, b, static_cast<int>(rng() % 5) - 2);
        const Morphism g = random_morphism(rng, b, c, static_cast<int>(rng() % 5) - 2);
        const Morphism lhs = apply_d(a, c, compose(g, f));
        const Morphism rhs = add(compose(apply_d(b, c, g), f), compose(g, apply_d(a, b, f)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("composition") {
    const PqModule z = zero_tangle();
    const Morphism id = identity_morphism(z);
    Morphism f;
    f.degree2 = 2;
    f.add(z.index_of("b"), z.index_of("d"), AlgElem::parse({"p12"}));
    CHECK(compose(id, f) == f);
    CHECK(compose(f, id) == f);
    CHECK(compose(f, f).is_zero());
    CHECK(compose(f, f).degree2 == 4);
    std::mt19937 rng(8);
    const PqModule x = pos_crossing();
    for (int t = 0; t < 100; ++t) {
        const Morphism a = random_morphism(rng, x, x, static_cast<int>(rng() % 4));
        const Morphism b = random_morphism(rng, x, x, static_cast<int>(rng() % 4));
        const Morphism c = random_morphism(rng, x, x, static_cast<int>(rng() % 4));
        CHECK(compose(compose(c, b), a) == compose(c, compose(b, a)));
    }
}

TEST_CASE("morphism basis") {
    const PqModule z = zero_tangle();
    // degree 0: the two identities
    auto b0 = mor_basis(z, z, 0);
    CHECK(b0.size() == 2);
    for (auto& e : b0) CHECK(e.path.is_idem());
    // degree 2 (doubled): length-2 paths b->d and d->b on both faces
    auto b2 = mor_basis(z, z, 4);
    CHECK(b2.size() == 4);
    // paths of length l exist between sites at cyclic distance l mod 4
    for (auto& e : mor_basis(pos_crossing(), pos_crossing(), 5)) {
        CHECK(e.path.source == pos_crossing().gens[e.from].site);
        CHECK(e.path.target() == pos_crossing().gens[e.to].site);
    }
}

TEST_CASE("window homology examples") {
    const PqModule z = zero_tangle();
    CHECK(mor_homology_window(z, z).total() == 2);
    CHECK(mor_homology_window(z, z).stabilized);
    CHECK(mor_homology_window(z, infinity_tangle()).total() == 2);
    // a contractible module has no homology
    const PqModule c = mapping_cone(z, z, identity_morphism(z));
    CHECK(mor_homology_window(c, z).total() == 0);
    CHECK(mor_homology_window(z, c).total() == 0);
}

TEST_CASE("window homology is invariant under grading shifts") {
    const PqModule x = pos_crossing();
    const PqModule y = shift_gradings(x, {2, {0, 0}});
    CHECK(mor_homology_window(x, x).total() == mor_homology_window(y, x).total());
    CHECK(mor_homology_window(x, x).normalized() == mor_homology_window(x, y).normalized());
}

TEST_CASE("graded dimensions") {
    GradedDims g;
    g.add(2, {1, -1}, 3);
    g.add(0, {0, 0}, 1);
    g.add(2, {1, -1}, 1);
    CHECK(g.total() == 5);
    CHECK(g.dims.at({2, 1, -1}) == 4);
    const auto n = g.normalized();
    CHECK(n.total() == 5);
    CHECK(n.dims.count({0, 0, 0}) == 1);
    const auto u = g.univariate_view();
    CHECK(u.univariate);
    CHECK(u.dims.at({2, 0, 0}) == 4);
    CHECK(g.delta_support() == std::map<int, int>{{0, 1}, {2, 4}});
}

TEST_CASE("colour transport") {
    const Matching even{{{{2, 1}, {3, 4}}}};
    const Matching odd{{{{2, 4}, {3, 1}}}};
    CHECK_FALSE(colour_transport(even, even).univariate);
    CHECK(transport({1, 2}, colour_transport(even, even)) == Alex2{1, 2});
    CHECK(colour_transport(even, odd).univariate);
}
