#include <doctest.h>

#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

#include "helpers.hpp"
#include "pqm/curvekit.hpp"
#include "pqm/morcx.hpp"
#include "pqm/tanglezoo.hpp"

using namespace pqm;

namespace {

struct G {
    std::string id;
    char site;
    int delta2;
    Alex2 alex2;
};
struct A {
    std::string from, to;
    std::vector<std::string> label;
};

// exact comparison against a hand transcription: generator for generator,
// arrow for arrow
void check_golden(const PqModule& m, const std::vector<G>& gens, const std::vector<A>& arrows) {
    CAPTURE(m.name);
    REQUIRE(m.size() == gens.size());
    for (auto& g : gens) {
        CAPTURE(g.id);
        const int i = m.index_of(g.id);
        REQUIRE(i >= 0);
        CHECK(m.gens[i].site == site_from_char(g.site));
        CHECK(m.gens[i].delta2 == g.delta2);
        CHECK(m.gens[i].alex2 == g.alex2);
    }
    CHECK(m.arrow_count() == arrows.size());
    for (auto& a : arrows) {
        CAPTURE(a.from);
        CAPTURE(a.to);
        CHECK(m.label(m.index_of(a.from), m.index_of(a.to)) == AlgElem::parse(a.label));
    }
}

}  // namespace

TEST_CASE("every builder validates and is reduced") {
    for (auto& s : testutil::builder_specs()) {
        CAPTURE(s);
        const PqModule m = build(s);
        const auto r = validate(m);
        for (auto& i : r.issues) MESSAGE(i);
        CHECK(r.ok);
        CHECK(is_reduced(m));
        CHECK(m.killed == 0);
    }
}

TEST_CASE("spec strings") {
    for (auto& s : testutil::builder_specs()) CHECK(TangleSpec::parse(s).to_string() == s);
    CHECK(TangleSpec::parse("rational:6/4").to_string() == "rational:6/4");
    CHECK_THROWS(TangleSpec::parse("banana"));
    CHECK_THROWS(TangleSpec::parse("pretzel:1"));
    CHECK_THROWS(TangleSpec::parse("twist:x"));
    CHECK_THROWS(build("rational:6/4"));  // not reduced
    CHECK_THROWS(build("pretzel:0,1"));
}

TEST_CASE("golden: trivial tangles") {
    check_golden(zero_tangle(), {{"b", 'b', 0, {0, 0}}, {"d", 'd', 0, {0, 0}}},
                 {{"d", "b", {"p34", "q21"}}, {"b", "d", {"p12", "q43"}}});
    check_golden(infinity_tangle(), {{"a", 'a', 0, {0, 0}}, {"c", 'c', 0, {0, 0}}},
                 {{"a", "c", {"p41", "q32"}}, {"c", "a", {"p23", "q14"}}});
}

TEST_CASE("golden: crossings") {
    check_golden(pos_crossing(),
                 {{"a", 'a', 0, {1, -1}}, {"b", 'b', 1, {-1, -1}}, {"c", 'c', 0, {-1, 1}}, {"d", 'd', 1, {1, 1}}},
                 {{"d", "a", {"p234"}},
                  {"b", "a", {"q143"}},
                  {"a", "d", {"p1"}},
                  {"c", "d", {"q4"}},
                  {"c", "b", {"p3"}},
                  {"a", "b", {"q2"}},
                  {"b", "c", {"p412"}},
                  {"d", "c", {"q321"}}});
    check_golden(neg_crossing(),
                 {{"a", 'a', 0, {-1, 1}}, {"b", 'b', -1, {1, 1}}, {"c", 'c', 0, {1, -1}}, {"d", 'd', -1, {-1, -1}}},
                 {{"d", "a", {"q1"}},
                  {"b", "a", {"p2"}},
                  {"a", "d", {"q432"}},
                  {"c", "d", {"p123"}},
                  {"c", "b", {"q214"}},
                  {"a", "b", {"p341"}},
                  {"b", "c", {"q3"}},
                  {"d", "c", {"p4"}}});
}

TEST_CASE("golden: figure-eight modules") {
    check_golden(figure8_module(0),
                 {{"a", 'a', 0, {0, 0}}, {"b+", 'b', -1, {2, 0}}, {"b-", 'b', 1, {-2, 0}}, {"c", 'c', 0, {0, 0}}},
                 {{"a", "b-", {"q2"}},
                  {"b-", "a", {"q143"}},
                  {"b+", "a", {"p2"}},
                  {"a", "b+", {"p341"}},
                  {"b+", "c", {"q3"}},
                  {"c", "b+", {"q214"}},
                  {"b-", "c", {"p412"}},
                  {"c", "b-", {"p3"}}});
    check_golden(figure8_module(1),
                 {{"a", 'a', 0, {0, 0}}, {"d+", 'd', 1, {2, 0}}, {"d-", 'd', -1, {-2, 0}}, {"c", 'c', 0, {0, 0}}},
                 {{"d-", "a", {"q1"}},
                  {"a", "d-", {"q432"}},
                  {"d+", "a", {"p234"}},
                  {"a", "d+", {"p1"}},
                  {"d+", "c", {"q321"}},
                  {"c", "d+", {"q4"}},
                  {"d-", "c", {"p4"}},
                  {"c", "d-", {"p123"}}});
    CHECK(figure8_module(0).univariate);
    CHECK_THROWS(figure8_module(2));
}

TEST_CASE("twist tangles") {
    CHECK(equivalent(twist_tangle(1), pos_crossing()));
    CHECK(equivalent(twist_tangle(-1), neg_crossing()));
    CHECK(twist_tangle(0) == zero_tangle());
    for (int n = 1; n <= 5; ++n) {
        CAPTURE(n);
        const PqModule t = twist_tangle(n), u = twist_tangle(-n);
        CHECK(t.size() == static_cast<std::size_t>(2 + 2 * n));
        CHECK(validate(t).ok);
        CHECK(validate(u).ok);
        CHECK(t.matching == (n % 2 ? pos_crossing().matching : zero_tangle().matching));
        CHECK(equivalent(mirror(t), u));
        const CurveSet c = curves_of(t);
        REQUIRE(c.loops.size() == 1);
        CHECK(is_embedded(c.loops[0]));
    }
    CHECK(equivalent(mirror(pos_crossing()), neg_crossing()));
}

TEST_CASE("pretzel tangles") {
    const PqModule p = pretzel_tangle(1, 1);
    CHECK(p.size() == 18);
    const CurveSet c = curves_of(p);
    CHECK(c.loops.size() == 3);
    for (auto& l : c.loops) CHECK(l.dim() == 1);
    CHECK(c.generator_count() == 18);
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 2; ++m) {
            CAPTURE(n);
            CAPTURE(m);
            const PqModule q = pretzel_tangle(n, m);
            CHECK(validate(q).ok);
            const CurveSet cs = curves_of(q);
            CHECK(cs.loops.size() == static_cast<std::size_t>(2 * n + 2 * m - 1));
            // the chessboard lists every generator exactly once, on its square
            const auto board = pretzel_chessboard(n, m);
            REQUIRE(board.size() == q.size());
            for (std::size_t i = 0; i < board.size(); ++i) {
                CHECK(q.gens[i].id == board[i].id);
                CHECK(q.gens[i].site == board[i].site);
                CHECK(q.gens[i].alex2 == Alex2{2 * board[i].t1, 2 * board[i].t2});
            }
        }
}

TEST_CASE("skein triangles") {
    for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        const Morphism f = skein_morphism(n);
        CHECK(is_cycle(twist_tangle(n), twist_tangle(-n), f));
        const PqModule cone = reduce(mapping_cone(twist_tangle(n), twist_tangle(-n), f));
        CHECK(validate(cone).ok);
        const PqModule v = tensor_v(zero_tangle(), {0, {2 * n, 0}}, {0, {-2 * n, 0}});
        CHECK(equivalent(cone, v, GradingMode::Univariate, false));
    }
    // for even n both colours survive and each carries half the twist
    const PqModule c2 = reduce(mapping_cone(twist_tangle(2), twist_tangle(-2), skein_morphism(2)));
    CHECK(equivalent(c2, tensor_v(zero_tangle(), {0, {2, 2}}, {0, {-2, -2}}), GradingMode::Full, false));
    CHECK_THROWS(skein_morphism(0));
}

TEST_CASE("singular crossing cones are the figure-eight modules") {
    for (int v = 0; v < 2; ++v) {
        CAPTURE(v);
        const SingularMap s = singular_map(v);
        CHECK(is_cycle(s.src, s.dst, s.f));
        const PqModule cone = reduce(mapping_cone(s.src, s.dst, s.f, s.shift));
        CHECK(validate(cone).ok);
        CHECK(equivalent(cone, figure8_module(v), GradingMode::Full, false));
    }
}

TEST_CASE("site symmetries") {
    for (int r = 0; r < 4; ++r)
        for (int f = 0; f < 2; ++f) {
            const SiteSymmetry s{r, f == 1};
            std::set<int> image;
            for (int site = 1; site <= 4; ++site) image.insert(apply_symmetry(site, s));
            CHECK(image.size() == 4);
        }
    const PqModule z = relabel_sites(zero_tangle(), {1, false});
    CHECK(validate(z).ok);
    CHECK(equivalent(z, infinity_tangle(), GradingMode::Ungraded));
    CHECK(relabel_sites(relabel_sites(pos_crossing(), {2, false}), {2, false}) == pos_crossing());
}

TEST_CASE("mutation invariance of pretzel tangles") {
    for (int n = 1; n <= 2; ++n)
        for (int m = 1; m <= 2; ++m) {
            CAPTURE(n);
            CAPTURE(m);
            const PqModule p = pretzel_tangle(n, m);
            const PqModule q = mutate(p);
            CHECK(validate(q).ok);
            CHECK(q.matching == p.matching);
            CHECK(equivalent(p, q, GradingMode::Univariate, false));
        }
}

TEST_CASE("rational tangles") {
    int count = 0;
    for (int p = -8; p <= 8; ++p)
        for (int q = 1; q <= 8; ++q) {
            if (std::gcd(p, q) != 1) continue;
            CAPTURE(p);
            CAPTURE(q);
            const PqModule m = rational_tangle(p, q);
            CHECK(validate(m).ok);
            const CurveSet c = curves_of(m);
            REQUIRE(c.loops.size() == 1);
            CHECK(c.loops[0].dim() == 1);
            CHECK(is_embedded(c.loops[0]));
            CHECK(equivalent(mirror(m), rational_tangle(-p, q)));
            ++count;
        }
    CHECK(count >= 20);
    CHECK(equivalent(rational_tangle(0, 1), zero_tangle()));
    CHECK(equivalent(rational_tangle(1, 0), infinity_tangle()));
    for (int n = -4; n <= 4; ++n) CHECK(equivalent(rational_tangle(n, 1), twist_tangle(n)));
    // distinct slopes give distinct curves
    CHECK_FALSE(equivalent(rational_tangle(3, 2), rational_tangle(2, 3), GradingMode::Ungraded));
    CHECK_FALSE(equivalent(rational_tangle(3, 2), rational_tangle(-3, 2), GradingMode::Ungraded));
}

TEST_CASE("rational slopes: quarter turn and mirror invert the slope") {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{3, 2}, {5, 3}, {1, 2}, {4, 3}, {7, 5}, {-3, 2}}) {
        CAPTURE(p);
        CAPTURE(q);
        const PqModule a = rational_tangle(p, q);
        const PqModule b = q > 0 && p > 0 ? rational_tangle(q, p) : rational_tangle(-q, -p);
        CHECK(equivalent(mirror(relabel_sites(a, {1, false})), b, GradingMode::Ungraded));
    }
}
