#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "pqm/curvekit.hpp"
#include "pqm/pairkit.hpp"
#include "pqm/tanglezoo.hpp"

using namespace pqm;

namespace {

F2Matrix M(std::vector<std::vector<int>> rows) { return F2Matrix::from_rows(rows); }

const Matching kMatchings[] = {Matching{{{{2, 1}, {3, 4}}}}, Matching{{{{2, 4}, {3, 1}}}}, Matching{{{{3, 2}, {4, 1}}}}};

// random closed word: alternating faces, consecutive arcs distinct
Word random_word(std::mt19937& rng, int len) {
    for (;;) {
        Word w;
        const Face f0 = rng() % 2 ? Face::Front : Face::Back;
        for (int k = 0; k < len; ++k) {
            int arc;
            do arc = 1 + rng() % 4;
            while (k > 0 && arc == w.steps.back().arc);
            w.steps.push_back({arc, (k % 2 == 0) ? f0 : (f0 == Face::Front ? Face::Back : Face::Front)});
        }
        if (w.well_formed()) return w;
    }
}

// a random gradable curve set with up to three loops
CurveSet random_curve_set(std::mt19937& rng) {
    CurveSet c;
    c.matching = kMatchings[rng() % 3];
    const int nloops = 1 + rng() % 3;
    while (static_cast<int>(c.loops.size()) < nloops) {
        const Word w = random_word(rng, 2 * (1 + rng() % 4));
        const DotGrading wind = winding(w, c.matching, false);
        if (!(wind == DotGrading{})) continue;
        Loop l;
        l.word = w;
        l.local_system = testutil::random_invertible(rng, 1 + rng() % 3);
        l.delta2 = 2 * static_cast<int>(rng() % 5) - 4 + (rng() % 2);
        l.alex2 = {2 * static_cast<int>(rng() % 3) - 2, 2 * static_cast<int>(rng() % 3) - 2};
        c.loops.push_back(l);
    }
    return c;
}

}  // namespace

TEST_CASE("words") {
    const Word w = Word::parse("bF dB");
    CHECK(w.size() == 2);
    CHECK(w.to_string() == "bF dB");
    CHECK(w.well_formed());
    CHECK(w.primitive());
    CHECK_FALSE(Word::parse("bF dB bF dB").primitive());
    CHECK_THROWS(Word::parse("bF dF"));
    CHECK_THROWS(Word::parse("bF bB"));
    CHECK_THROWS(Word::parse("bF"));
    CHECK(w.rotated(1).to_string() == "dB bF");
    CHECK(w.reversed().reversed() == w);
    // front chords from s to s' have length (s - s') mod 4, back chords (s' - s) mod 4
    const Word u = Word::parse("aF dB");
    CHECK(u.chord_length(0) == 1);
    CHECK(u.chord_length(1) == 1);
    const Word v = Word::parse("aF bB");
    CHECK(v.chord_length(0) == 3);
    CHECK(v.chord_length(1) == 3);
    const Word x = Word::parse("aB cF");
    CHECK(x.chord_length(0) == 2);
}

TEST_CASE("normalised words are rotation and reversal invariant") {
    std::mt19937 rng(12);
    for (int t = 0; t < 300; ++t) {
        const Word w = random_word(rng, 2 * (1 + rng() % 5));
        const Word n = normalize_word(w).word;
        CHECK(normalize_word(n).word == n);
        CHECK(normalize_word(w.rotated(static_cast<int>(rng() % w.size()))).word == n);
        CHECK(normalize_word(w.reversed()).word == n);
        const auto wn = normalize_word(w);
        const Word base = wn.reversed ? w.reversed() : w;
        CHECK(base.rotated(wn.rotation) == n);
    }
}

TEST_CASE("precurve of the trivial tangle") {
    const Precurve p = to_precurve(zero_tangle());
    CHECK(p.total_dots() == 2);
    CHECK(p.dots(2) == 1);
    CHECK(p.dots(4) == 1);
    CHECK(p.dots(1) == 0);
    CHECK(p.faces[0].size() == 2);
    CHECK(p.faces[1].size() == 2);
    CHECK(p.simply_faced());
    CHECK_THROWS(to_precurve(quotient_module(zero_tangle(), parse_kill_set({"p1"}))));
}

TEST_CASE("precurve round trip is the identity on builders") {
    for (auto& s : testutil::builder_specs()) {
        CAPTURE(s);
        const PqModule m = build(s);
        CHECK(from_precurve(to_precurve(m)) == m);
    }
}

TEST_CASE("simply-faced and arrow-free forms stay homotopic") {
    for (auto& s : testutil::builder_specs()) {
        CAPTURE(s);
        const PqModule m = build(s);
        const Precurve sf = make_simply_faced(to_precurve(m));
        CHECK(sf.simply_faced());
        const PqModule msf = from_precurve(sf);
        CHECK(validate(msf).ok);
        CHECK(equivalent(msf, m, GradingMode::Full, false));
        const Precurve sa = simplify_arrows(sf);
        CHECK(sa.simply_faced());
        const PqModule msa = from_precurve(sa);
        CHECK(validate(msa).ok);
        CHECK(equivalent(msa, m, GradingMode::Full, false));
    }
}

TEST_CASE("decorations factor into crossings and arrows") {
    std::mt19937 rng(21);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + rng() % 5;
        const F2Matrix p = testutil::random_invertible(rng, n);
        F2Matrix prod = F2Matrix::identity(n);
        for (auto& item : decorate(p)) prod = prod * item_matrix(item, n);
        CHECK(prod == p);
    }
    CHECK(decorate(F2Matrix::identity(3)).empty());
    CHECK_THROWS(decorate(M({{1, 1}, {1, 1}})));
}

TEST_CASE("a doubled trivial loop with an arrow carries a Jordan block") {
    CurveSet c;
    c.matching = zero_tangle().matching;
    Loop l;
    l.word = curves_of(zero_tangle()).loops.front().word;
    l.local_system = F2Matrix::identity(2);
    c.loops.push_back(l);
    Precurve p = make_simply_faced(to_precurve(build_from_loops(c)));
    const int arc = p.front[1].size() == 2 ? 2 : 4;
    REQUIRE(p.dots(arc) == 2);
    p.P[arc - 1] = p.P[arc - 1] * M({{1, 1}, {0, 1}});
    const PqModule m = from_precurve(p);
    REQUIRE(validate(m).ok);
    const CurveSet out = curves_of(m);
    REQUIRE(out.loops.size() == 1);
    CHECK(out.loops[0].dim() == 2);
    CHECK(similar(out.loops[0].local_system, M({{1, 1}, {0, 1}})));
    // without the arrow the loop splits into two copies
    const CurveSet plain = curves_of(build_from_loops(c));
    REQUIRE(plain.loops.size() == 1);
    CHECK(similar(plain.loops[0].local_system, F2Matrix::identity(2)));
}

TEST_CASE("extraction of the trivial tangle") {
    const CurveSet c = curves_of(zero_tangle());
    REQUIRE(c.loops.size() == 1);
    CHECK(c.loops[0].word.size() == 2);
    CHECK(c.loops[0].dim() == 1);
    CHECK(is_embedded(c.loops[0]));
    CHECK(c.generator_count() == 2);
}

TEST_CASE("canonical form is idempotent") {
    for (auto& s : testutil::builder_specs()) {
        CAPTURE(s);
        const CurveSet c = curves_of(build(s));
        CHECK(canonical_form(c) == c);
        CHECK(c.generator_count() == build(s).size());
    }
}

TEST_CASE("canonical form absorbs rotation and conjugation") {
    std::mt19937 rng(31);
    for (int t = 0; t < 200; ++t) {
        const CurveSet c = random_curve_set(rng);
        const CurveSet cc = canonical_form(c);
        CurveSet moved = c;
        for (auto& l : moved.loops) {
            const auto s = testutil::random_invertible(rng, l.dim());
            l.local_system = s * l.local_system * *invert(s);
            // rotate by one full step pair keeps the anchor's face parity
            const int r = 2 * static_cast<int>(rng() % (l.word.size() / 2));
            const auto g = propagate_gradings(l.word, {l.delta2, l.alex2}, c.matching, false);
            l.delta2 = g[r].delta2;
            l.alex2 = g[r].alex2;
            l.word = l.word.rotated(r);
        }
        std::shuffle(moved.loops.begin(), moved.loops.end(), rng);
        CHECK(canonical_form(moved) == cc);
    }
}

TEST_CASE("classification on random synthetic curve sets") {
    std::mt19937 rng(2718);
    for (int t = 0; t < 250; ++t) {
        const CurveSet c = canonical_form(random_curve_set(rng));
        const PqModule m = build_from_loops(c);
        REQUIRE(validate(m).ok);
        const CurveSet back = curves_of(m);
        CHECK(back == c);
        CHECK(canonical_form(back) == c);
    }
}

TEST_CASE("ungradable loops are rejected") {
    CurveSet c;
    c.matching = kMatchings[0];
    Loop l;
    std::mt19937 rng(4);
    do l.word = random_word(rng, 4);
    while (winding(l.word, c.matching, false) == DotGrading{});
    c.loops.push_back(l);
    CHECK_THROWS_AS(build_from_loops(c), std::invalid_argument);
}

TEST_CASE("module round trip through curves") {
    for (auto& s : testutil::builder_specs()) {
        CAPTURE(s);
        const PqModule m = build(s);
        const CurveSet c = curves_of(m);
        const PqModule back = build_from_loops(c);
        CHECK(validate(back).ok);
        CHECK(curves_of(back) == c);
        CHECK(equivalent(back, m, GradingMode::Full, false));
    }
}

TEST_CASE("mirror commutes with extraction") {
    for (auto& s : testutil::builder_specs()) {
        CAPTURE(s);
        const PqModule m = build(s);
        CHECK(curves_of(mirror(m)) == mirror(curves_of(m)));
        CHECK(mirror(mirror(curves_of(m))) == curves_of(m));
    }
}

TEST_CASE("figure-eight modules") {
    for (int v = 0; v < 2; ++v) {
        const PqModule m = figure8_module(v);
        CHECK(m.size() == 4);
        const CurveSet c = curves_of(m);
        REQUIRE(c.loops.size() == 1);
        CHECK(c.loops[0].word.size() == 4);
        CHECK(self_intersection(c.loops[0].word) == 1);
        CHECK_FALSE(is_embedded(c.loops[0]));
    }
}

TEST_CASE("embedded loops") {
    Loop l;
    l.word = Word::parse("bF dB");
    CHECK(is_embedded(l));
    l.local_system = F2Matrix::identity(2);
    CHECK_FALSE(is_embedded(l));
    Loop twice;
    twice.word = Word::parse("bF dB bF dB");
    CHECK_FALSE(is_embedded(twice));
}

TEST_CASE("gradings propagate consistently") {
    for (auto& s : testutil::builder_specs()) {
        const CurveSet c = curves_of(build(s));
        for (auto& l : c.loops) {
            const auto g = propagate_gradings(l.word, {l.delta2, l.alex2}, c.matching, c.univariate);
            CHECK(g.size() == l.word.size() + 1);
            CHECK(g.front() == g.back());
            CHECK(winding(l.word, c.matching, c.univariate) == DotGrading{});
        }
    }
}

TEST_CASE("forgetting gradings") {
    const CurveSet c = curves_of(pos_crossing());
    const CurveSet u = to_univariate(c);
    CHECK(u.univariate);
    for (auto& l : u.loops) CHECK(l.alex2[1] == 0);
    const CurveSet f = forget_gradings(c);
    for (auto& l : f.loops) {
        CHECK(l.delta2 == 0);
        CHECK(l.alex2 == Alex2{0, 0});
    }
    CHECK(normalize_shift(curves_of(shift_gradings(pos_crossing(), {2, {2, 2}}))) == normalize_shift(c));
}
