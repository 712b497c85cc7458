#include <doctest.h>

#include <regex>
#include <string>

#include "helpers.hpp"
#include "pqm/io.hpp"
#include "pqm/tanglezoo.hpp"

using namespace pqm;
using pqm::io::json;

namespace {

std::string data(const std::string& name) { return std::string(PQM_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("module JSON round trips") {
    for (auto& s : testutil::builder_specs()) {
        CAPTURE(s);
        const PqModule m = build(s);
        const json j = io::module_to_json(m);
        const PqModule back = io::module_from_json(j);
        CHECK(back == m);
        CHECK(back.name == m.name);
        CHECK(back.colours == m.colours);
        // text level: dump, parse, dump again is byte-identical
        const std::string text = io::dump(j);
        CHECK(io::dump(io::module_to_json(io::module_from_json(io::parse_text(text)))) == text);
    }
    const PqModule q = quotient_module(zero_tangle(), parse_kill_set({"p3", "q1"}));
    CHECK(io::module_from_json(io::module_to_json(q)) == q);
}

TEST_CASE("idempotent labels survive the round trip") {
    const PqModule z = zero_tangle();
    const PqModule c = mapping_cone(z, z, identity_morphism(z));
    CHECK(io::module_from_json(io::module_to_json(c)) == c);
}

TEST_CASE("curve JSON round trips") {
    for (auto& s : testutil::builder_specs()) {
        CAPTURE(s);
        const CurveSet c = curves_of(build(s));
        const json j = io::curves_to_json(c);
        CHECK(j["loops"].size() == c.loops.size());
        const CurveSet back = io::curves_from_json(j);
        CHECK(back == c);
        CHECK(back.matching == c.matching);
    }
}

TEST_CASE("fixtures") {
    const PqModule z = io::read_module(data("zero.json"));
    CHECK(z == zero_tangle());
    CHECK(validate(z).ok);
    const PqModule broken = io::read_module(data("zero_broken.json"));
    CHECK_FALSE(validate(broken).ok);
    CHECK_THROWS_AS(io::read_module(data("malformed.json")), io::ParseError);
    CHECK_THROWS_AS(io::read_module(data("does-not-exist.json")), io::ParseError);
}

TEST_CASE("structural parse errors") {
    json j = io::module_to_json(zero_tangle());
    auto expect_error = [](const json& bad) { CHECK_THROWS_AS(io::module_from_json(bad), io::ParseError); };
    {
        json b = j;
        b["generators"][0]["site"] = "e";
        expect_error(b);
    }
    {
        json b = j;
        b["arrows"][0]["label"] = {"p13"};
        expect_error(b);
    }
    {
        json b = j;
        b["arrows"][0]["to"] = "nowhere";
        expect_error(b);
    }
    {
        json b = j;
        b.erase("generators");
        expect_error(b);
    }
    {
        json b = j;
        b["matching"] = {{"a", "b"}, {"a", "c"}};
        expect_error(b);
    }
    {
        json b = j;
        b["generators"][1]["id"] = "b";
        expect_error(b);
    }
    expect_error(json::array());
    CHECK_THROWS_AS(io::parse_text("{"), io::ParseError);
}

TEST_CASE("graded dimension output") {
    const auto r = box_pair(zero_tangle(), zero_tangle());
    const json j = io::dims_to_json(r.dims.normalized(), {r.link, "box"});
    CHECK(j["total"] == 2);
    CHECK(j["components"] == 2);
    CHECK(j["stabilization"] == 0);
    CHECK(j["engine"] == "box");
    int sum = 0;
    for (auto& c : j["classes"]) sum += c["dim"].get<int>();
    CHECK(sum == 2);
}

TEST_CASE("svg rendering") {
    const std::string svg = io::render_svg(curves_of(pretzel_tangle(1, 1)));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);  // back chords
    CHECK_FALSE(std::regex_search(svg, std::regex("[0-9]\\.[0-9]")));  // integer coordinates only
}
