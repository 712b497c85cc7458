#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pqm/curvekit.hpp"
#include "pqm/morcx.hpp"
#include "pqm/pairkit.hpp"
#include "pqm/pqmod.hpp"

namespace pqm::io {

using json = nlohmann::json;

// Malformed input: bad JSON, missing fields, unknown sites or path strings.
// Mathematical problems (a module that fails validation) are not parse errors.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json module_to_json(const PqModule& m);
PqModule module_from_json(const json& j);

json curves_to_json(const CurveSet& c);
CurveSet curves_from_json(const json& j);

struct PairInfo {
    LinkInfo link;
    std::string engine;
};
json dims_to_json(const GradedDims& d);
json dims_to_json(const GradedDims& d, const PairInfo& info);

// sorted keys, two-space indent, trailing newline
std::string dump(const json& j);
json parse_text(const std::string& text);
json read_json_file(const std::string& path);  // "-" reads stdin
void write_text_file(const std::string& path, const std::string& text);  // "-" writes stdout

PqModule read_module(const std::string& path);

// Static picture of a curve set: the front face as a square with punctured
// corners, arcs a (bottom), b (right), c (top), d (left); front chords solid,
// back chords dashed.
std::string render_svg(const CurveSet& c);

}  // namespace pqm::io
