#include "pqm/io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

namespace pqm::io {

namespace {

std::string site_str(int s) { return std::string(1, site_char(s)); }

int site_of(const json& j) {
    if (!j.is_string() || j.get<std::string>().size() != 1) throw ParseError("site must be one of \"a\", \"b\", \"c\", \"d\"");
    try {
        return site_from_char(j.get<std::string>()[0]);
    } catch (const std::exception&) {
        throw ParseError("unknown site '" + j.get<std::string>() + "'");
    }
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

Alex2 alex_of(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw ParseError("alex2 must be a pair of integers");
    return {j[0].get<int>(), j[1].get<int>()};
}

int int_of(const json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
    return j.get<int>();
}

json matching_to_json(const Matching& m) {
    json a = json::array();
    for (auto& [in, out] : m.pairs) a.push_back({site_str(in), site_str(out)});
    return a;
}

Matching matching_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("matching must list two strands");
    Matching m;
    for (int k = 0; k < 2; ++k) {
        if (!j[k].is_array() || j[k].size() != 2) throw ParseError("a strand is an [inward, outward] pair of sites");
        m.pairs[k] = {site_of(j[k][0]), site_of(j[k][1])};
    }
    if (!m.valid()) throw ParseError("matching does not pair the four sites");
    return m;
}

std::array<std::string, 2> colours_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        throw ParseError("colours must be two strings");
    return {j[0].get<std::string>(), j[1].get<std::string>()};
}

json matrix_to_json(const F2Matrix& m) {
    json rows = json::array();
    for (auto& r : m.to_rows()) rows.push_back(r);
    return rows;
}

F2Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("local system must be a non-empty list of rows");
    std::vector<std::vector<int>> rows;
    for (auto& r : j) {
        if (!r.is_array() || r.size() != j.size()) throw ParseError("local system must be square");
        std::vector<int> row;
        for (auto& x : r) {
            if (!x.is_number_integer() || (x.get<int>() != 0 && x.get<int>() != 1))
                throw ParseError("local system entries are 0 or 1");
            row.push_back(x.get<int>());
        }
        rows.push_back(std::move(row));
    }
    return F2Matrix::from_rows(rows);
}

}  // namespace

json module_to_json(const PqModule& m) {
    json j;
    j["name"] = m.name;
    j["colours"] = {m.colours[0], m.colours[1]};
    j["matching"] = matching_to_json(m.matching);
    if (m.killed) j["killed"] = kill_set_strings(m.killed);
    if (m.univariate) j["univariate"] = true;
    json gens = json::array();
    for (auto& g : m.gens)
        gens.push_back({{"id", g.id}, {"site", site_str(g.site)}, {"delta2", g.delta2}, {"alex2", {g.alex2[0], g.alex2[1]}}});
    j["generators"] = gens;
    json arrows = json::array();
    for (auto& [key, lab] : m.arrows) {
        json labels = json::array();
        for (auto& t : lab.terms()) labels.push_back(t.is_idem() ? std::string("1") : t.to_string());
        arrows.push_back({{"from", m.gens[key.first].id}, {"to", m.gens[key.second].id}, {"label", labels}});
    }
    j["arrows"] = arrows;
    return j;
}

PqModule module_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("module file must be a JSON object");
    PqModule m;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ParseError("name must be a string");
        m.name = j["name"].get<std::string>();
    }
    if (j.contains("colours")) m.colours = colours_from_json(j["colours"]);
    m.matching = matching_from_json(field(j, "matching"));
    if (j.contains("killed")) {
        if (!j["killed"].is_array()) throw ParseError("killed must be a list of letters");
        try {
            m.killed = parse_kill_set(j["killed"].get<std::vector<std::string>>());
        } catch (const std::exception& e) {
            throw ParseError(std::string("killed: ") + e.what());
        }
    }
    if (j.contains("univariate")) {
        if (!j["univariate"].is_boolean()) throw ParseError("univariate must be a boolean");
        m.univariate = j["univariate"].get<bool>();
    }
    const json& gens = field(j, "generators");
    if (!gens.is_array()) throw ParseError("generators must be a list");
    for (auto& g : gens) {
        const json& id = field(g, "id");
        if (!id.is_string()) throw ParseError("generator id must be a string");
        if (m.index_of(id.get<std::string>()) >= 0) throw ParseError("duplicate generator id '" + id.get<std::string>() + "'");
        m.add_generator({id.get<std::string>(), site_of(field(g, "site")), int_of(field(g, "delta2"), "delta2"),
                         alex_of(field(g, "alex2"))});
    }
    const json& arrows = field(j, "arrows");
    if (!arrows.is_array()) throw ParseError("arrows must be a list");
    for (auto& a : arrows) {
        const json& from = field(a, "from");
        const json& to = field(a, "to");
        if (!from.is_string() || !to.is_string()) throw ParseError("arrow ends must be generator ids");
        const int fi = m.index_of(from.get<std::string>()), ti = m.index_of(to.get<std::string>());
        if (fi < 0 || ti < 0) throw ParseError("arrow refers to an unknown generator");
        const json& label = field(a, "label");
        if (!label.is_array()) throw ParseError("arrow label must be a list of path strings");
        std::vector<BasisPath> terms;
        for (auto& s : label) {
            if (!s.is_string()) throw ParseError("path strings must be strings");
            const std::string str = s.get<std::string>();
            try {
                terms.push_back(str == "1" ? BasisPath::idem(m.gens[fi].site) : BasisPath::parse(str));
            } catch (const std::exception& e) {
                throw ParseError(e.what());
            }
        }
        m.add_arrow(fi, ti, AlgElem::from_terms(std::move(terms)));
    }
    return m;
}

json curves_to_json(const CurveSet& c) {
    json j;
    j["name"] = c.name;
    j["colours"] = {c.colours[0], c.colours[1]};
    j["matching"] = matching_to_json(c.matching);
    if (c.univariate) j["univariate"] = true;
    json loops = json::array();
    for (auto& l : c.loops) {
        json steps = json::array();
        for (auto& s : l.word.steps) steps.push_back({{"arc", site_str(s.arc)}, {"face", s.face == Face::Front ? "front" : "back"}});
        loops.push_back({{"word", l.word.to_string()},
                         {"steps", steps},
                         {"local_system", matrix_to_json(l.local_system)},
                         {"delta2", l.delta2},
                         {"alex2", {l.alex2[0], l.alex2[1]}},
                         {"embedded", is_embedded(l)}});
    }
    j["loops"] = loops;
    j["generators"] = c.generator_count();
    return j;
}

CurveSet curves_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("curve file must be a JSON object");
    CurveSet c;
    if (j.contains("name") && j["name"].is_string()) c.name = j["name"].get<std::string>();
    if (j.contains("colours")) c.colours = colours_from_json(j["colours"]);
    c.matching = matching_from_json(field(j, "matching"));
    if (j.contains("univariate")) c.univariate = j["univariate"].get<bool>();
    const json& loops = field(j, "loops");
    if (!loops.is_array()) throw ParseError("loops must be a list");
    for (auto& lj : loops) {
        Loop l;
        const json& steps = field(lj, "steps");
        if (!steps.is_array()) throw ParseError("steps must be a list");
        for (auto& s : steps) {
            const json& f = field(s, "face");
            if (!f.is_string() || (f != "front" && f != "back")) throw ParseError("face must be \"front\" or \"back\"");
            l.word.steps.push_back({site_of(field(s, "arc")), f == "front" ? Face::Front : Face::Back});
        }
        if (!l.word.well_formed()) throw ParseError("ill-formed word");
        l.local_system = matrix_from_json(field(lj, "local_system"));
        l.delta2 = int_of(field(lj, "delta2"), "delta2");
        l.alex2 = alex_of(field(lj, "alex2"));
        c.loops.push_back(std::move(l));
    }
    return c;
}

json dims_to_json(const GradedDims& d) {
    json classes = json::array();
    for (auto& [key, n] : d.dims) {
        auto [delta2, a0, a1] = key;
        classes.push_back({{"delta2", delta2}, {"alex2", {a0, a1}}, {"dim", n}});
    }
    json j;
    j["classes"] = classes;
    j["total"] = d.total();
    j["univariate"] = d.univariate;
    if (!d.note.empty()) j["note"] = d.note;
    return j;
}

json dims_to_json(const GradedDims& d, const PairInfo& info) {
    json j = dims_to_json(d);
    j["components"] = info.link.components;
    j["stabilization"] = info.link.stabilization;
    if (!info.engine.empty()) j["engine"] = info.engine;
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

json read_json_file(const std::string& path) {
    if (path == "-") {
        std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
        return parse_text(text);
    }
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

PqModule read_module(const std::string& path) { return module_from_json(read_json_file(path)); }

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

std::string render_svg(const CurveSet& c) {
    // integer layout: a 480-unit square, crossings spaced evenly along each side
    constexpr long kSize = 480, kMargin = 60;
    const long x0 = kMargin, y0 = kMargin, x1 = kMargin + kSize, y1 = kMargin + kSize;
    std::map<int, long> count;
    std::vector<std::vector<long>> slot(c.loops.size());
    for (std::size_t li = 0; li < c.loops.size(); ++li)
        for (std::size_t r = 0; r < c.loops[li].dim(); ++r)
            for (auto& s : c.loops[li].word.steps) slot[li].push_back(count[s.arc]++);

    auto point = [&](int arc, long k) {
        const long off = (k + 1) * kSize / (count[arc] + 1);
        switch (arc) {
            case 1: return std::pair{x0 + off, y1};
            case 2: return std::pair{x1, y1 - off};
            case 3: return std::pair{x1 - off, y0};
            default: return std::pair{x0, y0 + off};
        }
    };
    static const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

    std::ostringstream os;
    const long width = kSize + 2 * kMargin;
    const long height = width + 20 * static_cast<long>(c.loops.size());
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << kSize << "\" height=\"" << kSize
       << "\" fill=\"none\" stroke=\"#888\"/>\n";
    const long cx = (x0 + x1) / 2, cy = (y0 + y1) / 2;
    const std::pair<const char*, std::pair<long, long>> labels[] = {
        {"a", {cx, y1 + 24}}, {"b", {x1 + 14, cy}}, {"c", {cx, y0 - 12}}, {"d", {x0 - 24, cy}}};
    for (auto& [name, pos] : labels)
        os << "<text x=\"" << pos.first << "\" y=\"" << pos.second << "\" font-family=\"sans-serif\" font-size=\"14\">"
           << name << "</text>\n";
    for (auto [px, py] : {std::pair{x0, y0}, std::pair{x1, y0}, std::pair{x1, y1}, std::pair{x0, y1}})
        os << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"6\" fill=\"black\"/>\n";

    for (std::size_t li = 0; li < c.loops.size(); ++li) {
        const Loop& l = c.loops[li];
        const char* colour = kColours[li % std::size(kColours)];
        const std::size_t n = l.word.size();
        for (std::size_t r = 0; r < l.dim(); ++r)
            for (std::size_t t = 0; t < n; ++t) {
                const int a = l.word.steps[t].arc, b = l.word.steps[(t + 1) % n].arc;
                const auto [ax, ay] = point(a, slot[li][r * n + t]);
                const auto [bx, by] = point(b, slot[li][r * n + (t + 1) % n]);
                if (l.word.steps[t].face == Face::Front) {
                    os << "<line x1=\"" << ax << "\" y1=\"" << ay << "\" x2=\"" << bx << "\" y2=\"" << by
                       << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
                } else {
                    // the back face seen through the front: dashed and bowed
                    // away from the centre
                    const long mx = (ax + bx) / 2, my = (ay + by) / 2;
                    long qx = mx + (mx - cx) / 2, qy = my + (my - cy) / 2;
                    if (mx == cx && my == cy) {
                        qx = mx - (by - ay) / 4;
                        qy = my + (bx - ax) / 4;
                    }
                    os << "<path d=\"M " << ax << " " << ay << " Q " << qx << " " << qy << " " << bx << " " << by
                       << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" stroke-dasharray=\"6,4\"/>\n";
                }
            }
        os << "<text x=\"10\" y=\"" << width + 20 * static_cast<long>(li) + 10
           << "\" font-family=\"monospace\" font-size=\"12\" fill=\"" << colour << "\">" << l.word.to_string() << "  dim "
           << l.dim() << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace pqm::io
