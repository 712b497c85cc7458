#include "pqm/pairkit.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "pqm/f2lin.hpp"
#include "pqm/tanglezoo.hpp"

namespace pqm {

int AAStructure::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name == name) return static_cast<int>(i);
    return -1;
}

namespace {

// (source, target, red, blue); "1" is the idempotent of the relevant colour
struct RawAction {
    const char* src;
    const char* dst;
    const char* red;
    const char* blue;
};

// The 26 actions of the pairing bimodule, red | blue.
const RawAction kActions[] = {
    {"aa", "ab", "1", "q2"},      {"aa", "ba", "q2", "1"},      {"aa", "dc", "p1", "q32"},
    {"aa", "dd", "q432", "p1"},   {"aa", "dd", "p1", "q432"},   {"aa", "cc", "q32", "p41"},
    {"aa", "cc", "p41", "q32"},   {"aa", "cd", "q32", "p1"},

    {"bb", "ba", "1", "p2"},      {"bb", "ab", "p2", "1"},      {"bb", "dc", "p12", "q3"},
    {"bb", "cd", "q3", "p12"},    {"bb", "dd", "q43", "p12"},   {"bb", "dd", "p12", "q43"},
    {"bb", "cc", "q3", "p412"},   {"bb", "cc", "p412", "q3"},

    {"ab", "dc", "p1", "q3"},     {"ab", "dd", "p1", "q43"},    {"ab", "cc", "p41", "q3"},
    {"ba", "cd", "q3", "p1"},     {"ba", "dd", "q43", "p1"},    {"ba", "cc", "q3", "p41"},

    {"dc", "dd", "1", "q4"},      {"dc", "cc", "p4", "1"},
    {"cd", "cc", "1", "p4"},      {"cd", "dd", "q4", "1"},
};

Alex2 whole_to_doubled(Alex2 a) { return {2 * a[0], 2 * a[1]}; }
Alex2 neg(Alex2 a) { return {-a[0], -a[1]}; }

}  // namespace

AAStructure standard_p(const Matching& mt) {
    AAStructure p;
    p.matching = mt;
    auto A = [&](const char* path) { return whole_to_doubled(alexander(BasisPath::parse(path), mt)); };
    p.gens = {
        {"aa", 1, 1, 0, {0, 0}},
        {"bb", 2, 2, 0, {0, 0}},
        {"dd", 4, 4, 2, {0, 0}},
        {"cc", 3, 3, 2, {0, 0}},
        {"ab", 1, 2, 1, A("q2")},
        {"ba", 2, 1, 1, A("p2")},
        {"dc", 4, 3, 1, neg(A("q4"))},
        {"cd", 3, 4, 1, neg(A("p4"))},
    };
    for (auto& r : kActions) {
        AAAction a;
        a.source = p.index_of(r.src);
        a.target = p.index_of(r.dst);
        const auto& s = p.gens[a.source];
        a.red = std::string(r.red) == "1" ? BasisPath::idem(s.red_site) : BasisPath::parse(r.red);
        a.blue = std::string(r.blue) == "1" ? BasisPath::idem(s.blue_site) : BasisPath::parse(r.blue);
        p.actions.push_back(a);
    }
    return p;
}

std::vector<std::string> check_aa_structure(const AAStructure& p) {
    std::vector<std::string> bad;
    for (auto& a : p.actions) {
        const auto& s = p.gens[a.source];
        const auto& t = p.gens[a.target];
        const std::string tag = s.name + "->" + t.name + " (" + a.red.to_string() + "|" + a.blue.to_string() + ")";
        if (a.red.source != s.red_site || a.red.target() != t.red_site) bad.push_back(tag + ": red idempotents");
        if (a.blue.source != s.blue_site || a.blue.target() != t.blue_site) bad.push_back(tag + ": blue idempotents");
        // sum over consumed inputs of (1 - delta(label)) + delta(t) - delta(s) = 1, doubled
        int lhs = t.delta2 - s.delta2;
        for (auto& b : {a.red, a.blue})
            if (!b.is_idem()) lhs += 2 - b.length;
        if (lhs != 2) bad.push_back(tag + ": degree rule");
        const Alex2 ar = whole_to_doubled(alexander(a.red, p.matching));
        const Alex2 ab = whole_to_doubled(alexander(a.blue, p.matching));
        for (int k = 0; k < 2; ++k)
            if (t.alex2[k] - s.alex2[k] != ar[k] + ab[k]) bad.push_back(tag + ": Alexander rule");
    }
    return bad;
}

LinkInfo stabilization_exponent(const Matching& m1, const Matching& m2) {
    std::array<int, 5> parent{0, 1, 2, 3, 4};
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Matching* m : {&m1, &m2})
        for (auto& [i, o] : m->pairs) parent[find(i)] = find(o);
    std::set<int> roots;
    for (int s = 1; s <= 4; ++s) roots.insert(find(s));
    LinkInfo li;
    li.components = static_cast<int>(roots.size());
    li.stabilization = 2 + 2 - li.components - 2;
    return li;
}

namespace {

// Link-component coordinates for both factors.
struct ComponentMap {
    int components = 1;
    std::array<int, 2> red{0, 0};
    std::array<int, 2> blue{0, 0};
    bool univariate = true;

    Alex2 map_red(const Alex2& a, bool uni_module) const { return map(a, red, uni_module); }
    Alex2 map_blue(const Alex2& a, bool uni_module) const { return map(a, blue, uni_module); }

    Alex2 map(const Alex2& a, const std::array<int, 2>& cmp, bool uni_module) const {
        if (univariate || uni_module) return {a[0] + a[1], 0};
        Alex2 out{0, 0};
        out[cmp[0]] += a[0];
        out[cmp[1]] += a[1];
        return out;
    }
};

ComponentMap component_map(const Matching& red, const Matching& blue) {
    std::array<int, 5> parent{0, 1, 2, 3, 4};
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Matching* m : {&red, &blue})
        for (auto& [i, o] : m->pairs) parent[find(i)] = find(o);
    ComponentMap cm;
    const int r0 = find(blue.pairs[0].first);
    const int r1 = find(blue.pairs[1].first);
    cm.components = (r0 == r1) ? 1 : 2;
    cm.univariate = cm.components == 1;
    auto idx = [&](int site) { return find(site) == r0 ? 0 : 1; };
    cm.blue = {0, cm.components == 2 ? 1 : 0};
    cm.red = {idx(red.pairs[0].first), idx(red.pairs[1].first)};
    if (cm.components == 1) cm.red = {0, 0};
    return cm;
}

GradedDims block_homology(const std::vector<std::pair<int, Alex2>>& grading,
                          const std::vector<std::pair<int, int>>& edges, bool univariate) {
    // group generators by Alexander grading; D raises delta by one (2 doubled)
    std::map<Alex2, std::map<int, std::vector<int>>> blocks;
    std::vector<int> pos(grading.size());
    for (std::size_t i = 0; i < grading.size(); ++i) {
        auto& v = blocks[grading[i].second][grading[i].first];
        pos[i] = static_cast<int>(v.size());
        v.push_back(static_cast<int>(i));
    }
    std::map<std::pair<Alex2, int>, std::vector<std::pair<int, int>>> entries;
    for (auto& [f, t] : edges) entries[{grading[f].second, grading[f].first}].push_back({f, t});
    GradedDims g;
    g.univariate = univariate;
    std::map<std::pair<Alex2, int>, int> rk;
    for (auto& [a, bydeg] : blocks)
        for (auto& [d, idx] : bydeg) {
            auto nit = bydeg.find(d + 2);
            const std::size_t rows = nit == bydeg.end() ? 0 : nit->second.size();
            F2Matrix m(rows, idx.size());
            for (auto& [f, t] : entries[{a, d}]) m.flip(static_cast<std::size_t>(pos[t]), static_cast<std::size_t>(pos[f]));
            rk[{a, d}] = rows ? static_cast<int>(rank(m)) : 0;
        }
    for (auto& [a, bydeg] : blocks)
        for (auto& [d, idx] : bydeg) {
            int h = static_cast<int>(idx.size()) - rk[{a, d}];
            auto it = rk.find({a, d - 2});
            if (it != rk.end()) h -= it->second;
            g.add(d, a, h);
        }
    return g;
}

}  // namespace

GradedDims pair_homology(const PairComplex& c) {
    std::vector<std::pair<int, Alex2>> gr;
    for (auto& g : c.gens) gr.push_back({g.delta2, c.graded_ok ? g.alex2 : Alex2{0, 0}});
    return block_homology(gr, c.edges, c.univariate);
}

PairResult box_pair(const PqModule& m1_in, const PqModule& m2, bool reverse_first) {
    if (!is_reduced(m1_in) || !is_reduced(m2)) throw std::invalid_argument("box_pair: inputs must be reduced");
    if (m1_in.killed || m2.killed) throw std::invalid_argument("box_pair: quotient modules are not supported");
    const PqModule m1 = reverse_first ? reverse(m1_in) : m1_in;
    const AAStructure P = standard_p(m2.matching);
    const ComponentMap cm = component_map(m1.matching, m2.matching);

    PairResult res;
    res.link = stabilization_exponent(m1.matching, m2.matching);
    PairComplex& cx = res.complex;
    cx.univariate = cm.univariate || m1.univariate || m2.univariate;

    std::map<std::tuple<int, int, int>, int> index;
    for (std::size_t s = 0; s < P.gens.size(); ++s)
        for (std::size_t x = 0; x < m1.size(); ++x) {
            if (m1.gens[x].site != P.gens[s].red_site) continue;
            for (std::size_t y = 0; y < m2.size(); ++y) {
                if (m2.gens[y].site != P.gens[s].blue_site) continue;
                PairGenerator g{static_cast<int>(x), static_cast<int>(s), static_cast<int>(y), 0, {0, 0}};
                g.delta2 = m1.gens[x].delta2 + P.gens[s].delta2 + m2.gens[y].delta2;
                const Alex2 ar = cm.map_red(m1.gens[x].alex2, m1.univariate);
                const Alex2 ap = cm.map_blue(P.gens[s].alex2, false);
                const Alex2 ab = cm.map_blue(m2.gens[y].alex2, m2.univariate);
                for (int k = 0; k < 2; ++k) g.alex2[k] = ar[k] + ap[k] + ab[k];
                if (cx.univariate) g.alex2 = {g.alex2[0] + g.alex2[1], 0};
                index[{g.red, g.aa, g.blue}] = static_cast<int>(cx.gens.size());
                cx.gens.push_back(g);
            }
        }

    // outgoing arrows by label term
    auto moves = [](const PqModule& m, int x, const BasisPath& want) {
        std::vector<int> out;
        if (want.is_idem()) {
            out.push_back(x);
            return out;
        }
        for (auto it = m.arrows.lower_bound({x, -1}); it != m.arrows.end() && it->first.first == x; ++it)
            if (it->second.contains(want)) out.push_back(it->first.second);
        return out;
    };
    std::map<std::pair<int, int>, int> coeff;
    for (std::size_t i = 0; i < cx.gens.size(); ++i) {
        const auto& g = cx.gens[i];
        for (auto& act : P.actions) {
            if (act.source != g.aa) continue;
            for (int x2 : moves(m1, g.red, act.red))
                for (int y2 : moves(m2, g.blue, act.blue)) {
                    auto it = index.find({x2, act.target, y2});
                    if (it == index.end()) throw std::logic_error("box_pair: target triple missing");
                    coeff[{static_cast<int>(i), it->second}] ^= 1;
                }
        }
    }
    for (auto& [e, v] : coeff)
        if (v) cx.edges.push_back(e);

    for (auto& [f, t] : cx.edges) {
        if (cx.gens[t].delta2 != cx.gens[f].delta2 + 2) throw std::logic_error("box_pair: differential is not of delta degree one");
        if (cx.gens[t].alex2 != cx.gens[f].alex2) cx.graded_ok = false;
    }
    // d^2 = 0
    std::map<int, std::vector<int>> out;
    for (auto& [f, t] : cx.edges) out[f].push_back(t);
    for (auto& [f, ts] : out) {
        std::map<int, int> sq;
        for (int t : ts)
            for (int u : out[t]) sq[u] ^= 1;
        for (auto& [u, v] : sq)
            if (v) cx.d_squared_zero = false;
    }
    if (!cx.d_squared_zero) throw std::logic_error("box_pair: d^2 != 0 on the pair complex");
    res.dims = pair_homology(cx);
    if (!cx.graded_ok) res.dims.note = "Alexander grading not preserved; reported ungraded";
    return res;
}

ClosureResult omega_close(const PqModule& m_in, const std::string& sites) {
    int rot;
    if (sites == "a,c" || sites == "ac" || sites == "c,a") rot = 0;
    else if (sites == "b,d" || sites == "bd" || sites == "d,b") rot = -1;
    else throw std::invalid_argument("omega_close: closure sites must be a,c or b,d");
    const PqModule m = rot ? relabel_sites(m_in, {rot, false}) : m_in;

    // omega sends p1, p2, q3, q4 to 1 and the other letters to 0
    const KillSet zero_letters = parse_kill_set({"q1", "q2", "p3", "p4"});
    auto omega = [&](const AlgElem& a) {
        int v = 0;
        for (auto& t : a.terms())
            if (!(t.letter_mask() & zero_letters)) v ^= 1;
        return v;
    };
    auto A = [&](const char* p) { return whole_to_doubled(alexander(BasisPath::parse(p), m.matching)); };
    std::array<std::pair<int, Alex2>, 5> shift;
    shift[1] = {1, A("p2")};
    shift[2] = {0, {0, 0}};
    shift[3] = {1, A("q3")};
    shift[4] = {2, {0, 0}};

    // the closing arcs join a-b and c-d (rotated accordingly); count components
    Matching closing{{{{2, 1}, {3, 4}}}};
    if (rot) closing = Matching{{{{3, 2}, {4, 1}}}};
    ClosureResult res;
    res.components = stabilization_exponent(m_in.matching, closing).components;
    const bool uni = m.univariate || res.components == 1;

    std::vector<std::pair<int, Alex2>> gr;
    for (auto& g : m.gens) {
        Alex2 a{g.alex2[0] + shift[g.site].second[0], g.alex2[1] + shift[g.site].second[1]};
        if (uni) a = {a[0] + a[1], 0};
        gr.push_back({g.delta2 + shift[g.site].first, a});
    }
    std::vector<std::pair<int, int>> edges;
    bool graded = true;
    for (auto& [key, lab] : m.arrows)
        if (omega(lab)) {
            edges.push_back(key);
            if (gr[key.second].first != gr[key.first].first + 2 || gr[key.second].second != gr[key.first].second)
                graded = false;
        }
    if (!graded) {
        for (auto& g : gr) g.second = {0, 0};
        // fall back to the delta grading alone if it survives
        for (auto& [f, t] : edges)
            if (gr[t].first != gr[f].first + 2) throw std::logic_error("omega_close: closure complex is not graded");
    }
    res.dims = block_homology(gr, edges, uni);
    if (!graded) res.dims.note = "Alexander grading not preserved; reported ungraded";
    return res;
}

GradedDims mor_pair(const PqModule& m1, const PqModule& m2) { return mor_homology_window(mirror(reverse(m1)), m2); }

}  // namespace pqm
