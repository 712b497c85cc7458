#include "pqm/tanglezoo.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>


namespace pqm {

namespace {

const Matching kEvenMatching{{{{2, 1}, {3, 4}}}};   // strands b->a, c->d
const Matching kOddMatching{{{{2, 4}, {3, 1}}}};    // strands b->d, c->a

AlgElem L(std::initializer_list<const char*> paths) {
    std::vector<std::string> v;
    for (auto* p : paths) v.emplace_back(p);
    return AlgElem::parse(v);
}

// Propagates the Alexander bigrading along arrows, one anchor per connected
// component; returns false on an inconsistent cycle.
bool propagate_alexander(PqModule& m, const std::map<int, Alex2>& anchors) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<std::pair<int, Alex2>>> adj(n);
    for (auto& [key, lab] : m.arrows) {
        const Alex2 a = label_alex2(lab.terms().front(), m);
        // alex(to) = alex(from) - A(label)
        adj[key.first].push_back({key.second, {-a[0], -a[1]}});
        adj[key.second].push_back({key.first, {a[0], a[1]}});
    }
    std::vector<bool> seen(n, false);
    auto run = [&](int s, Alex2 v) {
        std::deque<int> q{s};
        seen[s] = true;
        m.gens[s].alex2 = v;
        while (!q.empty()) {
            const int x = q.front();
            q.pop_front();
            for (auto& [y, d] : adj[x]) {
                const Alex2 w{m.gens[x].alex2[0] + d[0], m.gens[x].alex2[1] + d[1]};
                if (!seen[y]) {
                    seen[y] = true;
                    m.gens[y].alex2 = w;
                    q.push_back(y);
                } else if (m.gens[y].alex2 != w) {
                    return false;
                }
            }
        }
        return true;
    };
    for (auto& [s, v] : anchors)
        if (!seen[s] && !run(s, v)) return false;
    for (int s = 0; s < n; ++s)
        if (!seen[s] && !run(s, {0, 0})) return false;
    return true;
}

// Shift every colour so its grading sum over generators vanishes (when that
// is possible in half units).
void centre_alexander(PqModule& m) {
    if (m.gens.empty()) return;
    for (int k = 0; k < 2; ++k) {
        long s = 0;
        for (auto& g : m.gens) s += g.alex2[k];
        const long n = static_cast<long>(m.gens.size());
        if (s % n != 0) continue;
        for (auto& g : m.gens) g.alex2[k] -= static_cast<int>(s / n);
    }
}

struct GenSpec {
    std::string id;
    char site;
    int delta2;
    int total2;  // doubled total Alexander grading as tabulated
};

// Builds a module from tabulated generator data and arrows; the bigrading is
// derived by propagation and must reproduce the tabulated totals.
PqModule assemble(const std::string& name, const Matching& matching, const std::vector<GenSpec>& gens,
                  const std::vector<std::tuple<std::string, std::string, AlgElem>>& arrows, bool univariate = false) {
    PqModule m;
    m.name = name;
    m.matching = matching;
    m.univariate = univariate;
    for (auto& g : gens) m.add_generator({g.id, site_from_char(g.site), g.delta2, {0, 0}});
    for (auto& [f, t, lab] : arrows) m.add_arrow(f, t, lab);
    if (!propagate_alexander(m, {})) throw std::logic_error(name + ": Alexander grading does not close up");
    if (univariate) {
        const int off = gens.front().total2 - m.gens.front().alex2[0];
        for (auto& g : m.gens) g.alex2[0] += off;
    } else {
        centre_alexander(m);
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto& a = m.gens[i].alex2;
        if (a[0] + a[1] != gens[i].total2)
            throw std::logic_error(name + ": generator " + gens[i].id + " total Alexander grading " +
                                   std::to_string(a[0] + a[1]) + "/2 differs from the tabulated " +
                                   std::to_string(gens[i].total2) + "/2");
    }
    return m;
}

std::string chain_id(char site, int k) { return std::string(1, site) + std::to_string(k); }

}  // namespace

// ---------------------------------------------------------------------------

PqModule zero_tangle() {
    return assemble("zero", kEvenMatching, {{"b", 'b', 0, 0}, {"d", 'd', 0, 0}},
                    {{"d", "b", L({"p34", "q21"})}, {"b", "d", L({"p12", "q43"})}});
}

PqModule infinity_tangle() {
    Matching m{{{{3, 2}, {4, 1}}}};
    return assemble("inf", m, {{"a", 'a', 0, 0}, {"c", 'c', 0, 0}},
                    {{"a", "c", L({"p41", "q32"})}, {"c", "a", L({"p23", "q14"})}});
}

PqModule pos_crossing() {
    PqModule m = assemble("x+", kOddMatching,
                          {{"a", 'a', 0, 0}, {"b", 'b', 1, -2}, {"c", 'c', 0, 0}, {"d", 'd', 1, 2}},
                          {{"d", "a", L({"p234"})},
                           {"b", "a", L({"q143"})},
                           {"a", "d", L({"p1"})},
                           {"c", "d", L({"q4"})},
                           {"c", "b", L({"p3"})},
                           {"a", "b", L({"q2"})},
                           {"b", "c", L({"p412"})},
                           {"d", "c", L({"q321"})}});
    // tabulated bigradings: a (1/2,-1/2), b (-1/2,-1/2), c (-1/2,1/2), d (1/2,1/2)
    const std::map<std::string, Alex2> tabulated{{"a", {1, -1}}, {"b", {-1, -1}}, {"c", {-1, 1}}, {"d", {1, 1}}};
    for (auto& g : m.gens)
        if (g.alex2 != tabulated.at(g.id)) throw std::logic_error("x+: bigrading differs from the tabulated one");
    return m;
}

PqModule neg_crossing() {
    PqModule m = assemble("x-", kOddMatching,
                          {{"a", 'a', 0, 0}, {"b", 'b', -1, 2}, {"c", 'c', 0, 0}, {"d", 'd', -1, -2}},
                          {{"d", "a", L({"q1"})},
                           {"b", "a", L({"p2"})},
                           {"a", "d", L({"q432"})},
                           {"c", "d", L({"p123"})},
                           {"c", "b", L({"q214"})},
                           {"a", "b", L({"p341"})},
                           {"b", "c", L({"q3"})},
                           {"d", "c", L({"p4"})}});
    const std::map<std::string, Alex2> tabulated{{"a", {-1, 1}}, {"b", {1, 1}}, {"c", {1, -1}}, {"d", {-1, -1}}};
    for (auto& g : m.gens)
        if (g.alex2 != tabulated.at(g.id)) throw std::logic_error("x-: bigrading differs from the tabulated one");
    return m;
}

// T_n for n >= 1 and T_{-n}: two end generators on b and d plus two chains of
// alternating a/c generators whose Alexander gradings step by 2.
PqModule twist_tangle(int n) {
    if (n == 0) return zero_tangle();
    const bool neg = n < 0;
    const int k = neg ? -n : n;
    const Matching& mt = (k % 2) ? kOddMatching : kEvenMatching;
    const int chain_delta = neg ? 1 : -1;

    std::vector<GenSpec> gens;
    std::vector<std::tuple<std::string, std::string, AlgElem>> arrows;
    if (!neg) {
        gens.push_back({"b", 'b', 0, -2 * k});
        gens.push_back({"d", 'd', 0, 2 * k});
    } else {
        gens.push_back({"d", 'd', 0, -2 * k});
        gens.push_back({"b", 'b', 0, 2 * k});
    }
    // chain starting at c^{1-k} and chain starting at a^{1-k}
    std::vector<std::vector<std::string>> chains(2);
    for (int start = 0; start < 2; ++start) {
        for (int i = 0; i < k; ++i) {
            const int sup = 1 - k + 2 * i;
            const char site = ((i + start) % 2 == 0) ? 'c' : 'a';
            gens.push_back({chain_id(site, sup), site, chain_delta, 2 * sup});
            chains[start].push_back(chain_id(site, sup));
        }
    }
    std::sort(gens.begin() + 2, gens.end(), [](const GenSpec& x, const GenSpec& y) {
        return std::tie(x.total2, x.site) < std::tie(y.total2, y.site);
    });
    // links: lower a with upper c uses the p pair, lower c with upper a the q pair
    for (auto& ch : chains)
        for (std::size_t i = 0; i + 1 < ch.size(); ++i) {
            const std::string& lo = ch[i];
            const std::string& hi = ch[i + 1];
            if (lo[0] == 'a') {
                arrows.push_back({lo, hi, L({"p41"})});
                arrows.push_back({hi, lo, L({"p23"})});
            } else {
                arrows.push_back({hi, lo, L({"q32"})});
                arrows.push_back({lo, hi, L({"q14"})});
            }
        }
    const std::string c_lo = chain_id('c', 1 - k), a_lo = chain_id('a', 1 - k);
    const std::string c_hi = chain_id('c', k - 1), a_hi = chain_id('a', k - 1);
    if (!neg) {
        arrows.push_back({c_lo, "b", L({"p3"})});
        arrows.push_back({"b", c_lo, L({"p412"})});
        arrows.push_back({a_lo, "b", L({"q2"})});
        arrows.push_back({"b", a_lo, L({"q143"})});
        arrows.push_back({a_hi, "d", L({"p1"})});
        arrows.push_back({"d", a_hi, L({"p234"})});
        arrows.push_back({c_hi, "d", L({"q4"})});
        arrows.push_back({"d", c_hi, L({"q321"})});
    } else {
        arrows.push_back({c_lo, "d", L({"p123"})});
        arrows.push_back({"d", c_lo, L({"p4"})});
        arrows.push_back({a_lo, "d", L({"q432"})});
        arrows.push_back({"d", a_lo, L({"q1"})});
        arrows.push_back({a_hi, "b", L({"p341"})});
        arrows.push_back({"b", a_hi, L({"p2"})});
        arrows.push_back({c_hi, "b", L({"q214"})});
        arrows.push_back({"b", c_hi, L({"q3"})});
    }
    return assemble("twist:" + std::to_string(n), mt, gens, arrows);
}

Morphism skein_morphism(int n) {
    if (n < 1) throw std::invalid_argument("skein_morphism: n must be positive");
    const PqModule src = twist_tangle(n);
    const PqModule dst = twist_tangle(-n);
    Morphism f;
    f.degree2 = 2;
    for (std::size_t i = 0; i < src.size(); ++i) {
        const auto& g = src.gens[i];
        if (g.site == 1 || g.site == 3) f.add(static_cast<int>(i), dst.index_of(g.id), BasisPath::idem(g.site));
    }
    f.add(src.index_of("b"), dst.index_of("d"), L({"p12", "q43"}));
    f.add(src.index_of("d"), dst.index_of("b"), L({"p34", "q21"}));
    return f;
}

PqModule figure8_module(int variant) {
    if (variant == 0)
        return assemble("fig8:a", kOddMatching,
                        {{"a", 'a', 0, 0}, {"b+", 'b', -1, 2}, {"b-", 'b', 1, -2}, {"c", 'c', 0, 0}},
                        {{"a", "b-", L({"q2"})},
                         {"b-", "a", L({"q143"})},
                         {"b+", "a", L({"p2"})},
                         {"a", "b+", L({"p341"})},
                         {"b+", "c", L({"q3"})},
                         {"c", "b+", L({"q214"})},
                         {"b-", "c", L({"p412"})},
                         {"c", "b-", L({"p3"})}},
                        true);
    if (variant == 1)
        return assemble("fig8:b", kOddMatching,
                        {{"a", 'a', 0, 0}, {"d+", 'd', 1, 2}, {"d-", 'd', -1, -2}, {"c", 'c', 0, 0}},
                        {{"d-", "a", L({"q1"})},
                         {"a", "d-", L({"q432"})},
                         {"d+", "a", L({"p234"})},
                         {"a", "d+", L({"p1"})},
                         {"d+", "c", L({"q321"})},
                         {"c", "d+", L({"q4"})},
                         {"d-", "c", L({"p4"})},
                         {"c", "d-", L({"p123"})}},
                        true);
    throw std::invalid_argument("figure8_module: variant must be 0 (a) or 1 (b)");
}

SingularMap singular_map(int variant) {
    SingularMap s;
    s.src = zero_tangle();
    s.dst = pos_crossing();
    s.f.degree2 = 1;
    s.shift.auto_delta = true;
    const int b = s.src.index_of("b"), d = s.src.index_of("d");
    if (variant == 0) {
        s.shift.alex2 = {2, 0};
        s.f.add(d, s.dst.index_of("d"), BasisPath::idem(4));
        s.f.add(b, s.dst.index_of("a"), L({"p2"}));
        s.f.add(b, s.dst.index_of("c"), L({"q3"}));
    } else if (variant == 1) {
        s.shift.alex2 = {-2, 0};
        s.f.add(b, s.dst.index_of("b"), BasisPath::idem(2));
        s.f.add(d, s.dst.index_of("c"), L({"p4"}));
        s.f.add(d, s.dst.index_of("a"), L({"q1"}));
    } else {
        throw std::invalid_argument("singular_map: variant must be 0 or 1");
    }
    return s;
}

// ---------------------------------------------------------------------------
// Pretzel tangles.  The invariant consists of diagonal strings on a chessboard
// in the (t2, t1) plane, which bounce between four walls.  For each even E in
// [2, 4n+4m-2] there is one loop made of a left string on the diagonal E-1, a
// right string on E+1, and a bottom and top joiner.

namespace {

struct PretzelVertex {
    std::string id;
    char site;
    int diag;  // u + v, where u = t2 + n + 2m
    int row;   // v = n - t1
};

struct PretzelEdge {
    int x, y;
    Face face;
};

struct PretzelLoop {
    std::vector<PretzelVertex> verts;
    std::vector<PretzelEdge> edges;
};

std::vector<PretzelLoop> pretzel_loops(int n, int m) {
    if (n < 1 || m < 1) throw std::invalid_argument("pretzel: n and m must be positive");
    std::vector<PretzelLoop> loops;
    for (int E = 2; E <= 4 * n + 4 * m - 2; E += 2) {
        int rb, rt;
        char cb, ct;
        if (E <= 4 * m + 2) {
            rb = 0;
            cb = (E == 4 * m + 2) ? 'b' : 'd';
        } else {
            rb = 2 * ((E - 4 * m - 2 + 3) / 4);
            cb = 'b';
        }
        if (E >= 4 * n - 2) {
            rt = 2 * n;
            ct = (E == 4 * n - 2) ? 'd' : 'b';
        } else {
            rt = 2 * ((E + 3) / 4);
            ct = 'd';
        }
        PretzelLoop lp;
        const std::string pre = "E" + std::to_string(E) + ".";
        std::map<std::string, int> at;
        auto add = [&](const std::string& id, char site, int diag, int row) {
            at[id] = static_cast<int>(lp.verts.size());
            lp.verts.push_back({pre + id, site, diag, row});
        };
        for (int v = rb; v < rt; ++v) add("L" + std::to_string(v), v % 2 ? 'a' : 'c', E - 1, v);
        for (int v = rb + 1; v <= rt; ++v) add("R" + std::to_string(v), v % 2 ? 'a' : 'c', E + 1, v);
        add("Jb", cb, E, rb);
        add("Jt", ct, E, rt);
        auto edge = [&](const std::string& x, const std::string& y, Face f) {
            lp.edges.push_back({at.at(x), at.at(y), f});
        };
        auto Ls = [](int v) { return "L" + std::to_string(v); };
        auto Rs = [](int v) { return "R" + std::to_string(v); };
        for (int v = rb; v + 1 < rt; ++v) edge(Ls(v), Ls(v + 1), v % 2 == 0 ? Face::Front : Face::Back);
        edge(Ls(rt - 1), "Jt", Face::Back);
        edge("Jt", Rs(rt), Face::Front);
        for (int v = rt; v > rb + 1; --v) edge(Rs(v), Rs(v - 1), v % 2 == 0 ? Face::Back : Face::Front);
        edge(Rs(rb + 1), "Jb", Face::Front);
        edge("Jb", Ls(rb), Face::Back);
        loops.push_back(std::move(lp));
    }
    return loops;
}

}  // namespace

std::vector<ChessboardVertex> pretzel_chessboard(int n, int m) {
    std::vector<ChessboardVertex> out;
    for (auto& lp : pretzel_loops(n, m))
        for (auto& v : lp.verts)
            out.push_back({v.id, site_from_char(v.site), (v.diag - v.row) - n - 2 * m, n - v.row});
    return out;
}

PqModule pretzel_tangle(int n, int m) {
    PqModule mod;
    mod.name = "pretzel:" + std::to_string(n) + "," + std::to_string(m);
    mod.matching = kEvenMatching;
    auto loops = pretzel_loops(n, m);
    for (auto& lp : loops) {
        const int base = static_cast<int>(mod.size());
        for (auto& v : lp.verts) mod.add_generator({v.id, site_from_char(v.site), 0, {0, 0}});
        // every edge is a pair of arrows whose lengths add up to a full cycle
        for (auto& e : lp.edges) {
            const int sx = site_from_char(lp.verts[e.x].site), sy = site_from_char(lp.verts[e.y].site);
            const BasisPath xy = shortest_path(e.face, sx, sy);
            const BasisPath yx = shortest_path(e.face, sy, sx);
            mod.add_arrow(base + e.x, base + e.y, xy);
            mod.add_arrow(base + e.y, base + e.x, yx);
        }
        // delta: the a/c strings sit at -3/2, joiners follow from the arrows
        std::vector<bool> seen(lp.verts.size(), false);
        std::deque<int> q{0};
        seen[0] = true;
        mod.gens[base].delta2 = -3;
        while (!q.empty()) {
            const int x = q.front();
            q.pop_front();
            for (auto& [key, lab] : mod.arrows) {
                if (key.first != base + x) continue;
                const int y = key.second - base;
                const int d = mod.gens[base + x].delta2 + 2 - delta2(lab.terms().front());
                if (!seen[y]) {
                    seen[y] = true;
                    mod.gens[base + y].delta2 = d;
                    q.push_back(y);
                } else if (mod.gens[base + y].delta2 != d) {
                    throw std::logic_error("pretzel: delta grading does not close up");
                }
            }
        }
    }
    // Alexander: anchor each loop at its chessboard position, then require the
    // propagated bigrading to reproduce the whole board
    auto board = pretzel_chessboard(n, m);
    std::map<int, Alex2> anchors;
    int base = 0;
    for (auto& lp : loops) {
        anchors[base] = {2 * board[base].t1, 2 * board[base].t2};
        base += static_cast<int>(lp.verts.size());
    }
    if (!propagate_alexander(mod, anchors)) throw std::logic_error("pretzel: Alexander grading does not close up");
    for (std::size_t i = 0; i < board.size(); ++i) {
        const Alex2 want{2 * board[i].t1, 2 * board[i].t2};
        if (mod.gens[i].alex2 != want)
            throw std::logic_error("pretzel: generator " + board[i].id + " is off its chessboard square");
        if (mod.gens[i].delta2 % 2 == 0 && (board[i].site == 1 || board[i].site == 3))
            throw std::logic_error("pretzel: a/c generator at integral delta");
    }
    return mod;
}

// ---------------------------------------------------------------------------

int apply_symmetry(int site, SiteSymmetry s) {
    int t = wrap_site(site + s.rotation);
    if (s.reflect) t = wrap_site(1 - t);
    return t;
}

PqModule relabel_sites(const PqModule& m, SiteSymmetry s) {
    PqModule r = m;
    if (!m.name.empty()) r.name = m.name + "~";
    for (auto& g : r.gens) g.site = apply_symmetry(g.site, s);
    for (auto& pr : r.matching.pairs) pr = {apply_symmetry(pr.first, s), apply_symmetry(pr.second, s)};
    r.arrows.clear();
    auto map_path = [&](const BasisPath& b) {
        const int src = apply_symmetry(b.source, s);
        if (b.is_idem()) return BasisPath::idem(src);
        PathKind k = b.kind;
        if (s.reflect) k = (k == PathKind::P) ? PathKind::Q : PathKind::P;
        return k == PathKind::P ? BasisPath::p(src, b.length) : BasisPath::q(src, b.length);
    };
    for (auto& [key, lab] : m.arrows) {
        std::vector<BasisPath> t;
        for (auto& b : lab.terms()) t.push_back(map_path(b));
        r.add_arrow(key.first, key.second, AlgElem::from_terms(std::move(t)));
    }
    KillSet k = 0;
    for (int i = 0; i < 8; ++i)
        if (m.killed & (1u << i)) {
            BasisPath b = (i < 4) ? BasisPath::p(i + 1, 1) : BasisPath::q(i - 4, 1);
            k |= map_path(b).letter_mask();
        }
    r.killed = k;
    return r;
}

PqModule mutate(const PqModule& m) {
    PqModule r = reverse(relabel_sites(m, {2, false}));
    if (r.matching.pairs[0] == m.matching.pairs[1] && r.matching.pairs[1] == m.matching.pairs[0]) {
        std::swap(r.matching.pairs[0], r.matching.pairs[1]);
        for (auto& g : r.gens) std::swap(g.alex2[0], g.alex2[1]);
    }
    if (!(r.matching == m.matching)) throw std::logic_error("mutate: matching is not preserved");
    r.name = m.name.empty() ? "" : "mutant(" + m.name + ")";
    return r;
}

// ---------------------------------------------------------------------------

TangleSpec TangleSpec::parse(const std::string& s) {
    TangleSpec t;
    auto arg = [&](const std::string& prefix) { return s.substr(prefix.size()); };
    if (s == "zero" || s == "0") t.family = Family::Zero;
    else if (s == "inf" || s == "infinity") t.family = Family::Infinity;
    else if (s == "x+") t.family = Family::PosCrossing;
    else if (s == "x-") t.family = Family::NegCrossing;
    else if (s.rfind("twist:", 0) == 0) {
        t.family = Family::Twist;
        t.a = std::stoi(arg("twist:"));
    } else if (s.rfind("pretzel:", 0) == 0) {
        t.family = Family::Pretzel;
        const std::string r = arg("pretzel:");
        const auto comma = r.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("pretzel spec needs n,m");
        t.a = std::stoi(r.substr(0, comma));
        t.b = std::stoi(r.substr(comma + 1));
    } else if (s.rfind("rational:", 0) == 0) {
        t.family = Family::Rational;
        const std::string r = arg("rational:");
        const auto slash = r.find('/');
        t.a = std::stoi(r.substr(0, slash));
        t.b = slash == std::string::npos ? 1 : std::stoi(r.substr(slash + 1));
    } else if (s == "fig8:a" || s == "fig8:b") {
        t.family = Family::Figure8;
        t.a = s.back() == 'a' ? 0 : 1;
    } else {
        throw std::invalid_argument("unknown tangle spec '" + s + "'");
    }
    return t;
}

std::string TangleSpec::to_string() const {
    switch (family) {
        case Family::Zero: return "zero";
        case Family::Infinity: return "inf";
        case Family::PosCrossing: return "x+";
        case Family::NegCrossing: return "x-";
        case Family::Twist: return "twist:" + std::to_string(a);
        case Family::Pretzel: return "pretzel:" + std::to_string(a) + "," + std::to_string(b);
        case Family::Rational: return "rational:" + std::to_string(a) + "/" + std::to_string(b);
        case Family::Figure8: return a == 0 ? "fig8:a" : "fig8:b";
    }
    return "?";
}

PqModule build(const TangleSpec& spec) {
    switch (spec.family) {
        case TangleSpec::Family::Zero: return zero_tangle();
        case TangleSpec::Family::Infinity: return infinity_tangle();
        case TangleSpec::Family::PosCrossing: return pos_crossing();
        case TangleSpec::Family::NegCrossing: return neg_crossing();
        case TangleSpec::Family::Twist: return twist_tangle(spec.a);
        case TangleSpec::Family::Pretzel: return pretzel_tangle(spec.a, spec.b);
        case TangleSpec::Family::Rational: return rational_tangle(spec.a, spec.b);
        case TangleSpec::Family::Figure8: return figure8_module(spec.a);
    }
    throw std::invalid_argument("unsupported tangle spec");
}

PqModule build(const std::string& spec) { return build(TangleSpec::parse(spec)); }

}  // namespace pqm
