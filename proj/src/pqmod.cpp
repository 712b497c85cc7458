#include "pqm/pqmod.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pqm/morcx.hpp"

namespace pqm {

int PqModule::add_generator(Generator g) {
    if (index_of(g.id) >= 0) throw std::invalid_argument("duplicate generator id '" + g.id + "'");
    g.site = wrap_site(g.site);
    gens.push_back(std::move(g));
    return static_cast<int>(gens.size()) - 1;
}

int PqModule::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].id == id) return static_cast<int>(i);
    return -1;
}

void PqModule::add_arrow(int from, int to, const AlgElem& label) {
    if (from < 0 || to < 0 || from >= static_cast<int>(gens.size()) || to >= static_cast<int>(gens.size()))
        throw std::out_of_range("arrow endpoint out of range");
    if (label.is_zero()) return;
    auto key = std::make_pair(from, to);
    auto it = arrows.find(key);
    if (it == arrows.end()) {
        arrows.emplace(key, label);
        return;
    }
    it->second += label;
    if (it->second.is_zero()) arrows.erase(it);
}

void PqModule::add_arrow(const std::string& from, const std::string& to, const AlgElem& label) {
    const int f = index_of(from), t = index_of(to);
    if (f < 0) throw std::invalid_argument("unknown generator '" + from + "'");
    if (t < 0) throw std::invalid_argument("unknown generator '" + to + "'");
    add_arrow(f, t, label);
}

AlgElem PqModule::label(int from, int to) const {
    auto it = arrows.find({from, to});
    return it == arrows.end() ? AlgElem{} : it->second;
}

void Morphism::add(int from, int to, const AlgElem& label) {
    if (label.is_zero()) return;
    auto key = std::make_pair(from, to);
    auto it = comps.find(key);
    if (it == comps.end()) {
        comps.emplace(key, label);
        return;
    }
    it->second += label;
    if (it->second.is_zero()) comps.erase(it);
}

// ---------------------------------------------------------------------------

ValidationReport validate(const PqModule& m) {
    ValidationReport rep;
    std::set<std::string> ids;
    for (auto& g : m.gens) {
        if (!ids.insert(g.id).second) rep.fail("duplicate generator id '" + g.id + "'");
        if (g.site < 1 || g.site > 4) rep.fail("generator '" + g.id + "' has invalid site");
    }
    if (!m.matching.valid()) rep.fail("matching does not partition the four sites");
    if (m.univariate)
        for (auto& g : m.gens)
            if (g.alex2[1] != 0) rep.fail("univariate module stores a second Alexander coordinate on '" + g.id + "'");

    for (auto& [key, lab] : m.arrows) {
        const auto& x = m.gens[key.first];
        const auto& y = m.gens[key.second];
        const std::string where = "arrow " + x.id + "->" + y.id + " [" + lab.to_string() + "]";
        if (lab.is_zero()) rep.fail(where + ": zero label stored");
        for (auto& t : lab.terms()) {
            if (t.source != x.site || t.target() != y.site) {
                rep.fail(where + ": term " + t.to_string() + " does not run from site " + site_char(x.site) +
                         " to site " + site_char(y.site));
                continue;
            }
            if (t.letter_mask() & m.killed) rep.fail(where + ": term " + t.to_string() + " uses a killed letter");
            if (y.delta2 - x.delta2 + delta2(t) != 2)
                rep.fail(where + ": term " + t.to_string() + " breaks the delta grading");
            const Alex2 a = label_alex2(t, m);
            if (y.alex2[0] - x.alex2[0] + a[0] != 0 || y.alex2[1] - x.alex2[1] + a[1] != 0)
                rep.fail(where + ": term " + t.to_string() + " breaks the Alexander grading");
        }
    }

    // d^2 = curvature
    std::vector<std::vector<std::pair<int, const AlgElem*>>> out(m.size());
    for (auto& [key, lab] : m.arrows) out[key.first].push_back({key.second, &lab});
    for (std::size_t x = 0; x < m.size(); ++x) {
        std::map<int, AlgElem> sq;
        for (auto& [y, a] : out[x])
            for (auto& [z, b] : out[y]) sq[z] += multiply(*b, *a);
        const AlgElem want = kill(curvature_at(m.gens[x].site), m.killed);
        for (auto& [z, v] : sq) {
            const AlgElem expect = (z == static_cast<int>(x)) ? want : AlgElem{};
            if (v != expect)
                rep.fail("curvature: d^2 from " + m.gens[x].id + " to " + m.gens[z].id + " is " + v.to_string() +
                         ", expected " + expect.to_string());
        }
        if (!want.is_zero() && !sq.count(static_cast<int>(x)))
            rep.fail("curvature: d^2 of " + m.gens[x].id + " misses " + want.to_string());
    }
    return rep;
}

void require_valid(const PqModule& m, const std::string& what) {
    auto r = validate(m);
    if (!r.ok) {
        std::ostringstream os;
        os << what << ": invalid module";
        for (std::size_t i = 0; i < r.issues.size() && i < 5; ++i) os << "; " << r.issues[i];
        throw std::runtime_error(os.str());
    }
}

Morphism differential(const PqModule& m) {
    Morphism d;
    d.comps = m.arrows;
    d.degree2 = 2;
    return d;
}

PqModule with_differential(const PqModule& m, const Morphism& d) {
    PqModule r = m;
    r.arrows = d.comps;
    return r;
}

// ---------------------------------------------------------------------------

bool is_reduced(const PqModule& m) {
    return std::none_of(m.arrows.begin(), m.arrows.end(), [](const auto& kv) { return kv.second.has_idem(); });
}

PqModule reduce(const PqModule& m) {
    const int n = static_cast<int>(m.size());
    std::vector<std::map<int, AlgElem>> out(n);
    std::vector<std::set<int>> in(n);
    for (auto& [key, lab] : m.arrows) {
        out[key.first][key.second] = lab;
        in[key.second].insert(key.first);
    }
    std::vector<bool> alive(n, true);

    auto set_label = [&](int from, int to, const AlgElem& lab) {
        if (lab.is_zero()) {
            out[from].erase(to);
            in[to].erase(from);
        } else {
            out[from][to] = lab;
            in[to].insert(from);
        }
    };

    for (;;) {
        int bx = -1, by = -1;
        for (int x = 0; x < n; ++x) {
            if (!alive[x]) continue;
            for (auto& [y, lab] : out[x]) {
                if (!lab.has_idem()) continue;
                if (bx < 0 || std::tie(m.gens[x].id, m.gens[y].id) < std::tie(m.gens[bx].id, m.gens[by].id)) {
                    bx = x;
                    by = y;
                }
            }
        }
        if (bx < 0) break;
        const AlgElem& unit = out[bx][by];
        if (unit.size() != 1) throw std::runtime_error("reduce: idempotent arrow carries extra terms");

        std::vector<std::pair<int, AlgElem>> into_y, from_x;
        for (int w : in[by])
            if (w != bx) into_y.push_back({w, out[w][by]});
        for (auto& [z, c] : out[bx])
            if (z != by) from_x.push_back({z, c});
        for (auto& [w, b] : into_y)
            for (auto& [z, c] : from_x) {
                if (w == bx || w == by || z == bx || z == by) continue;
                AlgElem cur = out[w].count(z) ? out[w][z] : AlgElem{};
                set_label(w, z, cur + multiply(c, b));
            }
        // drop x and y
        for (int g : {bx, by}) {
            alive[g] = false;
            for (auto& [z, lab] : out[g]) in[z].erase(g);
            out[g].clear();
            for (int w : std::vector<int>(in[g].begin(), in[g].end())) out[w].erase(g);
            in[g].clear();
        }
    }

    PqModule r = m;
    r.gens.clear();
    r.arrows.clear();
    std::vector<int> idx(n, -1);
    for (int x = 0; x < n; ++x)
        if (alive[x]) idx[x] = r.add_generator(m.gens[x]);
    for (int x = 0; x < n; ++x)
        if (alive[x])
            for (auto& [y, lab] : out[x]) r.add_arrow(idx[x], idx[y], lab);
    return r;
}

PqModule clean_up(const PqModule& m, const Morphism& h) {
    if (h.is_zero()) return m;
    if (h.degree2 != 0) throw std::invalid_argument("clean_up: h must have delta degree 0");
    std::string why;
    if (!morphism_well_formed(m, m, h, &why)) throw std::invalid_argument("clean_up: " + why);
    const Morphism dh = apply_d(m, m, h);
    if (!compose(h, h).is_zero()) throw std::invalid_argument("clean_up: h^2 != 0");
    if (!compose(h, dh).is_zero()) throw std::invalid_argument("clean_up: h.D(h) != 0");
    if (!compose(dh, h).is_zero()) throw std::invalid_argument("clean_up: D(h).h != 0");
    return with_differential(m, add(differential(m), dh));
}

PqModule mirror(const PqModule& m) {
    PqModule r;
    r.name = m.name.empty() ? "" : "mirror(" + m.name + ")";
    r.matching = m.matching;
    r.colours = m.colours;
    r.univariate = m.univariate;
    // killed letters swap faces as well
    r.killed = static_cast<KillSet>(((m.killed & 0x0f) << 4) | ((m.killed & 0xf0) >> 4));
    for (auto g : m.gens) {
        g.delta2 = -g.delta2;
        g.alex2 = {-g.alex2[0], -g.alex2[1]};
        r.add_generator(g);
    }
    for (auto& [key, lab] : m.arrows) {
        std::vector<BasisPath> t;
        for (auto& b : lab.terms()) {
            if (b.is_idem()) t.push_back(b);
            else if (b.kind == PathKind::P) t.push_back(BasisPath::q(b.target(), b.length));
            else t.push_back(BasisPath::p(b.target(), b.length));
        }
        r.add_arrow(key.second, key.first, AlgElem::from_terms(std::move(t)));
    }
    return r;
}

PqModule reverse(const PqModule& m) {
    PqModule r = m;
    if (!m.name.empty()) r.name = "reverse(" + m.name + ")";
    for (auto& g : r.gens) g.alex2 = {-g.alex2[0], -g.alex2[1]};
    r.matching = m.matching.reversed();
    return r;
}

Alex2 label_alex2(const BasisPath& b, const PqModule& m) {
    Alex2 a = alexander2(b, m.matching);
    if (m.univariate) return {a[0] + a[1], 0};
    return a;
}

PqModule to_univariate(const PqModule& m) {
    if (m.univariate) return m;
    PqModule r = m;
    r.univariate = true;
    for (auto& g : r.gens) g.alex2 = {g.alex2[0] + g.alex2[1], 0};
    return r;
}

PqModule shift_gradings(const PqModule& m, GradingShift s) {
    PqModule r = m;
    for (auto& g : r.gens) {
        g.delta2 += s.delta2;
        g.alex2[0] += s.alex2[0];
        g.alex2[1] += s.alex2[1];
    }
    return r;
}

static std::string fresh_id(const PqModule& m, const std::string& base) {
    if (m.index_of(base) < 0) return base;
    for (int k = 1;; ++k) {
        std::string c = base + "_" + std::to_string(k);
        if (m.index_of(c) < 0) return c;
    }
}

PqModule direct_sum(const PqModule& a0, const PqModule& b0) {
    const bool uni = a0.univariate || b0.univariate;
    const PqModule a = uni ? to_univariate(a0) : a0;
    const PqModule b = uni ? to_univariate(b0) : b0;
    PqModule r = a;
    std::vector<int> idx;
    for (auto g : b.gens) {
        g.id = fresh_id(r, g.id);
        idx.push_back(r.add_generator(g));
    }
    for (auto& [key, lab] : b.arrows) r.add_arrow(idx[key.first], idx[key.second], lab);
    return r;
}

static bool alexander_homogeneous(const PqModule& s, const PqModule& d, const Morphism& f) {
    for (auto& [key, lab] : f.comps)
        for (auto& t : lab.terms()) {
            const auto& x = s.gens[key.first];
            const auto& y = d.gens[key.second];
            const Alex2 a = label_alex2(t, d);
            if (y.alex2[0] - x.alex2[0] + a[0] != 0 || y.alex2[1] - x.alex2[1] + a[1] != 0) return false;
        }
    return true;
}

PqModule mapping_cone(const PqModule& src, const PqModule& dst, const Morphism& f, ConeShift shift) {
    const int ds = shift.auto_delta ? f.degree2 - 2 : shift.delta2;
    bool uni = src.univariate || dst.univariate || !(src.matching == dst.matching);
    PqModule s, d;
    for (int attempt = 0; attempt < 2; ++attempt) {
        s = shift_gradings(uni ? to_univariate(src) : src, {ds, shift.alex2});
        d = uni ? to_univariate(dst) : dst;
        s.matching = d.matching;
        if (uni || alexander_homogeneous(s, d, f)) break;
        // homogeneous only in the total grading: fall back to one variable
        uni = true;
    }
    std::string why;
    Morphism f0 = f;
    f0.degree2 = 2;
    if (!morphism_well_formed(s, d, f0, &why))
        throw std::invalid_argument("mapping_cone: morphism is not a homogeneous degree-one map after shifting: " + why);
    if (!alexander_homogeneous(s, d, f))
        throw std::invalid_argument("mapping_cone: morphism is not Alexander homogeneous after shifting");
    if (!is_cycle(src, dst, f)) throw std::invalid_argument("mapping_cone: morphism is not a cycle");

    PqModule r;
    r.name = "cone";
    r.matching = dst.matching;
    r.colours = dst.colours;
    r.killed = src.killed | dst.killed;
    r.univariate = uni;
    std::set<std::string> dst_ids;
    for (auto& g : d.gens) dst_ids.insert(g.id);
    bool clash = false;
    for (auto& g : s.gens) clash = clash || dst_ids.count(g.id);
    std::vector<int> si, ti;
    for (auto g : s.gens) {
        if (clash) g.id = "s." + g.id;
        si.push_back(r.add_generator(g));
    }
    for (auto g : d.gens) {
        if (clash) g.id = "t." + g.id;
        ti.push_back(r.add_generator(g));
    }
    for (auto& [key, lab] : s.arrows) r.add_arrow(si[key.first], si[key.second], lab);
    for (auto& [key, lab] : d.arrows) r.add_arrow(ti[key.first], ti[key.second], lab);
    for (auto& [key, lab] : f.comps) r.add_arrow(si[key.first], ti[key.second], lab);
    return r;
}

PqModule tensor_v(const PqModule& m, GradingShift first, GradingShift second) {
    PqModule a = shift_gradings(m, first);
    PqModule b = shift_gradings(m, second);
    for (auto& g : a.gens) g.id += "'0";
    for (auto& g : b.gens) g.id += "'1";
    PqModule r = direct_sum(a, b);
    if (!m.name.empty()) r.name = m.name + "xV";
    return r;
}

PqModule quotient_module(const PqModule& m, KillSet killed) {
    const KillSet all = m.killed | killed;
    const int np = __builtin_popcount(all & 0x0f), nq = __builtin_popcount(all & 0xf0);
    if (np > 1 || nq > 1)
        throw std::invalid_argument("quotient_module: at most one killed letter per face is supported");
    PqModule r = m;
    r.killed = all;
    r.arrows.clear();
    for (auto& [key, lab] : m.arrows) r.add_arrow(key.first, key.second, kill(lab, all));
    return r;
}

}  // namespace pqm
