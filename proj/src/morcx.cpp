#include "pqm/morcx.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pqm/f2lin.hpp"

namespace pqm {

int GradedDims::total() const {
    int t = 0;
    for (auto& [k, v] : dims) t += v;
    return t;
}

void GradedDims::add(int delta2, Alex2 a, int n) {
    if (n == 0) return;
    if (univariate) a = {a[0] + a[1], 0};
    auto& slot = dims[{delta2, a[0], a[1]}];
    slot += n;
    if (slot == 0) dims.erase({delta2, a[0], a[1]});
}

GradedDims GradedDims::univariate_view() const {
    GradedDims g;
    g.univariate = true;
    g.stabilized = stabilized;
    g.note = note;
    for (auto& [k, v] : dims) g.add(std::get<0>(k), {std::get<1>(k), std::get<2>(k)}, v);
    return g;
}

std::map<int, int> GradedDims::delta_support() const {
    std::map<int, int> s;
    for (auto& [k, v] : dims) s[std::get<0>(k)] += v;
    return s;
}

GradedDims GradedDims::normalized() const {
    if (dims.empty()) return *this;
    int dmin = std::get<0>(dims.begin()->first);
    for (auto& [k, v] : dims) dmin = std::min(dmin, std::get<0>(k));
    // centre each Alexander coordinate when the multiset is symmetric after
    // translation; otherwise leave it raw
    long s1 = 0, s2 = 0;
    int n = 0;
    for (auto& [k, v] : dims) {
        s1 += static_cast<long>(std::get<1>(k)) * v;
        s2 += static_cast<long>(std::get<2>(k)) * v;
        n += v;
    }
    int c1 = 0, c2 = 0;
    if (s1 % n == 0 && s2 % n == 0) {
        c1 = static_cast<int>(s1 / n);
        c2 = static_cast<int>(s2 / n);
        std::map<std::pair<int, int>, int> alex, mirrored;
        for (auto& [k, v] : dims) {
            alex[{std::get<1>(k) - c1, std::get<2>(k) - c2}] += v;
            mirrored[{c1 - std::get<1>(k), c2 - std::get<2>(k)}] += v;
        }
        if (alex != mirrored) c1 = c2 = 0;
    }
    GradedDims g;
    g.univariate = univariate;
    g.stabilized = stabilized;
    g.note = note;
    for (auto& [k, v] : dims) g.dims[{std::get<0>(k) - dmin, std::get<1>(k) - c1, std::get<2>(k) - c2}] += v;
    return g;
}

std::string GradedDims::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [k, v] : dims) {
        if (!first) os << " + ";
        first = false;
        if (v != 1) os << v << "*";
        os << "d^" << std::get<0>(k) << "/2";
        os << " t1^" << std::get<1>(k) << "/2";
        if (!univariate) os << " t2^" << std::get<2>(k) << "/2";
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------------------

Morphism identity_morphism(const PqModule& m) {
    Morphism id;
    for (std::size_t i = 0; i < m.size(); ++i)
        id.add(static_cast<int>(i), static_cast<int>(i), BasisPath::idem(m.gens[i].site));
    return id;
}

Morphism compose(const Morphism& g, const Morphism& f) {
    std::map<int, std::vector<std::pair<int, const AlgElem*>>> gout;
    for (auto& [key, lab] : g.comps) gout[key.first].push_back({key.second, &lab});
    Morphism r;
    r.degree2 = g.degree2 + f.degree2;
    for (auto& [key, a] : f.comps) {
        auto it = gout.find(key.second);
        if (it == gout.end()) continue;
        for (auto& [z, b] : it->second) r.add(key.first, z, multiply(*b, a));
    }
    return r;
}

Morphism add(const Morphism& a, const Morphism& b) {
    Morphism r = a;
    for (auto& [key, lab] : b.comps) r.add(key.first, key.second, lab);
    return r;
}

static Morphism killed_copy(Morphism m, KillSet k) {
    if (!k) return m;
    Morphism r;
    r.degree2 = m.degree2;
    for (auto& [key, lab] : m.comps) r.add(key.first, key.second, kill(lab, k));
    return r;
}

Morphism apply_d(const PqModule& src, const PqModule& dst, const Morphism& f) {
    Morphism r = add(compose(differential(dst), f), compose(f, differential(src)));
    r.degree2 = f.degree2 + 2;
    return killed_copy(r, src.killed | dst.killed);
}

bool is_cycle(const PqModule& src, const PqModule& dst, const Morphism& f) { return apply_d(src, dst, f).is_zero(); }

bool morphism_well_formed(const PqModule& src, const PqModule& dst, const Morphism& f, std::string* why) {
    for (auto& [key, lab] : f.comps) {
        if (key.first < 0 || key.first >= static_cast<int>(src.size()) || key.second < 0 ||
            key.second >= static_cast<int>(dst.size())) {
            if (why) *why = "component index out of range";
            return false;
        }
        const auto& x = src.gens[key.first];
        const auto& y = dst.gens[key.second];
        for (auto& t : lab.terms()) {
            if (t.source != x.site || t.target() != y.site) {
                if (why) *why = "component " + x.id + "->" + y.id + " term " + t.to_string() + " has wrong idempotents";
                return false;
            }
            if (y.delta2 - x.delta2 + delta2(t) != f.degree2) {
                if (why) *why = "component " + x.id + "->" + y.id + " term " + t.to_string() + " has wrong degree";
                return false;
            }
        }
    }
    return true;
}

std::vector<ElementaryMorphism> mor_basis(const PqModule& src, const PqModule& dst, int degree2) {
    std::vector<ElementaryMorphism> out;
    const KillSet k = src.killed | dst.killed;
    for (std::size_t i = 0; i < src.size(); ++i)
        for (std::size_t j = 0; j < dst.size(); ++j) {
            const auto& x = src.gens[i];
            const auto& y = dst.gens[j];
            const int len = degree2 - y.delta2 + x.delta2;
            if (len < 0) continue;
            auto push = [&](const BasisPath& b) {
                if (b.target() == y.site && !(b.letter_mask() & k))
                    out.push_back({static_cast<int>(i), static_cast<int>(j), b});
            };
            if (len == 0) {
                if (x.site == y.site) out.push_back({static_cast<int>(i), static_cast<int>(j), BasisPath::idem(x.site)});
                continue;
            }
            push(BasisPath::p(x.site, len));
            push(BasisPath::q(x.site, len));
        }
    return out;
}

ColourTransport colour_transport(const Matching& from, const Matching& to) {
    if (from == to) return {};
    std::set<int> in_from{from.pairs[0].first, from.pairs[1].first};
    std::set<int> in_to{to.pairs[0].first, to.pairs[1].first};
    if (in_from != in_to) return {true, false, true};
    Matching sw{{{from.pairs[1], from.pairs[0]}}};
    if (sw == to) return {false, true};
    return {true, false};
}

Alex2 transport(const Alex2& a, const ColourTransport& t) {
    if (t.ignore) return {0, 0};
    if (t.univariate) return {a[0] + a[1], 0};
    if (t.swap) return {a[1], a[0]};
    return a;
}

namespace {

struct Slice {
    std::vector<ElementaryMorphism> basis;
    std::map<ElementaryMorphism, int> index;
    std::vector<Alex2> alex;
};

class MorComplex {
public:
    MorComplex(const PqModule& src, const PqModule& dst) : src_(src), dst_(dst) {
        tr_ = colour_transport(src.matching, dst.matching);
        if (src.univariate || dst.univariate) tr_.univariate = true;
        for (auto& [key, lab] : src.arrows) src_in_[key.second].push_back({key.first, &lab});
        for (auto& [key, lab] : dst.arrows) dst_out_[key.first].push_back({key.second, &lab});
    }

    bool univariate() const { return tr_.univariate; }

    const Slice& slice(int d2) {
        auto it = cache_.find(d2);
        if (it != cache_.end()) return it->second;
        Slice s;
        s.basis = mor_basis(src_, dst_, d2);
        for (std::size_t i = 0; i < s.basis.size(); ++i) {
            s.index[s.basis[i]] = static_cast<int>(i);
            const auto& e = s.basis[i];
            const Alex2 ax = transport(src_.gens[e.from].alex2, tr_);
            const Alex2 ay = transport(dst_.gens[e.to].alex2, tr_);
            Alex2 al = alexander2(e.path, dst_.matching);
            if (src_.univariate && !dst_.univariate) al = alexander2(e.path, src_.matching);
            if (tr_.univariate) al = {al[0] + al[1], 0};
            if (tr_.ignore) s.alex.push_back({0, 0});
            else s.alex.push_back({ay[0] - ax[0] + al[0], ay[1] - ax[1] + al[1]});
        }
        return cache_.emplace(d2, std::move(s)).first->second;
    }

    // D applied to one basis element, as a list of basis elements one degree up
    std::vector<ElementaryMorphism> d_of(const ElementaryMorphism& e) const {
        const KillSet k = src_.killed | dst_.killed;
        std::map<ElementaryMorphism, int> acc;
        auto it = dst_out_.find(e.to);
        if (it != dst_out_.end())
            for (auto& [z, lab] : it->second)
                for (auto& t : lab->terms())
                    if (auto c = pqm::compose(t, e.path)) acc[{e.from, z, *c}] ^= 1;
        auto jt = src_in_.find(e.from);
        if (jt != src_in_.end())
            for (auto& [w, lab] : jt->second)
                for (auto& t : lab->terms())
                    if (auto c = pqm::compose(e.path, t)) acc[{w, e.to, *c}] ^= 1;
        std::vector<ElementaryMorphism> out;
        for (auto& [m, v] : acc)
            if (v && !(m.path.letter_mask() & k)) out.push_back(m);
        return out;
    }

    // rank of D restricted to one Alexander block of degree d2
    std::map<Alex2, int> ranks(int d2) {
        auto rit = rank_cache_.find(d2);
        if (rit != rank_cache_.end()) return rit->second;
        const Slice& s0 = slice(d2);
        const Slice& s1 = slice(d2 + 2);
        std::map<Alex2, std::vector<int>> rows, cols;
        for (std::size_t i = 0; i < s0.basis.size(); ++i) cols[s0.alex[i]].push_back(static_cast<int>(i));
        std::map<int, int> pos1;
        std::map<Alex2, int> count1;
        for (std::size_t i = 0; i < s1.basis.size(); ++i) pos1[static_cast<int>(i)] = count1[s1.alex[i]]++;
        std::map<Alex2, int> out;
        for (auto& [a, idx] : cols) {
            F2Matrix mat(static_cast<std::size_t>(count1[a]), idx.size());
            for (std::size_t c = 0; c < idx.size(); ++c)
                for (auto& img : d_of(s0.basis[idx[c]])) {
                    auto f = s1.index.find(img);
                    if (f == s1.index.end())
                        throw std::logic_error("mor complex: image outside the next slice");
                    if (s1.alex[f->second] != a) throw std::logic_error("mor complex: D changed Alexander grading");
                    mat.flip(static_cast<std::size_t>(pos1[f->second]), c);
                }
            out[a] = static_cast<int>(rank(mat));
        }
        rank_cache_[d2] = out;
        return out;
    }

    std::map<Alex2, int> homology(int d2) {
        const Slice& s = slice(d2);
        std::map<Alex2, int> dim;
        for (auto& a : s.alex) dim[a] += 1;
        for (auto& [a, r] : ranks(d2)) dim[a] -= r;
        for (auto& [a, r] : ranks(d2 - 2)) dim[a] -= r;
        for (auto it = dim.begin(); it != dim.end();) {
            if (it->second < 0) throw std::logic_error("mor complex: negative homology (D^2 != 0?)");
            if (it->second == 0) it = dim.erase(it);
            else ++it;
        }
        return dim;
    }

private:
    const PqModule& src_;
    const PqModule& dst_;
    ColourTransport tr_;
    std::map<int, std::vector<std::pair<int, const AlgElem*>>> src_in_, dst_out_;
    std::map<int, Slice> cache_;
    std::map<int, std::map<Alex2, int>> rank_cache_;
};

int window_cap() {
    if (const char* e = std::getenv("PQM_WINDOW_CAP")) {
        const int v = std::atoi(e);
        if (v > 0) return v;
    }
    return 16;
}

}  // namespace

GradedDims mor_homology_window(const PqModule& src, const PqModule& dst, int lo, int hi) {
    MorComplex cx(src, dst);
    GradedDims g;
    g.univariate = cx.univariate();
    for (int d = lo; d <= hi; ++d)
        for (auto& [a, n] : cx.homology(d)) g.add(d, a, n);
    return g;
}

GradedDims mor_homology_window(const PqModule& src, const PqModule& dst) {
    MorComplex cx(src, dst);
    GradedDims g;
    g.univariate = cx.univariate();
    if (src.size() == 0 || dst.size() == 0) return g;
    int dmin = 1 << 30, dmax = -(1 << 30);
    for (auto& x : src.gens)
        for (auto& y : dst.gens) {
            dmin = std::min(dmin, y.delta2 - x.delta2);
            dmax = std::max(dmax, y.delta2 - x.delta2);
        }
    int lo = dmin - 4, hi = dmax + 6;
    std::map<int, std::map<Alex2, int>> h;
    auto fill = [&](int a, int b) {
        for (int d = a; d <= b; ++d)
            if (!h.count(d)) h[d] = cx.homology(d);
    };
    auto empty_at = [&](int d) { return h[d].empty(); };
    fill(lo, hi);
    const int cap = window_cap();
    int steps = 0;
    // both parities of doubled degree: two consecutive empty degrees of each
    // parity at each end of the window
    for (;;) {
        const bool low_ok = empty_at(lo) && empty_at(lo + 1) && empty_at(lo + 2) && empty_at(lo + 3);
        const bool high_ok = empty_at(hi) && empty_at(hi - 1) && empty_at(hi - 2) && empty_at(hi - 3);
        if (low_ok && high_ok) break;
        if (++steps > cap) {
            g.stabilized = false;
            g.note = "homology window did not stabilize within the expansion cap";
            break;
        }
        if (!low_ok) {
            lo -= 4;
            fill(lo, lo + 3);
        }
        if (!high_ok) {
            hi += 4;
            fill(hi - 3, hi);
        }
    }
    for (auto& [d, m] : h)
        for (auto& [a, n] : m) g.add(d, a, n);
    return g;
}

}  // namespace pqm
