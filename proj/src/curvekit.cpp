#include "pqm/curvekit.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace pqm {

namespace {

int mod4(int x) { return ((x % 4) + 4) % 4; }

BasisPath face_path(Face f, int source, int length) {
    return f == Face::Front ? BasisPath::p(source, length) : BasisPath::q(source, length);
}

Alex2 path_alex2(const BasisPath& b, const Matching& m, bool univariate) {
    Alex2 a = alexander2(b, m);
    if (univariate) return {a[0] + a[1], 0};
    return a;
}

Face other(Face f) { return f == Face::Front ? Face::Back : Face::Front; }

using DotRef = std::pair<int, int>;  // (arc, index)

struct Partner {
    int arc = 0;
    int idx = -1;
    int len = 0;
};

// Perfect matching front -> back inside the support of p, keeping the
// entries of `prev` that are still valid.  Kuhn's algorithm.
std::vector<int> support_matching(const F2Matrix& p, const std::vector<int>& prev) {
    const int n = static_cast<int>(p.rows());
    std::vector<int> to_back(n, -1), to_front(n, -1);
    for (int r = 0; r < n && r < static_cast<int>(prev.size()); ++r) {
        int c = prev[r];
        if (c >= 0 && c < n && p.get(r, c) && to_front[c] < 0) {
            to_back[r] = c;
            to_front[c] = r;
        }
    }
    // prefer the diagonal for rows not yet matched
    for (int r = 0; r < n; ++r)
        if (to_back[r] < 0 && p.get(r, r) && to_front[r] < 0) {
            to_back[r] = r;
            to_front[r] = r;
        }
    std::vector<char> seen;
    std::function<bool(int)> augment = [&](int r) -> bool {
        for (int c = 0; c < n; ++c) {
            if (!p.get(r, c) || seen[c]) continue;
            seen[c] = 1;
            if (to_front[c] < 0 || augment(to_front[c])) {
                to_back[r] = c;
                to_front[c] = r;
                return true;
            }
        }
        return false;
    };
    for (int r = 0; r < n; ++r) {
        if (to_back[r] >= 0) continue;
        seen.assign(n, 0);
        if (!augment(r)) throw std::runtime_error("arc decoration is not invertible");
    }
    return to_back;
}

}  // namespace

// ---------------------------------------------------------------------------
// Precurve basics
// ---------------------------------------------------------------------------

std::size_t Precurve::total_dots() const {
    std::size_t n = 0;
    for (auto& v : front) n += v.size();
    return n;
}

bool Precurve::simply_faced() const {
    for (int f = 0; f < 2; ++f) {
        const auto& side = f == 0 ? front : back;
        std::map<DotRef, int> outdeg, indeg;
        std::set<std::tuple<int, int, int, int, int>> arrows;
        for (auto& a : faces[f]) {
            outdeg[{a.from_arc, a.from}]++;
            indeg[{a.to_arc, a.to}]++;
            arrows.insert({a.from_arc, a.from, a.to_arc, a.to, a.length});
        }
        for (auto& a : faces[f])
            if (!arrows.count({a.to_arc, a.to, a.from_arc, a.from, 4 - a.length})) return false;
        for (int arc = 1; arc <= 4; ++arc)
            for (int i = 0; i < static_cast<int>(side[arc - 1].size()); ++i)
                if (outdeg[{arc, i}] != 1 || indeg[{arc, i}] != 1) return false;
    }
    return true;
}

std::vector<Join> Precurve::joins(Face f) const {
    if (!simply_faced()) throw std::logic_error("joins: precurve is not simply-faced");
    std::vector<Join> out;
    for (auto& a : faces[static_cast<int>(f)])
        if (std::make_pair(a.from_arc, a.from) < std::make_pair(a.to_arc, a.to))
            out.push_back({f, a.from_arc, a.from, a.to_arc, a.to, a.length});
    return out;
}

Precurve to_precurve(const PqModule& m) {
    if (m.killed != 0) throw std::invalid_argument("to_precurve: quotient contexts are not supported");
    Precurve p;
    p.name = m.name;
    p.matching = m.matching;
    p.colours = m.colours;
    p.univariate = m.univariate;
    std::vector<DotRef> where(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto& g = m.gens[i];
        const int a = g.site;
        where[i] = {a, static_cast<int>(p.front[a - 1].size())};
        p.front[a - 1].push_back({g.id, g.delta2, g.alex2});
        p.back[a - 1].push_back({g.id, g.delta2, g.alex2});
        p.order.push_back(where[i]);
    }
    for (int a = 0; a < 4; ++a) p.P[a] = F2Matrix::identity(p.front[a].size());
    for (auto& [key, lab] : m.arrows) {
        for (auto& t : lab.terms()) {
            if (t.is_idem()) throw std::invalid_argument("to_precurve: module is not reduced");
            const int f = t.kind == PathKind::P ? 0 : 1;
            p.faces[f].push_back({where[key.first].first, where[key.first].second, where[key.second].first,
                                  where[key.second].second, t.length});
        }
    }
    for (auto& v : p.faces) std::sort(v.begin(), v.end());
    return p;
}

PqModule from_precurve(const Precurve& p) {
    PqModule m;
    m.name = p.name;
    m.matching = p.matching;
    m.colours = p.colours;
    m.univariate = p.univariate;

    std::vector<DotRef> order = p.order;
    if (order.size() != p.total_dots()) {
        order.clear();
        for (int a = 1; a <= 4; ++a)
            for (int i = 0; i < static_cast<int>(p.dots(a)); ++i) order.push_back({a, i});
    }
    std::map<DotRef, int> gi;
    for (auto& [a, i] : order) {
        const Dot& d = p.front[a - 1].at(i);
        gi[{a, i}] = m.add_generator({d.id, a, d.delta2, d.alex2});
    }
    for (auto& fa : p.faces[0]) m.add_arrow(gi.at({fa.from_arc, fa.from}), gi.at({fa.to_arc, fa.to}), BasisPath::p(fa.from_arc, fa.length));

    std::array<F2Matrix, 4> inv;
    for (int a = 0; a < 4; ++a) {
        auto pi = invert(p.P[a]);
        if (!pi) throw std::invalid_argument("from_precurve: arc decoration is not invertible");
        inv[a] = *pi;
    }
    // a back dot u is sum_i P[i][u] f_i, so f_i = sum_u Pinv[u][i] b_u
    for (auto& ba : p.faces[1]) {
        const F2Matrix& pin = inv[ba.from_arc - 1];
        const F2Matrix& pout = p.P[ba.to_arc - 1];
        const BasisPath lab = BasisPath::q(ba.from_arc, ba.length);
        for (std::size_t i = 0; i < pin.cols(); ++i) {
            if (!pin.get(ba.from, i)) continue;
            for (std::size_t k = 0; k < pout.rows(); ++k) {
                if (!pout.get(k, ba.to)) continue;
                m.add_arrow(gi.at({ba.from_arc, static_cast<int>(i)}), gi.at({ba.to_arc, static_cast<int>(k)}), lab);
            }
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Simply-faced form
// ---------------------------------------------------------------------------
//
// Gradings pin every path length: a component x -> y has length
// 2 + h(x) - h(y) with h the doubled delta grading, and a degree-zero basis
// change x -> x + path.y needs h(y) <= h(x).  A face differential is thus an
// F2 involution B between the classes c and c+2 (c = site -/+ h mod 4), and
// the graded automorphisms are the filtered ones.  Bruhat elimination brings
// the block c -> c+2 to a permutation, i.e. every dot on exactly one join.
// Only the idempotent (same arc, same grading) part of the basis change is
// visible in the arc decorations; the rest are clean-up homotopies that do not
// touch the other face.

Precurve make_simply_faced(const Precurve& p0) {
    Precurve p = p0;
    for (int f = 0; f < 2; ++f) {
        const Face face = static_cast<Face>(f);
        auto& side = f == 0 ? p.front : p.back;
        std::vector<DotRef> dots;
        std::array<std::vector<int>, 4> gidx;
        for (int a = 1; a <= 4; ++a)
            for (int i = 0; i < static_cast<int>(side[a - 1].size()); ++i) {
                gidx[a - 1].push_back(static_cast<int>(dots.size()));
                dots.push_back({a, i});
            }
        const int n = static_cast<int>(dots.size());
        if (n == 0) continue;
        std::vector<int> h(n), cls(n);
        for (int g = 0; g < n; ++g) {
            h[g] = side[dots[g].first - 1][dots[g].second].delta2;
            cls[g] = face == Face::Front ? mod4(dots[g].first - h[g]) : mod4(dots[g].first + h[g]);
        }
        F2Matrix B(n, n);
        for (auto& a : p.faces[f]) {
            const int x = gidx[a.from_arc - 1].at(a.from), y = gidx[a.to_arc - 1].at(a.to);
            if (a.length != 2 + h[x] - h[y])
                throw std::invalid_argument("make_simply_faced: face component violates the delta grading");
            B.flip(y, x);
        }
        if (!(B * B).is_identity())
            throw std::invalid_argument("make_simply_faced: face differential does not square to the curvature");

        std::vector<int> src, tgt;
        std::vector<int> pos(n, -1);
        for (int g = 0; g < n; ++g) {
            if (cls[g] < 2) {
                pos[g] = static_cast<int>(src.size());
                src.push_back(g);
            } else {
                pos[g] = static_cast<int>(tgt.size());
                tgt.push_back(g);
            }
        }
        if (src.size() != tgt.size()) throw std::invalid_argument("make_simply_faced: unbalanced face");
        F2Matrix beta(tgt.size(), src.size());
        for (std::size_t c = 0; c < src.size(); ++c)
            for (std::size_t r = 0; r < tgt.size(); ++r) beta.set(r, c, B.get(tgt[r], src[c]));

        F2Matrix S = F2Matrix::identity(n);  // columns: new basis vectors in old dots
        std::vector<int> cols(src.size());
        std::iota(cols.begin(), cols.end(), 0);
        std::stable_sort(cols.begin(), cols.end(), [&](int a, int b) { return h[src[a]] < h[src[b]]; });
        std::vector<int> pivot_of(src.size(), -1);
        for (int c : cols) {
            int piv = -1;
            for (std::size_t r = 0; r < tgt.size(); ++r)
                if (beta.get(r, c) && (piv < 0 || h[tgt[r]] > h[tgt[piv]])) piv = static_cast<int>(r);
            if (piv < 0) throw std::invalid_argument("make_simply_faced: face differential is degenerate");
            for (std::size_t r = 0; r < tgt.size(); ++r) {
                if (static_cast<int>(r) == piv || !beta.get(r, c)) continue;
                beta.add_row(r, piv);
                S.add_col(tgt[piv], tgt[r]);
            }
            for (std::size_t c2 = 0; c2 < src.size(); ++c2) {
                if (static_cast<int>(c2) == c || !beta.get(piv, c2)) continue;
                beta.add_col(c2, c);
                S.add_col(src[c2], src[c]);
            }
            pivot_of[c] = piv;
        }

        std::vector<FaceArrow> arrows;
        for (std::size_t c = 0; c < src.size(); ++c) {
            const int x = src[c], y = tgt[pivot_of[c]];
            const int len = 2 + h[x] - h[y];
            if (len < 1 || len > 3) throw std::invalid_argument("make_simply_faced: join of invalid length");
            arrows.push_back({dots[x].first, dots[x].second, dots[y].first, dots[y].second, len});
            arrows.push_back({dots[y].first, dots[y].second, dots[x].first, dots[x].second, 4 - len});
        }
        std::sort(arrows.begin(), arrows.end());
        p.faces[f] = std::move(arrows);

        for (int a = 1; a <= 4; ++a) {
            const auto& gl = gidx[a - 1];
            const std::size_t k = gl.size();
            F2Matrix F(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    if (h[gl[i]] == h[gl[j]]) F.set(i, j, S.get(gl[i], gl[j]));
            if (face == Face::Front) {
                auto fi = invert(F);
                if (!fi) throw std::logic_error("make_simply_faced: singular basis change");
                p.P[a - 1] = *fi * p.P[a - 1];
            } else {
                p.P[a - 1] = p.P[a - 1] * F;
            }
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// Arc decorations
// ---------------------------------------------------------------------------

F2Matrix item_matrix(const DecorationItem& item, std::size_t n) {
    F2Matrix m = F2Matrix::identity(n);
    if (item.kind == DecorationItem::Kind::Crossing) {
        m.swap_rows(item.i, item.j);
    } else {
        m.set(item.j, item.i, true);
    }
    return m;
}

std::vector<DecorationItem> decorate(const F2Matrix& p) {
    if (!p.square() || !is_invertible(p)) throw std::invalid_argument("decorate: decoration must be invertible");
    // reduce to the identity by row operations R_k ... R_1 P = I; every item
    // is an involution, so P = R_1 ... R_k
    F2Matrix w = p;
    std::vector<DecorationItem> ops;
    const std::size_t n = p.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t r = c;
        while (!w.get(r, c)) ++r;
        if (r != c) {
            w.swap_rows(r, c);
            ops.push_back({DecorationItem::Kind::Crossing, static_cast<int>(c), static_cast<int>(r)});
        }
        for (std::size_t r2 = 0; r2 < n; ++r2) {
            if (r2 == c || !w.get(r2, c)) continue;
            w.add_row(r2, c);
            ops.push_back({DecorationItem::Kind::Arrow, static_cast<int>(c), static_cast<int>(r2)});
        }
    }
    return ops;
}

// ---------------------------------------------------------------------------
// Crossover arrows
// ---------------------------------------------------------------------------

namespace {

struct ArrowState {
    Precurve& p;
    std::array<std::vector<Partner>, 4> fp;  // front partner of each front dot
    std::array<std::vector<Partner>, 4> bp;  // back partner of each back dot
    std::array<std::vector<int>, 4> sigma;   // front -> back strand pairing
    std::array<std::vector<int>, 4> sinv;
    int bound = 0;

    explicit ArrowState(Precurve& pc) : p(pc) {
        for (int a = 0; a < 4; ++a) {
            fp[a].assign(p.front[a].size(), {});
            bp[a].assign(p.back[a].size(), {});
        }
        for (auto& x : p.faces[0]) fp[x.from_arc - 1][x.from] = {x.to_arc, x.to, x.length};
        for (auto& x : p.faces[1]) bp[x.from_arc - 1][x.from] = {x.to_arc, x.to, x.length};
        bound = 4 * static_cast<int>(p.faces[0].size() + p.faces[1].size()) + 1;
    }

    void rematch() {
        for (int a = 0; a < 4; ++a) {
            sigma[a] = support_matching(p.P[a], sigma[a]);
            sinv[a].assign(sigma[a].size(), -1);
            for (std::size_t r = 0; r < sigma[a].size(); ++r) sinv[a][sigma[a][r]] = static_cast<int>(r);
        }
    }

    struct Look {
        int dist = -1;  // joins travelled before the strands differ; -1: never
        bool longer = false;
    };

    // follow the strands through front dots x and y of arc a
    Look look(int a, int x, int y, bool front_first) const {
        bool front = front_first;
        int fx = x, fy = y;
        for (int step = 0; step < bound; ++step) {
            if (front) {
                const Partner& px = fp[a - 1][fx];
                const Partner& py = fp[a - 1][fy];
                if (px.len != py.len) return {step, py.len > px.len};
                a = px.arc;
                fx = px.idx;
                fy = py.idx;
            } else {
                const Partner& px = bp[a - 1][sigma[a - 1][fx]];
                const Partner& py = bp[a - 1][sigma[a - 1][fy]];
                if (px.len != py.len) return {step, py.len > px.len};
                a = px.arc;
                fx = sinv[a - 1][px.idx];
                fy = sinv[a - 1][py.idx];
            }
            front = !front;
        }
        return {};
    }

    // row_y += row_x at arc a, with the companion move across an equal-length
    // front join
    void front_move(int a, int y, int x) {
        p.P[a - 1].add_row(y, x);
        const Partner& px = fp[a - 1][x];
        const Partner& py = fp[a - 1][y];
        if (px.len == py.len) p.P[px.arc - 1].add_row(py.idx, px.idx);
    }
    // col_c += col_d at arc a (back dots), companion across an equal back join
    void back_move(int a, int c, int d) {
        p.P[a - 1].add_col(c, d);
        const Partner& pc = bp[a - 1][c];
        const Partner& pd = bp[a - 1][d];
        if (pc.len == pd.len) p.P[pc.arc - 1].add_col(pc.idx, pd.idx);
    }

    // one move on the first arrow that is not a local-system arrow; false when
    // there is none
    bool step() {
        rematch();
        for (int a = 1; a <= 4; ++a) {
            const F2Matrix& P = p.P[a - 1];
            const int n = static_cast<int>(P.rows());
            for (int y = 0; y < n; ++y)
                for (int c = 0; c < n; ++c) {
                    if (!P.get(y, c) || sigma[a - 1][y] == c) continue;
                    // back dot c of strand x contains front dot y: arrow x -> y
                    const int x = sinv[a - 1][c];
                    const int d = sigma[a - 1][y];
                    const int lx = fp[a - 1][x].len, ly = fp[a - 1][y].len;
                    const int mx = bp[a - 1][c].len, my = bp[a - 1][d].len;
                    if (ly > lx) {
                        front_move(a, y, x);
                    } else if (my > mx) {
                        back_move(a, c, d);
                    } else if (ly < lx && my < mx) {
                        p.P[a - 1].add_row(x, y);
                        p.P[a - 1].add_col(d, c);
                    } else {
                        const Look F = look(a, x, y, true);
                        const Look B = look(a, x, y, false);
                        if (F.dist < 0 && B.dist < 0) continue;  // parallel: local system
                        const bool f_ok = F.dist > 0 && F.longer;
                        const bool b_ok = B.dist > 0 && B.longer;
                        if (f_ok && (!b_ok || F.dist <= B.dist)) {
                            front_move(a, y, x);
                        } else if (b_ok) {
                            back_move(a, c, d);
                        } else if (F.dist == 0) {
                            // blocked at both ends: trade the arrow for a
                            // crossing and a reversed arrow
                            p.P[a - 1].add_row(x, y);
                            back_move(a, d, c);
                        } else if (B.dist == 0) {
                            front_move(a, x, y);
                            p.P[a - 1].add_col(d, c);
                        } else if (F.dist > 0 && (B.dist < 0 || F.dist <= B.dist)) {
                            front_move(a, y, x);
                        } else {
                            back_move(a, c, d);
                        }
                    }
                    return true;
                }
        }
        return false;
    }
};

}  // namespace

Precurve simplify_arrows(const Precurve& p0) {
    if (!p0.simply_faced()) throw std::invalid_argument("simplify_arrows: precurve is not simply-faced");
    Precurve p = p0;
    ArrowState st(p);
    const int cap = 20000 + 50 * static_cast<int>(p.total_dots() * p.total_dots());
    int it = 0;
    while (st.step())
        if (++it > cap) throw std::runtime_error("simplify_arrows: arrow sliding did not terminate");

    // put back dots in strand order so that connectivity is by position
    for (int a = 0; a < 4; ++a) {
        const auto& sg = st.sigma[a];
        const std::size_t n = sg.size();
        if (n == 0) continue;
        std::vector<int> newpos(n);
        for (std::size_t r = 0; r < n; ++r) newpos[sg[r]] = static_cast<int>(r);
        std::vector<Dot> nb(n);
        F2Matrix np(n, n);
        for (std::size_t c = 0; c < n; ++c) {
            nb[newpos[c]] = p.back[a][c];
            for (std::size_t r = 0; r < n; ++r) np.set(r, newpos[c], p.P[a].get(r, c));
        }
        p.back[a] = std::move(nb);
        p.P[a] = np;
        for (auto& x : p.faces[1]) {
            if (x.from_arc == a + 1) x.from = newpos[x.from];
            if (x.to_arc == a + 1) x.to = newpos[x.to];
        }
    }
    std::sort(p.faces[1].begin(), p.faces[1].end());
    return p;
}

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

Word Word::parse(const std::string& s) {
    Word w;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        if (tok.size() != 2) throw std::invalid_argument("Word::parse: bad step '" + tok + "'");
        Step st;
        st.arc = site_from_char(tok[0]);
        if (tok[1] == 'F' || tok[1] == 'f') st.face = Face::Front;
        else if (tok[1] == 'B' || tok[1] == 'b') st.face = Face::Back;
        else throw std::invalid_argument("Word::parse: bad face in '" + tok + "'");
        w.steps.push_back(st);
    }
    if (!w.well_formed()) throw std::invalid_argument("Word::parse: ill-formed word '" + s + "'");
    return w;
}

std::string Word::to_string() const {
    std::string s;
    for (auto& st : steps) {
        if (!s.empty()) s += ' ';
        s += site_char(st.arc);
        s += st.face == Face::Front ? 'F' : 'B';
    }
    return s;
}

bool Word::well_formed() const {
    const std::size_t n = steps.size();
    if (n == 0 || n % 2) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Step& a = steps[i];
        const Step& b = steps[(i + 1) % n];
        if (a.arc < 1 || a.arc > 4 || a.face == b.face || a.arc == b.arc) return false;
    }
    return true;
}

bool Word::primitive() const {
    const std::size_t n = steps.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d) continue;
        bool same = true;
        for (std::size_t i = 0; i < n && same; ++i) same = steps[i] == steps[(i + d) % n];
        if (same) return false;
    }
    return true;
}

Word Word::rotated(int r) const {
    Word w;
    const int n = static_cast<int>(steps.size());
    for (int k = 0; k < n; ++k) w.steps.push_back(steps[((k + r) % n + n) % n]);
    return w;
}

Word Word::reversed() const {
    Word w;
    const int n = static_cast<int>(steps.size());
    for (int k = 0; k < n; ++k) w.steps.push_back({steps[(n - k) % n].arc, steps[((n - k - 1) % n + n) % n].face});
    return w;
}

int Word::chord_length(std::size_t i) const {
    const Step& a = steps[i];
    const Step& b = steps[(i + 1) % steps.size()];
    return a.face == Face::Front ? mod4(a.arc - b.arc) : mod4(b.arc - a.arc);
}

WordNormalization normalize_word(const Word& w) {
    WordNormalization best{w, 0, false};
    bool first = true;
    const Word rev = w.reversed();
    const int n = static_cast<int>(w.size());
    for (int which = 0; which < 2; ++which) {
        const Word& base = which ? rev : w;
        for (int r = 0; r < n; ++r) {
            Word c = base.rotated(r);
            if (first || c < best.word) {
                best = {std::move(c), r, which == 1};
                first = false;
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Loops
// ---------------------------------------------------------------------------

std::size_t CurveSet::generator_count() const {
    std::size_t n = 0;
    for (auto& l : loops) n += l.word.size() * l.dim();
    return n;
}

std::vector<DotGrading> propagate_gradings(const Word& w, DotGrading anchor, const Matching& m, bool univariate) {
    std::vector<DotGrading> out{anchor};
    const std::size_t n = w.size();
    for (std::size_t k = 0; k < n; ++k) {
        const int len = w.chord_length(k);
        const Alex2 a = path_alex2(face_path(w.steps[k].face, w.steps[k].arc, len), m, univariate);
        DotGrading g = out.back();
        g.delta2 += 2 - len;
        g.alex2[0] -= a[0];
        g.alex2[1] -= a[1];
        out.push_back(g);
    }
    return out;
}

DotGrading winding(const Word& w, const Matching& m, bool univariate) {
    auto g = propagate_gradings(w, {}, m, univariate);
    return g.back();
}

namespace {

struct Transit {
    int arc;
    int strand;
    Face leave;
};

// canonical step k of a normalised word sits at this index of the original
int original_index(const WordNormalization& wn, int k, int n) {
    return wn.reversed ? ((n - (k + wn.rotation)) % n + n) % n : (k + wn.rotation) % n;
}


}  // namespace

CurveSet extract_loops(const Precurve& p) {
    if (!p.simply_faced()) throw std::invalid_argument("extract_loops: precurve is not simply-faced");
    std::array<std::vector<Partner>, 4> fp, bp;
    for (int a = 0; a < 4; ++a) {
        fp[a].assign(p.front[a].size(), {});
        bp[a].assign(p.back[a].size(), {});
    }
    for (auto& x : p.faces[0]) fp[x.from_arc - 1][x.from] = {x.to_arc, x.to, x.length};
    for (auto& x : p.faces[1]) bp[x.from_arc - 1][x.from] = {x.to_arc, x.to, x.length};

    // strand-following; strand i of an arc joins front dot i and back dot i
    std::array<std::vector<char>, 4> seen;
    for (int a = 0; a < 4; ++a) seen[a].assign(p.front[a].size(), 0);
    std::vector<std::vector<Transit>> cycles;
    for (int a = 1; a <= 4; ++a)
        for (int i = 0; i < static_cast<int>(p.dots(a)); ++i) {
            if (seen[a - 1][i]) continue;
            std::vector<Transit> cyc;
            Transit t{a, i, Face::Front};
            while (!seen[t.arc - 1][t.strand]) {
                seen[t.arc - 1][t.strand] = 1;
                cyc.push_back(t);
                const Partner& nx = t.leave == Face::Front ? fp[t.arc - 1][t.strand] : bp[t.arc - 1][t.strand];
                t = {nx.arc, nx.idx, other(t.leave)};
            }
            if (!(t.arc == a && t.strand == i && t.leave == Face::Front))
                throw std::logic_error("extract_loops: strands do not close up");
            cycles.push_back(std::move(cyc));
        }

    struct Family {
        Word word;
        DotGrading anchor;
        // per canonical step, the strands in local-system order
        std::vector<std::vector<int>> strands;  // [k][r] -> strand index on arc
        std::vector<std::pair<int, int>> closing;  // (from r at step n-1, to r at step 0)
    };
    std::map<std::tuple<Word, int, int, int>, Family> fams;
    // (arc, strand) -> (family key, step, position)
    std::map<std::pair<int, int>, std::tuple<const Family*, int, int>> where;

    for (auto& cyc : cycles) {
        const int N = static_cast<int>(cyc.size());
        Word full;
        for (auto& t : cyc) full.steps.push_back({t.arc, t.leave});
        int n = N;
        for (int d = 1; d < N; ++d) {
            if (N % d) continue;
            bool same = true;
            for (int i = 0; i < N && same; ++i) same = full.steps[i] == full.steps[(i + d) % N];
            if (same) {
                n = d;
                break;
            }
        }
        Word prim;
        prim.steps.assign(full.steps.begin(), full.steps.begin() + n);
        const WordNormalization wn = normalize_word(prim);
        // transits in canonical direction, starting at canonical step 0
        std::vector<Transit> seq(N);
        for (int k = 0; k < N; ++k) {
            const int idx = wn.reversed ? ((-(k + wn.rotation)) % N + N) % N : (k + wn.rotation) % N;
            seq[k] = cyc[idx];
            if (wn.reversed) seq[k].leave = cyc[((idx - 1) % N + N) % N].leave;
        }
        const int j = N / n;
        const Dot& d0 = p.front[seq[0].arc - 1][seq[0].strand];
        auto key = std::make_tuple(wn.word, d0.delta2, d0.alex2[0], d0.alex2[1]);
        Family& fam = fams[key];
        if (fam.strands.empty()) {
            fam.word = wn.word;
            fam.anchor = {d0.delta2, d0.alex2};
            fam.strands.resize(n);
        }
        const int off = static_cast<int>(fam.strands[0].size());
        for (int r = 0; r < j; ++r) {
            for (int k = 0; k < n; ++k) fam.strands[k].push_back(seq[r * n + k].strand);
            fam.closing.push_back({off + r, off + (r + 1) % j});
        }
    }
    for (auto& [key, fam] : fams)
        for (int k = 0; k < static_cast<int>(fam.strands.size()); ++k)
            for (int r = 0; r < static_cast<int>(fam.strands[k].size()); ++r)
                where[{fam.word.steps[k].arc, fam.strands[k][r]}] = {&fam, k, r};

    // every decoration entry must stay inside one family at one step
    for (int a = 1; a <= 4; ++a) {
        const F2Matrix& P = p.P[a - 1];
        for (std::size_t r = 0; r < P.rows(); ++r)
            for (std::size_t c = 0; c < P.cols(); ++c) {
                if (!P.get(r, c)) continue;
                auto& w1 = where.at({a, static_cast<int>(r)});
                auto& w2 = where.at({a, static_cast<int>(c)});
                if (std::get<0>(w1) != std::get<0>(w2) || std::get<1>(w1) != std::get<1>(w2))
                    throw std::runtime_error("extract_loops: crossover arrow between non-parallel strands");
            }
    }

    CurveSet out;
    out.name = p.name;
    out.matching = p.matching;
    out.colours = p.colours;
    out.univariate = p.univariate;
    for (auto& [key, fam] : fams) {
        const int n = static_cast<int>(fam.word.size());
        const std::size_t D = fam.strands[0].size();
        F2Matrix X = F2Matrix::identity(D);
        for (int k = 0; k < n; ++k) {
            const int a = fam.word.steps[k].arc;
            F2Matrix T(D, D);
            for (std::size_t r = 0; r < D; ++r)
                for (std::size_t c = 0; c < D; ++c) T.set(r, c, p.P[a - 1].get(fam.strands[k][r], fam.strands[k][c]));
            if (fam.word.steps[k].face == Face::Back) {
                auto ti = invert(T);
                if (!ti) throw std::logic_error("extract_loops: singular local block");
                T = *ti;
            }
            X = T * X;
        }
        F2Matrix Q(D, D);
        for (auto [from, to] : fam.closing) Q.set(to, from, true);
        X = Q * X;
        out.loops.push_back({fam.word, X, fam.anchor.delta2, fam.anchor.alex2});
    }
    return canonical_form(out);
}

CurveSet canonical_form(const CurveSet& c) {
    std::map<std::tuple<Word, int, int, int>, std::vector<F2Matrix>> groups;
    for (auto& l : c.loops) {
        if (!l.word.well_formed()) throw std::invalid_argument("canonical_form: ill-formed word");
        if (!l.local_system.square() || !is_invertible(l.local_system))
            throw std::invalid_argument("canonical_form: local system must be invertible");
        Word w = l.word;
        F2Matrix X = l.local_system;
        DotGrading anchor{l.delta2, l.alex2};
        // a non-primitive word is the primitive one with a cyclic local system
        const std::size_t n0 = w.size();
        std::size_t n = n0;
        for (std::size_t d = 1; d < n0; ++d) {
            if (n0 % d) continue;
            bool same = true;
            for (std::size_t i = 0; i < n0 && same; ++i) same = w.steps[i] == w.steps[(i + d) % n0];
            if (same) {
                n = d;
                break;
            }
        }
        if (n != n0) {
            const std::size_t j = n0 / n, D = X.rows();
            F2Matrix Y(D * j, D * j);
            // going once around the primitive word moves to the next copy; the
            // last copy carries X back to the first
            for (std::size_t r = 0; r + 1 < j; ++r)
                for (std::size_t i = 0; i < D; ++i) Y.set((r + 1) * D + i, r * D + i, true);
            for (std::size_t i = 0; i < D; ++i)
                for (std::size_t k = 0; k < D; ++k) Y.set(i, (j - 1) * D + k, X.get(i, k));
            w.steps.resize(n);
            X = Y;
        }
        const WordNormalization wn = normalize_word(w);
        auto g = propagate_gradings(w, anchor, c.matching, c.univariate);
        if (!(g.back() == g.front())) throw std::invalid_argument("canonical_form: loop is not gradable");
        const DotGrading a0 = g[original_index(wn, 0, static_cast<int>(n))];
        if (wn.reversed) X = *invert(X);
        groups[{wn.word, a0.delta2, a0.alex2[0], a0.alex2[1]}].push_back(X);
    }
    CurveSet out;
    out.name = c.name;
    out.matching = c.matching;
    out.colours = c.colours;
    out.univariate = c.univariate;
    for (auto& [key, mats] : groups) {
        std::size_t D = 0;
        for (auto& m : mats) D += m.rows();
        F2Matrix S(D, D);
        std::size_t off = 0;
        for (auto& m : mats) {
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t k = 0; k < m.cols(); ++k) S.set(off + r, off + k, m.get(r, k));
            off += m.rows();
        }
        const F2Matrix F = frobenius_matrix(frobenius_form(S));
        out.loops.push_back({std::get<0>(key), F, std::get<1>(key), {std::get<2>(key), std::get<3>(key)}});
    }
    std::sort(out.loops.begin(), out.loops.end(), [](const Loop& a, const Loop& b) {
        return std::tie(a.word, a.delta2, a.alex2, a.local_system) < std::tie(b.word, b.delta2, b.alex2, b.local_system);
    });
    return out;
}

PqModule build_from_loops(const CurveSet& c) {
    PqModule m;
    m.name = c.name;
    m.matching = c.matching;
    m.colours = c.colours;
    m.univariate = c.univariate;
    for (std::size_t li = 0; li < c.loops.size(); ++li) {
        const Loop& l = c.loops[li];
        if (!l.word.well_formed()) throw std::invalid_argument("build_from_loops: ill-formed word");
        const auto g = propagate_gradings(l.word, {l.delta2, l.alex2}, c.matching, c.univariate);
        if (!(g.back() == g.front())) throw std::invalid_argument("build_from_loops: loop is not gradable");
        const std::size_t n = l.word.size(), D = l.dim();
        auto Xi = invert(l.local_system);
        if (!Xi) throw std::invalid_argument("build_from_loops: local system must be invertible");
        std::vector<std::vector<int>> gen(n, std::vector<int>(D));
        for (std::size_t t = 0; t < n; ++t)
            for (std::size_t r = 0; r < D; ++r) {
                std::string id = "L" + std::to_string(li) + "." + std::to_string(t);
                if (D > 1) id += "." + std::to_string(r);
                gen[t][r] = m.add_generator({id, l.word.steps[t].arc, g[t].delta2, g[t].alex2});
            }
        for (std::size_t t = 0; t < n; ++t) {
            const Step& s = l.word.steps[t];
            const int next = l.word.steps[(t + 1) % n].arc;
            const int len = l.word.chord_length(t);
            const BasisPath fwd = face_path(s.face, s.arc, len);
            const BasisPath bwd = face_path(s.face, next, 4 - len);
            if (t + 1 < n) {
                for (std::size_t r = 0; r < D; ++r) {
                    m.add_arrow(gen[t][r], gen[t + 1][r], fwd);
                    m.add_arrow(gen[t + 1][r], gen[t][r], bwd);
                }
            } else {
                for (std::size_t r = 0; r < D; ++r)
                    for (std::size_t r2 = 0; r2 < D; ++r2) {
                        if (l.local_system.get(r2, r)) m.add_arrow(gen[t][r], gen[0][r2], fwd);
                        if (Xi->get(r, r2)) m.add_arrow(gen[0][r2], gen[t][r], bwd);
                    }
            }
        }
    }
    require_valid(m, "build_from_loops");
    return m;
}

bool is_embedded(const Loop& l) {
    return l.dim() == 1 && l.word.primitive() && self_intersection(l.word) == 0;
}

CurveSet curves_of(const PqModule& m) {
    const PqModule r = is_reduced(m) ? m : reduce(m);
    return extract_loops(simplify_arrows(make_simply_faced(to_precurve(r))));
}

CurveSet mirror(const CurveSet& c) {
    CurveSet out = c;
    out.name = c.name.empty() ? c.name : "mirror(" + c.name + ")";
    for (auto& l : out.loops) {
        for (auto& s : l.word.steps) s.face = other(s.face);
        l.delta2 = -l.delta2;
        l.alex2 = {-l.alex2[0], -l.alex2[1]};
    }
    return canonical_form(out);
}

CurveSet to_univariate(const CurveSet& c) {
    if (c.univariate) return c;
    CurveSet out = c;
    out.univariate = true;
    for (auto& l : out.loops) l.alex2 = {l.alex2[0] + l.alex2[1], 0};
    return canonical_form(out);
}

CurveSet forget_gradings(const CurveSet& c) {
    CurveSet out = c;
    out.univariate = true;
    for (auto& l : out.loops) {
        // keep only what the word itself forces
        l.delta2 = 0;
        l.alex2 = {0, 0};
    }
    return canonical_form(out);
}

CurveSet normalize_shift(const CurveSet& c) {
    if (c.loops.empty()) return c;
    int md = 0, m0 = 0, m1 = 0;
    bool first = true;
    for (auto& l : c.loops)
        for (auto& g : propagate_gradings(l.word, {l.delta2, l.alex2}, c.matching, c.univariate)) {
            if (first) {
                md = g.delta2;
                m0 = g.alex2[0];
                m1 = g.alex2[1];
                first = false;
            }
            md = std::min(md, g.delta2);
            m0 = std::min(m0, g.alex2[0]);
            m1 = std::min(m1, g.alex2[1]);
        }
    CurveSet out = c;
    for (auto& l : out.loops) {
        l.delta2 -= md;
        l.alex2[0] -= m0;
        l.alex2[1] -= m1;
    }
    return canonical_form(out);
}

bool equivalent(const PqModule& a, const PqModule& b, GradingMode mode, bool up_to_shift) {
    CurveSet ca = curves_of(a), cb = curves_of(b);
    if (mode == GradingMode::Univariate) {
        ca = to_univariate(ca);
        cb = to_univariate(cb);
    } else if (mode == GradingMode::Ungraded) {
        ca = forget_gradings(ca);
        cb = forget_gradings(cb);
    } else if (ca.univariate != cb.univariate) {
        ca = to_univariate(ca);
        cb = to_univariate(cb);
    }
    if (up_to_shift && mode != GradingMode::Ungraded) {
        ca = normalize_shift(ca);
        cb = normalize_shift(cb);
    }
    return ca.loops == cb.loops;
}

}  // namespace pqm
