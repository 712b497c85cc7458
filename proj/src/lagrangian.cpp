#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "pqm/curvekit.hpp"
#include "pqm/f2lin.hpp"
#include "pqm/pairkit.hpp"

namespace pqm {

namespace {

// sides of each face in counter-clockwise order
constexpr int kFrontCycle[4] = {1, 2, 3, 4};
constexpr int kBackCycle[4] = {1, 4, 3, 2};

int ccw_position(Face f, int from, int side) {
    const int* cyc = f == Face::Front ? kFrontCycle : kBackCycle;
    int i0 = 0, i1 = 0;
    for (int k = 0; k < 4; ++k) {
        if (cyc[k] == from) i0 = k;
        if (cyc[k] == side) i1 = k;
    }
    return ((i1 - i0) % 4 + 4) % 4;
}

// is `x` met before `y` going counter-clockwise around face f, starting just
// after side `from`
bool ccw_before(Face f, int from, int x, int y) { return ccw_position(f, from, x) < ccw_position(f, from, y); }

int at(const Word& w, long i) {
    const long n = static_cast<long>(w.size());
    return w.steps[((i % n) + n) % n].arc;
}
Face face_at(const Word& w, long i) {
    const long n = static_cast<long>(w.size());
    return w.steps[((i % n) + n) % n].face;
}

// chords of two distinct face visits with four distinct ends cross exactly
// when the ends interleave
int chord_crossings(const Word& g, const Word& d, bool same_word) {
    int count = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = same_word ? i + 1 : 0; j < d.size(); ++j) {
            if (g.steps[i].face != d.steps[j].face) continue;
            const int a = g.steps[i].arc, b = at(g, i + 1), c = d.steps[j].arc, e = at(d, j + 1);
            if (a == c || a == e || b == c || b == e) continue;
            const Face f = g.steps[i].face;
            // c and e on different sides of the chord a-b
            if (ccw_before(f, a, c, b) != ccw_before(f, a, e, b)) ++count;
        }
    return count;
}

// maximal common runs of g against d (both read forwards), each counted when
// the strands swap sides inside it; `skip_identity` drops the trivial
// alignment of a word with itself
int linked_runs(const Word& g, const Word& d, bool skip_identity) {
    const long n1 = static_cast<long>(g.size()), n2 = static_cast<long>(d.size());
    const long bound = n1 + n2 + 1;
    int count = 0;
    for (long i = 0; i < n1; ++i)
        for (long j = 0; j < n2; ++j) {
            if (skip_identity && i == j) continue;
            if (g.steps[i] != d.steps[j]) continue;
            if (at(g, i - 1) == at(d, j - 1)) continue;  // not the start of a run
            long m = 1;
            while (m < bound && at(g, i + m) == at(d, j + m)) ++m;
            if (m >= bound) continue;  // parallel
            const Face f_start = face_at(g, i - 1);
            const Face f_end = face_at(g, i + m - 1);
            const int x = at(g, i), y = at(g, i + m - 1);
            const bool s = ccw_before(f_start, x, at(g, i - 1), at(d, j - 1));
            const bool e = ccw_before(f_end, y, at(g, i + m), at(d, j + m));
            if (s == e) ++count;
        }
    return count;
}

}  // namespace

int min_intersection(const Word& w1, const Word& w2) {
    if (!w1.well_formed() || !w2.well_formed()) throw std::invalid_argument("min_intersection: ill-formed word");
    const Word g = normalize_word(w1).word, d = normalize_word(w2).word;
    if (g == d) return 0;
    return chord_crossings(g, d, false) + linked_runs(g, d, false) + linked_runs(g, d.reversed(), false);
}

int self_intersection(const Word& w) {
    if (!w.well_formed()) throw std::invalid_argument("self_intersection: ill-formed word");
    const int runs = linked_runs(w, w, true) + linked_runs(w, w.reversed(), false);
    return chord_crossings(w, w, true) + runs / 2;
}

LagrangianResult lagrangian_pair(const CurveSet& c1, const CurveSet& c2) {
    LagrangianResult r;
    for (auto& l1 : c1.loops)
        for (auto& l2 : c2.loops) {
            int part = 0;
            if (l1.word == l2.word) {
                // a push-off meets the curve twice near each self-intersection
                part = 2 * static_cast<int>(parallel_correction(l1.local_system, l2.local_system)) +
                       2 * static_cast<int>(l1.dim() * l2.dim()) * self_intersection(l1.word);
            } else {
                part = static_cast<int>(l1.dim() * l2.dim()) * min_intersection(l1.word, l2.word);
            }
            r.total += part;
            std::ostringstream os;
            os << "[" << l1.word.to_string() << "] x [" << l2.word.to_string() << "]: " << part;
            r.details.push_back(os.str());
        }
    return r;
}

LagrangianResult lagrangian_pair_modules(const PqModule& m1, const PqModule& m2) {
    return lagrangian_pair(curves_of(mirror(reverse(m1))), curves_of(m2));
}

}  // namespace pqm
