#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "pqm/curvekit.hpp"
#include "pqm/tanglezoo.hpp"

namespace pqm {

namespace {

// The 4-punctured sphere is the plane modulo the group generated by
// translations in 2Z^2 and the half-turns about integer points; punctures are
// the integer points, the unit squares are the faces (front when i+j is even)
// and their sides are the arcs.  Side labels (bottom, right, top, left) of the
// square with lower-left corner (i, j) depend on the parities of i and j.
struct SquareSides {
    int bottom, right, top, left;
};

SquareSides sides_of(std::int64_t i, std::int64_t j) {
    const bool io = (i % 2) != 0, jo = (j % 2) != 0;
    if (!io && !jo) return {1, 2, 3, 4};
    if (io && jo) return {3, 4, 1, 2};
    if (io) return {1, 4, 3, 2};
    return {3, 2, 1, 4};
}

Face face_of(std::int64_t i, std::int64_t j) { return ((i + j) % 2 == 0) ? Face::Front : Face::Back; }

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// crossing sequence of a straight line of slope p/q (q >= 0) pushed off the
// punctures, once around its closed image
Word line_word(std::int64_t p, std::int64_t q) {
    Word w;
    if (q == 0) {
        // x = 1/2 travelling up
        for (std::int64_t k = 1; k <= 2; ++k) w.steps.push_back({sides_of(0, k).bottom, face_of(0, k)});
        return w;
    }
    // y = p x / q + 1/(2q); edge crossings for x in (0, 2q], positions kept as
    // exact fractions num/den with den > 0
    struct Event {
        std::int64_t num, den;  // x = num / den
        bool vertical;
        std::int64_t k;  // the integer x (vertical) or y (horizontal)
    };
    std::vector<Event> ev;
    for (std::int64_t i = 1; i <= 2 * q; ++i) ev.push_back({i, 1, true, i});
    if (p != 0) {
        // y runs from 1/(2q) to 2p + 1/(2q); crossings of y = k
        const std::int64_t lo = std::min<std::int64_t>(0, 2 * p), hi = std::max<std::int64_t>(0, 2 * p);
        for (std::int64_t k = lo; k <= hi; ++k) {
            // x = (2kq - 1) / (2p)
            std::int64_t num = 2 * k * q - 1, den = 2 * p;
            if (den < 0) {
                num = -num;
                den = -den;
            }
            if (num > 0 && num < 2 * q * den) ev.push_back({num, den, false, k});
        }
    }
    std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return a.num * b.den < b.num * a.den; });
    for (auto& e : ev) {
        if (e.vertical) {
            // y = (2 p i + 1) / (2q)
            const std::int64_t j = floor_div(2 * p * e.k + 1, 2 * q);
            w.steps.push_back({sides_of(e.k, j).left, face_of(e.k, j)});
        } else {
            const std::int64_t i = floor_div(e.num, e.den);
            if (p > 0) w.steps.push_back({sides_of(i, e.k).bottom, face_of(i, e.k)});
            else w.steps.push_back({sides_of(i, e.k - 1).top, face_of(i, e.k - 1)});
        }
    }
    return w;
}

// Twist moves act on (p, q) by unimodular matrices: the horizontal move
// H^a adds a crossings, (p, q) -> (p + a q, q); the vertical move V^a acts by
// (p, q) -> (p, q + a p).  A slope is reached from slope 0 by alternating runs
// H, V, H, ... read off its continued fraction.
struct Move {
    bool horizontal;
    std::int64_t count;
};

std::vector<Move> twist_moves(std::int64_t p, std::int64_t q) {
    if (q == 0) return {{true, 1}, {false, -1}};
    std::vector<std::int64_t> a;  // p/q = a0 + 1/(a1 + 1/(...))
    while (q != 0) {
        const std::int64_t t = floor_div(p, q);
        a.push_back(t);
        const std::int64_t r = p - t * q;
        p = q;
        q = r;
    }
    // make the last index even so the innermost run is horizontal
    if (a.size() % 2 == 0) {
        a.back() -= 1;
        a.push_back(1);
    }
    std::vector<Move> moves;
    for (std::size_t k = a.size(); k-- > 0;) moves.push_back({k % 2 == 0, a[k]});
    return moves;
}

std::pair<std::int64_t, std::int64_t> apply_moves(const std::vector<Move>& moves) {
    std::int64_t p = 0, q = 1;
    for (auto& m : moves) {
        if (m.horizontal) p += m.count * q;
        else q += m.count * p;
    }
    if (q < 0 || (q == 0 && p < 0)) {
        p = -p;
        q = -q;
    }
    return {p, q};
}

const Matching kEven{{{{2, 1}, {3, 4}}}};
const Matching kOdd{{{{2, 4}, {3, 1}}}};
const Matching kInf{{{{3, 2}, {4, 1}}}};

}  // namespace

Word rational_word(int p, int q) {
    if (q < 0) {
        p = -p;
        q = -q;
    }
    if (q == 0 && p != 0) p = 1;
    if (std::gcd(p, q) != 1) throw std::invalid_argument("rational: fraction must be reduced");
    const auto [sp, sq] = apply_moves(twist_moves(p, q));
    if (sp != p || sq != q) throw std::logic_error("rational: twist moves did not reproduce the slope");
    // the crossing convention of the twist family runs against the plane's
    // slope orientation
    return line_word(-sp, sq);
}

PqModule rational_tangle(int p, int q) {
    if (q < 0) {
        p = -p;
        q = -q;
    }
    if (q == 0 && p == 0) throw std::invalid_argument("rational: 0/0");
    if (q == 0) p = 1;
    if (std::gcd(p, q) != 1) throw std::invalid_argument("rational: fraction must be reduced");
    const Word w = rational_word(p, q);
    const Matching& m = q % 2 == 0 ? kInf : (p % 2 == 0 ? kEven : kOdd);
    CurveSet c;
    c.name = "rational:" + std::to_string(p) + "/" + std::to_string(q);
    c.matching = m;
    if (!(winding(w, m, false) == DotGrading{})) throw std::logic_error("rational: slope word is not gradable");
    c.loops.push_back({w, F2Matrix::identity(1), 0, {0, 0}});
    c = canonical_form(c);
    if (c.loops.size() != 1 || !is_embedded(c.loops[0]))
        throw std::logic_error("rational: slope word is not an embedded loop");
    PqModule mod = build_from_loops(c);
    mod.name = c.name;
    return mod;
}

}  // namespace pqm
