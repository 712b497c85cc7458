#pragma once

#include <string>
#include <utility>

#include "pqm/pqmod.hpp"

namespace pqm {

struct TangleSpec {
    enum class Family { Zero, Infinity, PosCrossing, NegCrossing, Twist, Pretzel, Rational, Figure8 };
    Family family = Family::Zero;
    int a = 0;  // twist n, pretzel n, rational numerator, figure-8 variant (0 = a, 1 = b)
    int b = 0;  // pretzel m, rational denominator

    // "zero", "inf", "x+", "x-", "twist:n", "pretzel:n,m", "rational:p/q", "fig8:a|b"
    static TangleSpec parse(const std::string& s);
    std::string to_string() const;
};

PqModule build(const TangleSpec& spec);
PqModule build(const std::string& spec);

PqModule zero_tangle();
PqModule infinity_tangle();
PqModule pos_crossing();
PqModule neg_crossing();
PqModule twist_tangle(int n);
PqModule pretzel_tangle(int n, int m);
PqModule figure8_module(int variant);
// embedded loop of slope p/q, built through the curve machinery
PqModule rational_tangle(int p, int q);
struct Word;
// the cyclic word of that loop (not normalised)
Word rational_word(int p, int q);

// Position of a pretzel generator in the chessboard picture, whole units
// (t2, t1); used to cross-check the propagated bigrading.
struct ChessboardVertex {
    std::string id;
    int site;
    int t2;
    int t1;
};
std::vector<ChessboardVertex> pretzel_chessboard(int n, int m);

// phi_n : T_n -> T_{-n}, a degree-one cycle
Morphism skein_morphism(int n);

// The two crossing-to-trivial maps whose cones give the figure-8 modules; the
// source is the zero tangle shifted as recorded in `shift`.
struct SingularMap {
    PqModule src;
    PqModule dst;
    Morphism f;
    ConeShift shift;
};
SingularMap singular_map(int variant);

// Symmetries of the quiver: rotation by r steps (site i -> i + r), optionally
// followed by the reflection i -> 1 - i, which exchanges p and q.
struct SiteSymmetry {
    int rotation = 0;
    bool reflect = false;
};
PqModule relabel_sites(const PqModule& m, SiteSymmetry s);
int apply_symmetry(int site, SiteSymmetry s);

// Mutation swapping a<->c and b<->d.  The rotation reverses both strands, so
// the result is reoriented (and its colours reordered) to carry the same
// matching as the input; mutants then agree once t1 and t2 are identified.
PqModule mutate(const PqModule& m);

}  // namespace pqm
