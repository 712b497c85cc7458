#pragma once

#include <array>
#include <string>
#include <vector>

#include "pqm/f2lin.hpp"
#include "pqm/pqalg.hpp"
#include "pqm/pqmod.hpp"

namespace pqm {

// ---------------------------------------------------------------------------
// Precurves
// ---------------------------------------------------------------------------

struct Dot {
    std::string id;
    int delta2 = 0;
    Alex2 alex2{0, 0};
    bool operator==(const Dot&) const = default;
};

// One component of a face differential: from dot `from` on arc `from_arc` to
// dot `to` on arc `to_arc` along the face path of the given length.  Front
// components are p-paths between front-side dots, back components are
// q-paths between back-side dots.
struct FaceArrow {
    int from_arc = 1;
    int from = 0;
    int to_arc = 1;
    int to = 0;
    int length = 1;
    auto operator<=>(const FaceArrow&) const = default;
};

// A two-sided join of a simply-faced precurve: the pair of components
// (arc1,dot1) -> (arc2,dot2) of length `length` and back of length 4-length.
struct Join {
    Face face = Face::Front;
    int arc1 = 1;
    int dot1 = 0;
    int arc2 = 1;
    int dot2 = 0;
    int length = 1;
};

struct Precurve {
    std::string name;
    Matching matching;
    std::array<std::string, 2> colours{{"t1", "t2"}};
    bool univariate = false;
    // dots per side, indexed by arc - 1; the two sides of an arc have equal
    // counts and identical gradings position by position
    std::array<std::vector<Dot>, 4> front;
    std::array<std::vector<Dot>, 4> back;
    // P[a-1]: column j is back dot j written in the front dots of arc a
    std::array<F2Matrix, 4> P;
    // face differentials, indexed by Face
    std::array<std::vector<FaceArrow>, 2> faces;
    // generator order used when converting back to a module: (arc, front dot)
    std::vector<std::pair<int, int>> order;

    std::size_t dots(int arc) const { return front[arc - 1].size(); }
    std::size_t total_dots() const;
    bool simply_faced() const;
    // requires simply_faced(); each join listed once
    std::vector<Join> joins(Face f) const;
};

// functor F: one dot per generator on each side, identity decorations
Precurve to_precurve(const PqModule& m);
// functor G: generators are the front dots, back components are transported
// through the decorations
PqModule from_precurve(const Precurve& p);
Precurve make_simply_faced(const Precurve& p);
Precurve simplify_arrows(const Precurve& p);

// Decomposition of an arc decoration into crossings and crossover arrows,
// ordered from the front side to the back side.  The product of the item
// matrices equals the decoration.
struct DecorationItem {
    enum class Kind { Crossing, Arrow } kind = Kind::Crossing;
    int i = 0;  // crossing: strands i and j; arrow: from strand i to strand j
    int j = 0;
    bool operator==(const DecorationItem&) const = default;
};
std::vector<DecorationItem> decorate(const F2Matrix& p);
F2Matrix item_matrix(const DecorationItem& item, std::size_t n);

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

// Crossing of `arc`, then the chord of `face` leaving it.
struct Step {
    int arc = 1;
    Face face = Face::Front;
    auto operator<=>(const Step&) const = default;
};

struct Word {
    std::vector<Step> steps;

    std::size_t size() const { return steps.size(); }
    // "bF dB": arc letter followed by F (front) or B (back)
    static Word parse(const std::string& s);
    std::string to_string() const;
    // faces alternate, consecutive arcs differ, length even and positive
    bool well_formed() const;
    bool primitive() const;
    Word rotated(int r) const;
    Word reversed() const;
    // chord length of step i along its face (1..3)
    int chord_length(std::size_t i) const;
    auto operator<=>(const Word&) const = default;
};

// least representative over rotation and reversal
struct WordNormalization {
    Word word;
    int rotation = 0;
    bool reversed = false;
};
WordNormalization normalize_word(const Word& w);

struct Loop {
    Word word;
    F2Matrix local_system = F2Matrix::identity(1);
    // gradings of the dot at step 0
    int delta2 = 0;
    Alex2 alex2{0, 0};

    std::size_t dim() const { return local_system.rows(); }
    bool operator==(const Loop&) const = default;
};

struct CurveSet {
    std::string name;
    Matching matching;
    std::array<std::string, 2> colours{{"t1", "t2"}};
    bool univariate = false;
    std::vector<Loop> loops;

    std::size_t generator_count() const;
    bool operator==(const CurveSet& o) const {
        return loops == o.loops && univariate == o.univariate;
    }
};

struct DotGrading {
    int delta2 = 0;
    Alex2 alex2{0, 0};
    bool operator==(const DotGrading&) const = default;
};
// gradings along the word starting from the anchor; entry n is the value after
// going once around (equal to entry 0 for a gradable loop)
std::vector<DotGrading> propagate_gradings(const Word& w, DotGrading anchor, const Matching& m, bool univariate);
// the Alexander contribution accumulated around the word (zero when gradable)
DotGrading winding(const Word& w, const Matching& m, bool univariate);

CurveSet extract_loops(const Precurve& p);
CurveSet canonical_form(const CurveSet& c);
// Pi: dim X parallel copies of each word, with X inserted on the closing chord
PqModule build_from_loops(const CurveSet& c);
bool is_embedded(const Loop& l);
// reduce, F, simply-faced, simplify, extract, canonical form
CurveSet curves_of(const PqModule& m);

// Mirror of a curve set: front and back exchanged, gradings negated.
CurveSet mirror(const CurveSet& c);
// grading views used by equivalence tests
CurveSet to_univariate(const CurveSet& c);
CurveSet forget_gradings(const CurveSet& c);
// shift so that the minimal delta and the componentwise minimal Alexander
// grading over all dots are zero
CurveSet normalize_shift(const CurveSet& c);

// minimal self-intersection number of a primitive word (implemented with the
// pairing engine)
int self_intersection(const Word& w);

}  // namespace pqm
