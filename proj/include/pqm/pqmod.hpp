#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pqm/pqalg.hpp"

namespace pqm {

struct Generator {
    std::string id;
    int site = 1;
    int delta2 = 0;       // delta grading, doubled
    Alex2 alex2{0, 0};    // Alexander bigrading, doubled
    bool operator==(const Generator&) const = default;
};

// Sparse map (from index, to index) -> label.
using ArrowMap = std::map<std::pair<int, int>, AlgElem>;

// A curved complex over the peculiar algebra (or one of its quotients).
class PqModule {
public:
    std::string name;
    std::vector<Generator> gens;
    ArrowMap arrows;
    Matching matching;
    std::array<std::string, 2> colours{{"t1", "t2"}};
    KillSet killed = 0;
    // only the total Alexander grading is tracked (stored in alex2[0])
    bool univariate = false;

    std::size_t size() const { return gens.size(); }
    int add_generator(Generator g);
    int index_of(const std::string& id) const;  // -1 when absent
    // adds (XOR) a label onto the arrow from -> to
    void add_arrow(int from, int to, const AlgElem& label);
    void add_arrow(const std::string& from, const std::string& to, const AlgElem& label);
    AlgElem label(int from, int to) const;
    std::size_t arrow_count() const { return arrows.size(); }

    bool operator==(const PqModule& o) const {
        return gens == o.gens && arrows == o.arrows && matching == o.matching && killed == o.killed &&
               univariate == o.univariate;
    }
};

// Morphism between two modules, stored independently of them: components are
// indexed by (source generator, target generator).
struct Morphism {
    ArrowMap comps;
    int degree2 = 0;  // delta degree, doubled: delta(to) - delta(from) + delta(label)

    void add(int from, int to, const AlgElem& label);
    bool is_zero() const { return comps.empty(); }
    bool operator==(const Morphism& o) const { return comps == o.comps; }
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> issues;
    void fail(std::string s) {
        ok = false;
        issues.push_back(std::move(s));
    }
};

ValidationReport validate(const PqModule& m);
void require_valid(const PqModule& m, const std::string& what);

// the differential of m as a degree-one morphism m -> m
Morphism differential(const PqModule& m);
PqModule with_differential(const PqModule& m, const Morphism& d);

PqModule reduce(const PqModule& m);
bool is_reduced(const PqModule& m);
PqModule clean_up(const PqModule& m, const Morphism& h);
PqModule mirror(const PqModule& m);
PqModule reverse(const PqModule& m);

// Cone of f: M -> N.  The source copy of M is shifted by the given amounts so
// that f becomes a differential component; delta_shift2 defaults to
// f.degree2 - 2 when not supplied.
struct ConeShift {
    bool auto_delta = true;
    int delta2 = 0;
    Alex2 alex2{0, 0};
};
PqModule mapping_cone(const PqModule& src, const PqModule& dst, const Morphism& f, ConeShift shift = {});

struct GradingShift {
    int delta2 = 0;
    Alex2 alex2{0, 0};
};
PqModule shift_gradings(const PqModule& m, GradingShift s);
PqModule tensor_v(const PqModule& m, GradingShift first, GradingShift second);
PqModule direct_sum(const PqModule& a, const PqModule& b);
// collapse the Alexander bigrading to its total
PqModule to_univariate(const PqModule& m);
// the Alexander grading of a label as the module sees it (total when univariate)
Alex2 label_alex2(const BasisPath& b, const PqModule& m);
PqModule quotient_module(const PqModule& m, KillSet killed);

// Homotopy equivalence via canonical curve sets (implemented in curvekit).
enum class GradingMode { Full, Univariate, Ungraded };
bool equivalent(const PqModule& a, const PqModule& b, GradingMode mode = GradingMode::Full,
                bool up_to_shift = true);

}  // namespace pqm
