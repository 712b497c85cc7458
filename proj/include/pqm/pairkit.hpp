#pragma once

#include <string>
#include <vector>

#include "pqm/curvekit.hpp"
#include "pqm/morcx.hpp"
#include "pqm/pqmod.hpp"

namespace pqm {

// One of the eight generators of the pairing bimodule; red is the first
// factor, blue the second.
struct AAGenerator {
    std::string name;  // e.g. "ab": red site a, blue site b
    int red_site;
    int blue_site;
    int delta2;
    Alex2 alex2;  // in the blue (second factor) matching, doubled
};

// An action: source generator, target generator, one red and one blue input
// (an idempotent means that colour is not consumed).
struct AAAction {
    int source;
    int target;
    BasisPath red;
    BasisPath blue;
};

struct AAStructure {
    std::vector<AAGenerator> gens;
    std::vector<AAAction> actions;
    Matching matching;  // of the second factor
    int index_of(const std::string& name) const;
};

AAStructure standard_p(const Matching& second_factor);
// checks idempotents and both grading rules; returns violations
std::vector<std::string> check_aa_structure(const AAStructure& p);

struct PairGenerator {
    int red;
    int aa;
    int blue;
    int delta2;
    Alex2 alex2;  // in link-component coordinates
};

struct PairComplex {
    std::vector<PairGenerator> gens;
    std::vector<std::pair<int, int>> edges;  // differential entries (from, to)
    bool univariate = false;
    bool graded_ok = true;  // the differential preserved the bigrading
    bool d_squared_zero = true;
};

struct LinkInfo {
    int components = 0;
    int stabilization = 0;  // i = |T1| + |T2| - |L| - 2
};
LinkInfo stabilization_exponent(const Matching& m1, const Matching& m2);

struct PairResult {
    PairComplex complex;
    GradedDims dims;
    LinkInfo link;
};

// Pairs CFTd(T1) (red) with CFTd(T2) (blue); the reversal of the red factor is
// applied internally unless `reverse_first` is false.
PairResult box_pair(const PqModule& m1, const PqModule& m2, bool reverse_first = true);
// homology of a complex graded by (delta2, alex) blocks
GradedDims pair_homology(const PairComplex& c);

// The closure functor at sites (s, s+2).  Supported site pairs: "a,c" and
// "b,d".
struct ClosureResult {
    GradedDims dims;
    int components = 0;
};
ClosureResult omega_close(const PqModule& m, const std::string& sites = "a,c");

// Morphism-complex pairing with the convention transform applied to the
// first factor: H(Mor(mirror(reverse(m1)), m2)).
GradedDims mor_pair(const PqModule& m1, const PqModule& m2);

// Geometric engine on curve sets.
int min_intersection(const Word& w1, const Word& w2);
struct LagrangianResult {
    int total = 0;
    std::vector<std::string> details;
};
LagrangianResult lagrangian_pair(const CurveSet& c1, const CurveSet& c2);
// full geometric route on modules, with the convention transform on m1
LagrangianResult lagrangian_pair_modules(const PqModule& m1, const PqModule& m2);

}  // namespace pqm
