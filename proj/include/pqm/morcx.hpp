#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "pqm/pqmod.hpp"

namespace pqm {

// Bigraded dimension table.  Keys are (delta2, a1, a2); in univariate mode the
// Alexander grading is collapsed into a1 and a2 is always 0.
struct GradedDims {
    std::map<std::tuple<int, int, int>, int> dims;
    bool univariate = false;
    bool stabilized = true;
    std::string note;

    int total() const;
    void add(int delta2, Alex2 a, int n);
    // collapse the two colours into one
    GradedDims univariate_view() const;
    // shift so the smallest delta is 0 and, if symmetric, Alexander is centred
    GradedDims normalized() const;
    std::map<int, int> delta_support() const;
    bool operator==(const GradedDims& o) const { return dims == o.dims && univariate == o.univariate; }
    std::string to_string() const;
};

Morphism identity_morphism(const PqModule& m);
// g o f; f is applied first
Morphism compose(const Morphism& g, const Morphism& f);
Morphism add(const Morphism& a, const Morphism& b);
// D(f) = dN o f + f o dM
Morphism apply_d(const PqModule& src, const PqModule& dst, const Morphism& f);
bool is_cycle(const PqModule& src, const PqModule& dst, const Morphism& f);
// checks idempotent compatibility and homogeneity of the declared degree
bool morphism_well_formed(const PqModule& src, const PqModule& dst, const Morphism& f, std::string* why = nullptr);

struct ElementaryMorphism {
    int from;
    int to;
    BasisPath path;
    auto operator<=>(const ElementaryMorphism&) const = default;
};
std::vector<ElementaryMorphism> mor_basis(const PqModule& src, const PqModule& dst, int degree2);

// Homology of Mor(src, dst) over a window of delta degrees (doubled), expanded
// until the support is flanked by empty degrees.  Cap: PQM_WINDOW_CAP env
// variable (default 16 expansion steps).
GradedDims mor_homology_window(const PqModule& src, const PqModule& dst);
GradedDims mor_homology_window(const PqModule& src, const PqModule& dst, int d_lo2, int d_hi2);

// the Alexander grading of src, expressed in dst's colours when possible
struct ColourTransport {
    bool univariate = false;
    bool swap = false;
    bool ignore = false;  // orientations disagree: no Alexander grading survives
};
ColourTransport colour_transport(const Matching& from, const Matching& to);
Alex2 transport(const Alex2& a, const ColourTransport& t);

}  // namespace pqm
