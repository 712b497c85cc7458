#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pqm {

// Sites 1..4 are the arcs a,b,c,d.  Indices are always wrapped into 1..4.
inline int wrap_site(int i) { return ((i - 1) % 4 + 4) % 4 + 1; }
char site_char(int site);
int site_from_char(char c);

enum class PathKind : std::uint8_t { Idem = 0, P = 1, Q = 2 };

// A standard basis element of the algebra.  p_i runs from site i to site i-1,
// q_i from site i-1 to site i.  A path is stored by its source site and its
// length; the letters are derived.
struct BasisPath {
    PathKind kind = PathKind::Idem;
    int source = 1;
    int length = 0;

    static BasisPath idem(int site) { return {PathKind::Idem, wrap_site(site), 0}; }
    static BasisPath p(int source, int length);
    static BasisPath q(int source, int length);

    int target() const;
    bool is_idem() const { return kind == PathKind::Idem; }
    // bit k-1 for p_k, bit 3+k for q_k
    std::uint8_t letter_mask() const;
    // letters in order of traversal, e.g. p12 -> {2,1}
    std::vector<int> letters() const;

    std::string to_string() const;  // "1@b", "p12", "q432"
    static BasisPath parse(const std::string& s);

    auto operator<=>(const BasisPath&) const = default;
};

// product of basis paths, b applied first; nullopt means zero
std::optional<BasisPath> compose(const BasisPath& a, const BasisPath& b);

// An F2-linear combination of basis paths, kept sorted and duplicate free.
class AlgElem {
public:
    AlgElem() = default;
    AlgElem(const BasisPath& b) : terms_{b} {}  // NOLINT: implicit by design
    static AlgElem from_terms(std::vector<BasisPath> terms);
    static AlgElem parse(const std::vector<std::string>& paths);

    const std::vector<BasisPath>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    bool contains(const BasisPath& b) const;
    bool has_idem() const;

    AlgElem operator+(const AlgElem& o) const;
    AlgElem& operator+=(const AlgElem& o);
    AlgElem& toggle(const BasisPath& b);
    bool operator==(const AlgElem& o) const { return terms_ == o.terms_; }
    bool operator!=(const AlgElem& o) const { return terms_ != o.terms_; }
    bool operator<(const AlgElem& o) const { return terms_ < o.terms_; }

    std::vector<std::string> to_strings() const;
    std::string to_string() const;

private:
    std::vector<BasisPath> terms_;
};

AlgElem multiply(const AlgElem& a, const AlgElem& b);
inline AlgElem operator*(const AlgElem& a, const AlgElem& b) { return multiply(a, b); }

// Matching of the four tangle ends into two oriented strands, inward end first.
struct Matching {
    std::array<std::pair<int, int>, 2> pairs{{{1, 2}, {3, 4}}};

    bool valid() const;
    Matching reversed() const {
        return Matching{{{{pairs[0].second, pairs[0].first}, {pairs[1].second, pairs[1].first}}}};
    }
    // colour index (0/1) of the strand ending at this site
    int colour_of(int site) const;
    bool operator==(const Matching&) const = default;
};

using Alex2 = std::array<int, 2>;

// delta of a homogeneous element, doubled (= path length); nullopt if
// nonhomogeneous or zero
std::optional<int> delta2(const AlgElem& a);
int delta2(const BasisPath& b);

// per-colour Alexander weight in whole units: +1 for each letter at the inward
// site, -1 at the outward site
Alex2 alexander(const BasisPath& b, const Matching& m);
std::optional<Alex2> alexander(const AlgElem& a, const Matching& m);
// the same in doubled units, matching the storage convention of generators
Alex2 alexander2(const BasisPath& b, const Matching& m);

// kill-set bitmask, same layout as BasisPath::letter_mask
using KillSet = std::uint8_t;
KillSet parse_kill_set(const std::vector<std::string>& letters);
std::vector<std::string> kill_set_strings(KillSet k);
AlgElem kill(const AlgElem& a, KillSet killed);

// p^4 + q^4, all 8 terms
AlgElem curvature();
// the curvature component at one idempotent (two terms)
AlgElem curvature_at(int site);

enum class Face : std::uint8_t { Front = 0, Back = 1 };

// shortest basis path from side `from` to side `to` along the face
BasisPath shortest_path(Face face, int from, int to);

// the fixed surface: four arcs, two faces with four sides each
struct SurfaceModel {
    std::array<bool, 2> open{{false, false}};  // basepoint per face
    static constexpr int n_sides = 4;
    static int face_cycle_length() { return n_sides; }
};

}  // namespace pqm
