#include "pqm/pqalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace pqm {

char site_char(int site) { return static_cast<char>('a' + wrap_site(site) - 1); }

int site_from_char(char c) {
    if (c >= 'a' && c <= 'd') return c - 'a' + 1;
    if (c >= '1' && c <= '4') return c - '0';
    throw std::invalid_argument(std::string("unknown site '") + c + "'");
}

BasisPath BasisPath::p(int source, int length) {
    if (length < 1) throw std::invalid_argument("p-path needs positive length");
    return {PathKind::P, wrap_site(source), length};
}

BasisPath BasisPath::q(int source, int length) {
    if (length < 1) throw std::invalid_argument("q-path needs positive length");
    return {PathKind::Q, wrap_site(source), length};
}

int BasisPath::target() const {
    switch (kind) {
        case PathKind::P: return wrap_site(source - length);
        case PathKind::Q: return wrap_site(source + length);
        default: return source;
    }
}

std::vector<int> BasisPath::letters() const {
    std::vector<int> out;
    for (int k = 0; k < length; ++k)
        out.push_back(kind == PathKind::P ? wrap_site(source - k) : wrap_site(source + k + 1));
    return out;
}

std::uint8_t BasisPath::letter_mask() const {
    std::uint8_t m = 0;
    const int shift = kind == PathKind::Q ? 4 : 0;
    for (int l : letters()) m |= static_cast<std::uint8_t>(1u << (shift + l - 1));
    return m;
}

std::string BasisPath::to_string() const {
    if (kind == PathKind::Idem) return std::string("1@") + site_char(source);
    std::string s(1, kind == PathKind::P ? 'p' : 'q');
    // written left to right as the product of letters, last applied first
    auto ls = letters();
    std::reverse(ls.begin(), ls.end());
    for (int l : ls) s += static_cast<char>('0' + l);
    return s;
}

BasisPath BasisPath::parse(const std::string& s) {
    if (s.size() >= 3 && s[0] == '1' && s[1] == '@') return idem(site_from_char(s[2]));
    if (s.size() >= 2 && s[0] == 'i' && s.size() == 2) return idem(site_from_char(s[1]));
    if (s.size() < 2 || (s[0] != 'p' && s[0] != 'q'))
        throw std::invalid_argument("cannot parse basis path '" + s + "'");
    std::vector<int> d;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] < '1' || s[i] > '4') throw std::invalid_argument("bad letter in basis path '" + s + "'");
        d.push_back(s[i] - '0');
    }
    const bool is_p = s[0] == 'p';
    for (std::size_t i = 1; i < d.size(); ++i) {
        const int expect = wrap_site(is_p ? d[i - 1] + 1 : d[i - 1] - 1);
        if (d[i] != expect) throw std::invalid_argument("non-composable letters in '" + s + "'");
    }
    const int len = static_cast<int>(d.size());
    return is_p ? p(d.back(), len) : q(d.back() - 1, len);
}

std::optional<BasisPath> compose(const BasisPath& a, const BasisPath& b) {
    if (b.target() != a.source) return std::nullopt;
    if (a.is_idem()) return b;
    if (b.is_idem()) return a;
    if (a.kind != b.kind) return std::nullopt;
    return BasisPath{a.kind, b.source, a.length + b.length};
}

// ---------------------------------------------------------------------------

AlgElem AlgElem::from_terms(std::vector<BasisPath> terms) {
    std::sort(terms.begin(), terms.end());
    AlgElem e;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i;
        while (j < terms.size() && terms[j] == terms[i]) ++j;
        if ((j - i) % 2 == 1) e.terms_.push_back(terms[i]);
        i = j;
    }
    return e;
}

AlgElem AlgElem::parse(const std::vector<std::string>& paths) {
    std::vector<BasisPath> t;
    for (auto& s : paths) t.push_back(BasisPath::parse(s));
    return from_terms(std::move(t));
}

bool AlgElem::contains(const BasisPath& b) const {
    return std::binary_search(terms_.begin(), terms_.end(), b);
}

bool AlgElem::has_idem() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const BasisPath& b) { return b.is_idem(); });
}

AlgElem AlgElem::operator+(const AlgElem& o) const {
    AlgElem r;
    std::set_symmetric_difference(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
                                  std::back_inserter(r.terms_));
    return r;
}

AlgElem& AlgElem::operator+=(const AlgElem& o) {
    *this = *this + o;
    return *this;
}

AlgElem& AlgElem::toggle(const BasisPath& b) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), b);
    if (it != terms_.end() && *it == b) terms_.erase(it);
    else terms_.insert(it, b);
    return *this;
}

std::vector<std::string> AlgElem::to_strings() const {
    std::vector<std::string> out;
    for (auto& t : terms_) out.push_back(t.to_string());
    return out;
}

std::string AlgElem::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& t : terms_) {
        if (!s.empty()) s += "+";
        s += t.to_string();
    }
    return s;
}

AlgElem multiply(const AlgElem& a, const AlgElem& b) {
    std::vector<BasisPath> out;
    for (auto& x : a.terms())
        for (auto& y : b.terms())
            if (auto c = compose(x, y)) out.push_back(*c);
    return AlgElem::from_terms(std::move(out));
}

// ---------------------------------------------------------------------------

bool Matching::valid() const {
    std::array<int, 5> seen{};
    for (auto& [i, o] : pairs) {
        if (i < 1 || i > 4 || o < 1 || o > 4) return false;
        ++seen[i];
        ++seen[o];
    }
    return seen[1] == 1 && seen[2] == 1 && seen[3] == 1 && seen[4] == 1;
}

int Matching::colour_of(int site) const {
    for (int k = 0; k < 2; ++k)
        if (pairs[k].first == site || pairs[k].second == site) return k;
    throw std::invalid_argument("matching does not cover site");
}

int delta2(const BasisPath& b) { return b.length; }

std::optional<int> delta2(const AlgElem& a) {
    if (a.is_zero()) return std::nullopt;
    const int d = a.terms().front().length;
    for (auto& t : a.terms())
        if (t.length != d) return std::nullopt;
    return d;
}

Alex2 alexander(const BasisPath& b, const Matching& m) {
    Alex2 out{0, 0};
    for (int l : b.letters())
        for (int k = 0; k < 2; ++k) {
            if (l == m.pairs[k].first) out[k] += 1;
            if (l == m.pairs[k].second) out[k] -= 1;
        }
    return out;
}

Alex2 alexander2(const BasisPath& b, const Matching& m) {
    auto a = alexander(b, m);
    return {2 * a[0], 2 * a[1]};
}

std::optional<Alex2> alexander(const AlgElem& a, const Matching& m) {
    if (a.is_zero()) return std::nullopt;
    const Alex2 first = alexander(a.terms().front(), m);
    for (auto& t : a.terms())
        if (alexander(t, m) != first) return std::nullopt;
    return first;
}

KillSet parse_kill_set(const std::vector<std::string>& letters) {
    KillSet k = 0;
    for (auto& s : letters) {
        auto b = BasisPath::parse(s);
        if (b.is_idem() || b.length != 1) throw std::invalid_argument("kill-set entries must be single letters");
        k |= b.letter_mask();
    }
    return k;
}

std::vector<std::string> kill_set_strings(KillSet k) {
    std::vector<std::string> out;
    for (int i = 0; i < 8; ++i)
        if (k & (1u << i)) out.push_back(std::string(1, i < 4 ? 'p' : 'q') + static_cast<char>('1' + i % 4));
    return out;
}

AlgElem kill(const AlgElem& a, KillSet killed) {
    if (!killed) return a;
    std::vector<BasisPath> keep;
    for (auto& t : a.terms())
        if (!(t.letter_mask() & killed)) keep.push_back(t);
    return AlgElem::from_terms(std::move(keep));
}

AlgElem curvature_at(int site) {
    return AlgElem::from_terms({BasisPath::p(site, 4), BasisPath::q(site, 4)});
}

AlgElem curvature() {
    AlgElem c;
    for (int s = 1; s <= 4; ++s) c += curvature_at(s);
    return c;
}

BasisPath shortest_path(Face face, int from, int to) {
    from = wrap_site(from);
    to = wrap_site(to);
    if (from == to) throw std::invalid_argument("shortest_path: sides must differ");
    if (face == Face::Front) return BasisPath::p(from, (from - to + 4) % 4);
    return BasisPath::q(from, (to - from + 4) % 4);
}

}  // namespace pqm
