#include "pqm/f2lin.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pqm {

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * ((cols + 63) / 64), 0) {}

F2Matrix F2Matrix::identity(std::size_t n) {
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

F2Matrix F2Matrix::from_rows(const std::vector<std::vector<int>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows[0].size() : 0;
    F2Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("F2Matrix: ragged rows");
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j] & 1);
    }
    return m;
}

void F2Matrix::add_row(std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < wpr_; ++w) data_[dst * wpr_ + w] ^= data_[src * wpr_ + w];
}

void F2Matrix::add_col(std::size_t dst, std::size_t src) {
    for (std::size_t r = 0; r < rows_; ++r)
        if (get(r, src)) flip(r, dst);
}

void F2Matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t w = 0; w < wpr_; ++w) std::swap(data_[a * wpr_ + w], data_[b * wpr_ + w]);
}

void F2Matrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) {
        const bool x = get(r, a), y = get(r, b);
        set(r, a, y);
        set(r, b, x);
    }
}

bool F2Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

bool F2Matrix::is_identity() const {
    return square() && *this == identity(rows_);
}

F2Matrix F2Matrix::transpose() const {
    F2Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (get(i, j)) t.set(j, i, true);
    return t;
}

F2Matrix F2Matrix::operator*(const F2Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("F2Matrix: dimension mismatch in product");
    F2Matrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k)
            if (get(i, k))
                for (std::size_t w = 0; w < o.wpr_; ++w) p.data_[i * p.wpr_ + w] ^= o.data_[k * o.wpr_ + w];
    return p;
}

F2Matrix F2Matrix::operator+(const F2Matrix& o) const {
    F2Matrix s = *this;
    s += o;
    return s;
}

F2Matrix& F2Matrix::operator+=(const F2Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("F2Matrix: dimension mismatch in sum");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] ^= o.data_[i];
    return *this;
}

bool F2Matrix::operator==(const F2Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool F2Matrix::operator<(const F2Matrix& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return to_rows() < o.to_rows();
}

std::vector<std::vector<int>> F2Matrix::to_rows() const {
    std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_, 0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i][j] = get(i, j) ? 1 : 0;
    return out;
}

std::string F2Matrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (get(i, j) ? 1 : 0);
        os << ']';
    }
    os << ']';
    return os.str();
}

// Row reduction with first-nonzero pivoting; returns the rank and leaves m in
// row echelon form.
static std::size_t eliminate(F2Matrix& m, std::vector<std::size_t>* pivot_cols = nullptr) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && !m.get(piv, c)) ++piv;
        if (piv == m.rows()) continue;
        m.swap_rows(r, piv);
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != r && m.get(i, c)) m.add_row(i, r);
        if (pivot_cols) pivot_cols->push_back(c);
        ++r;
    }
    return r;
}

std::size_t rank(const F2Matrix& m) {
    F2Matrix w = m;
    return eliminate(w);
}

std::size_t kernel_dim(const F2Matrix& m) { return m.cols() - rank(m); }

F2Matrix kernel_basis(const F2Matrix& m) {
    F2Matrix w = m;
    std::vector<std::size_t> piv;
    eliminate(w, &piv);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_piv[c]) free_cols.push_back(c);
    F2Matrix k(m.cols(), free_cols.size());
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        k.set(free_cols[f], f, true);
        for (std::size_t r = 0; r < piv.size(); ++r)
            if (w.get(r, free_cols[f])) k.set(piv[r], f, true);
    }
    return k;
}

std::optional<F2Matrix> invert(const F2Matrix& m) {
    if (!m.square()) throw std::invalid_argument("invert: matrix is not square");
    const std::size_t n = m.rows();
    F2Matrix a = m;
    F2Matrix inv = F2Matrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && !a.get(piv, c)) ++piv;
        if (piv == n) return std::nullopt;
        a.swap_rows(c, piv);
        inv.swap_rows(c, piv);
        for (std::size_t i = 0; i < n; ++i)
            if (i != c && a.get(i, c)) {
                a.add_row(i, c);
                inv.add_row(i, c);
            }
    }
    return inv;
}

bool is_invertible(const F2Matrix& m) { return m.square() && rank(m) == m.rows(); }

F2Matrix kron(const F2Matrix& a, const F2Matrix& b) {
    F2Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a.get(i, j))
                for (std::size_t r = 0; r < b.rows(); ++r)
                    for (std::size_t c = 0; c < b.cols(); ++c)
                        if (b.get(r, c)) k.set(i * b.rows() + r, j * b.cols() + c, true);
    return k;
}

// ---------------------------------------------------------------------------

F2Poly::F2Poly(std::vector<bool> coeffs) : c_(std::move(coeffs)) { trim(); }

F2Poly F2Poly::monomial(int deg) {
    if (deg < 0) throw std::invalid_argument("F2Poly: negative degree");
    std::vector<bool> c(deg + 1, false);
    c[deg] = true;
    return F2Poly(std::move(c));
}

F2Poly F2Poly::from_mask(std::uint64_t mask) {
    std::vector<bool> c;
    for (int i = 0; i < 64; ++i) c.push_back((mask >> i) & 1u);
    return F2Poly(std::move(c));
}

F2Poly F2Poly::parse(const std::string& s) {
    F2Poly acc;
    std::string term;
    auto flush = [&]() {
        std::string t;
        for (char ch : term)
            if (ch != ' ') t += ch;
        term.clear();
        if (t.empty()) return;
        if (t == "0") return;
        if (t == "1") { acc = acc + one(); return; }
        if (t == "x") { acc = acc + x(); return; }
        if (t.rfind("x^", 0) == 0) {
            acc = acc + monomial(std::stoi(t.substr(2)));
            return;
        }
        throw std::invalid_argument("F2Poly::parse: bad term '" + t + "'");
    };
    for (char ch : s) {
        if (ch == '+') flush();
        else term += ch;
    }
    flush();
    return acc;
}

void F2Poly::trim() {
    while (!c_.empty() && !c_.back()) c_.pop_back();
}

F2Poly F2Poly::operator+(const F2Poly& o) const {
    std::vector<bool> c(std::max(c_.size(), o.c_.size()), false);
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] = c[i] != o.c_[i];
    return F2Poly(std::move(c));
}

F2Poly F2Poly::operator*(const F2Poly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<bool> c(c_.size() + o.c_.size() - 1, false);
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i])
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                if (o.c_[j]) c[i + j] = !c[i + j];
    return F2Poly(std::move(c));
}

bool F2Poly::operator<(const F2Poly& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    for (int i = degree(); i >= 0; --i)
        if (c_[i] != o.c_[i]) return o.c_[i];
    return false;
}

std::string F2Poly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        if (!c_[i]) continue;
        if (!out.empty()) out += "+";
        if (i == 0) out += "1";
        else if (i == 1) out += "x";
        else out += "x^" + std::to_string(i);
    }
    return out;
}

std::pair<F2Poly, F2Poly> divmod(const F2Poly& a, const F2Poly& b) {
    if (b.is_zero()) throw std::domain_error("F2Poly: division by zero");
    F2Poly r = a, q;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        F2Poly t = F2Poly::monomial(r.degree() - b.degree());
        q = q + t;
        r = r + t * b;
    }
    return {q, r};
}

F2Poly gcd(F2Poly a, F2Poly b) {
    while (!b.is_zero()) {
        F2Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

F2Matrix evaluate(const F2Poly& f, const F2Matrix& x) {
    if (!x.square()) throw std::invalid_argument("evaluate: matrix is not square");
    const std::size_t n = x.rows();
    F2Matrix acc(n, n);
    for (int i = f.degree(); i >= 0; --i) {
        acc = acc * x;
        if (f.coeff(i)) acc += F2Matrix::identity(n);
    }
    return acc;
}

F2Matrix companion(const F2Poly& f) {
    if (f.degree() < 1) throw std::invalid_argument("companion: polynomial must have degree >= 1");
    const int n = f.degree();
    F2Matrix m(n, n);
    for (int i = 1; i < n; ++i) m.set(i, i - 1, true);
    for (int i = 0; i < n; ++i) m.set(i, n - 1, f.coeff(i));
    return m;
}

// Smith normal form of xI + M over F2[x]; the non-unit diagonal entries are
// the invariant factors.
std::vector<F2Poly> frobenius_form(const F2Matrix& m) {
    if (!m.square()) throw std::invalid_argument("frobenius_form: matrix is not square");
    const std::size_t n = m.rows();
    std::vector<std::vector<F2Poly>> a(n, std::vector<F2Poly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (m.get(i, j)) a[i][j] = F2Poly::one();
            if (i == j) a[i][j] = a[i][j] + F2Poly::x();
        }

    auto row_axpy = [&](std::size_t dst, std::size_t src, const F2Poly& q) {
        for (std::size_t j = 0; j < n; ++j)
            if (!a[src][j].is_zero()) a[dst][j] = a[dst][j] + q * a[src][j];
    };
    auto col_axpy = [&](std::size_t dst, std::size_t src, const F2Poly& q) {
        for (std::size_t i = 0; i < n; ++i)
            if (!a[i][src].is_zero()) a[i][dst] = a[i][dst] + q * a[i][src];
    };

    std::vector<F2Poly> diag;
    for (std::size_t k = 0; k < n; ++k) {
        for (;;) {
            // lowest-degree pivot, first in row-major order
            std::size_t pi = n, pj = n;
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < n; ++j)
                    if (!a[i][j].is_zero() && (pi == n || a[i][j].degree() < a[pi][pj].degree())) {
                        pi = i;
                        pj = j;
                    }
            if (pi == n) break;  // characteristic matrix is never singular, kept for safety
            std::swap(a[k], a[pi]);
            for (std::size_t i = 0; i < n; ++i) std::swap(a[i][k], a[i][pj]);

            bool clean = true;
            for (std::size_t i = k + 1; i < n; ++i) {
                if (a[i][k].is_zero()) continue;
                auto [q, r] = divmod(a[i][k], a[k][k]);
                row_axpy(i, k, q);
                if (!r.is_zero()) clean = false;
            }
            for (std::size_t j = k + 1; j < n; ++j) {
                if (a[k][j].is_zero()) continue;
                auto [q, r] = divmod(a[k][j], a[k][k]);
                col_axpy(j, k, q);
                if (!r.is_zero()) clean = false;
            }
            if (!clean) continue;
            // divisibility of the remaining block
            bool divides = true;
            for (std::size_t i = k + 1; i < n && divides; ++i)
                for (std::size_t j = k + 1; j < n; ++j)
                    if (!a[i][j].is_zero() && !divmod(a[i][j], a[k][k]).second.is_zero()) {
                        row_axpy(k, i, F2Poly::one());
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        diag.push_back(a[k][k]);
    }

    std::vector<F2Poly> out;
    for (auto& d : diag)
        if (d.degree() >= 1) out.push_back(d);
    std::sort(out.begin(), out.end(), [](const F2Poly& x, const F2Poly& y) { return y < x; });
    return out;
}

F2Matrix frobenius_matrix(const std::vector<F2Poly>& factors) {
    std::size_t n = 0;
    for (auto& f : factors) n += static_cast<std::size_t>(f.degree());
    F2Matrix m(n, n);
    std::size_t off = 0;
    for (auto& f : factors) {
        F2Matrix c = companion(f);
        for (std::size_t i = 0; i < c.rows(); ++i)
            for (std::size_t j = 0; j < c.cols(); ++j) m.set(off + i, off + j, c.get(i, j));
        off += c.rows();
    }
    return m;
}

bool similar(const F2Matrix& a, const F2Matrix& b) {
    if (!a.square() || !b.square() || a.rows() != b.rows()) return false;
    return frobenius_form(a) == frobenius_form(b);
}

std::size_t parallel_correction(const F2Matrix& x, const F2Matrix& x2) {
    auto xi = invert(x);
    auto x2i = invert(x2);
    if (!xi || !x2i) throw std::invalid_argument("parallel_correction: singular local system");
    F2Matrix k = kron(xi->transpose(), x2);
    k += F2Matrix::identity(k.rows());
    return kernel_dim(k);
}

}  // namespace pqm
