#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pqm {

// Dense matrix over the two-element field, rows packed into 64-bit words.
class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols);

    static F2Matrix zero(std::size_t rows, std::size_t cols) { return F2Matrix(rows, cols); }
    static F2Matrix identity(std::size_t n);
    static F2Matrix from_rows(const std::vector<std::vector<int>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t& w = data_[r * wpr_ + (c >> 6)];
        const std::uint64_t bit = std::uint64_t{1} << (c & 63);
        if (v) w |= bit; else w &= ~bit;
    }
    void flip(std::size_t r, std::size_t c) {
        data_[r * wpr_ + (c >> 6)] ^= std::uint64_t{1} << (c & 63);
    }

    // row_dst += row_src
    void add_row(std::size_t dst, std::size_t src);
    // col_dst += col_src
    void add_col(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);

    bool is_zero() const;
    bool is_identity() const;
    F2Matrix transpose() const;

    F2Matrix operator*(const F2Matrix& o) const;
    F2Matrix operator+(const F2Matrix& o) const;
    F2Matrix& operator+=(const F2Matrix& o);
    bool operator==(const F2Matrix& o) const;
    bool operator!=(const F2Matrix& o) const { return !(*this == o); }
    bool operator<(const F2Matrix& o) const;

    std::vector<std::vector<int>> to_rows() const;
    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t wpr_ = 0;  // words per row
    std::vector<std::uint64_t> data_;
};

std::size_t rank(const F2Matrix& m);
std::size_t kernel_dim(const F2Matrix& m);
// basis of the right kernel {v : m v = 0}, as columns of the returned matrix
F2Matrix kernel_basis(const F2Matrix& m);
std::optional<F2Matrix> invert(const F2Matrix& m);
bool is_invertible(const F2Matrix& m);
F2Matrix kron(const F2Matrix& a, const F2Matrix& b);

// Polynomial over F2, dense coefficient bits, lowest degree first.
class F2Poly {
public:
    F2Poly() = default;
    explicit F2Poly(std::vector<bool> coeffs);
    static F2Poly monomial(int deg);
    static F2Poly one() { return monomial(0); }
    static F2Poly x() { return monomial(1); }
    // parses "x^2+x+1", "1", "0", "x"
    static F2Poly parse(const std::string& s);
    // bit i of the mask is the coefficient of x^i
    static F2Poly from_mask(std::uint64_t mask);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) && c_[i]; }
    const std::vector<bool>& coeffs() const { return c_; }

    F2Poly operator+(const F2Poly& o) const;
    F2Poly operator*(const F2Poly& o) const;
    bool operator==(const F2Poly& o) const { return c_ == o.c_; }
    bool operator!=(const F2Poly& o) const { return c_ != o.c_; }
    bool operator<(const F2Poly& o) const;

    std::string to_string() const;

private:
    void trim();
    std::vector<bool> c_;
};

// quotient and remainder; throws std::domain_error on division by zero
std::pair<F2Poly, F2Poly> divmod(const F2Poly& a, const F2Poly& b);
F2Poly gcd(F2Poly a, F2Poly b);
F2Matrix evaluate(const F2Poly& f, const F2Matrix& x);

F2Matrix companion(const F2Poly& f);
// invariant factors, largest first: f_1, ..., f_r with f_{k+1} | f_k
std::vector<F2Poly> frobenius_form(const F2Matrix& m);
// block-diagonal matrix of companion blocks
F2Matrix frobenius_matrix(const std::vector<F2Poly>& factors);
bool similar(const F2Matrix& a, const F2Matrix& b);
std::size_t parallel_correction(const F2Matrix& x, const F2Matrix& x2);

}  // namespace pqm
