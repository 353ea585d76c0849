#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <vector>

namespace cospec {

using Int = mpz_class;
using Rat = mpq_class;

// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Int& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    bool operator==(const IntMatrix& o) const = default;

    IntMatrix transposed() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

// Dense matrix of rationals. mpq_class keeps every entry in lowest terms
// with a positive denominator, which level_of() relies on.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static RatMatrix identity(int n);
    static RatMatrix from_int(const IntMatrix& m);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rat& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    bool operator==(const RatMatrix& o) const = default;

    RatMatrix transposed() const;
    bool is_integral() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);
RatMatrix multiply(const IntMatrix& a, const RatMatrix& b);
RatMatrix multiply(const RatMatrix& a, const IntMatrix& b);

std::vector<Int> multiply(const IntMatrix& a, const std::vector<Int>& v);

// Exact determinant by fraction-free (Bareiss) elimination.
Int det(const IntMatrix& m);

// Coefficients of det(xI - M), monic, highest power first: index k holds the
// coefficient of x^(n-k). Faddeev-LeVerrier recurrence; every division is an
// exact integer division.
std::vector<Int> char_poly(const IntMatrix& m);

// Exact inverse over the rationals. Throws SingularMatrix when det(m) = 0.
RatMatrix rat_inverse(const IntMatrix& m);

// Least positive integer x such that x*Q is integral: the lcm of the reduced
// entry denominators.
Int level_of(const RatMatrix& q);

RatMatrix scale(const RatMatrix& q, const Rat& s);

// Converts l*Q to an integer matrix; every entry must come out integral.
IntMatrix to_int_matrix(const RatMatrix& q, const Int& scale_by = 1);

// Text format: first line "rows cols", then one whitespace-separated row per line.
IntMatrix read_int_matrix(std::istream& in);
void write_int_matrix(std::ostream& out, const IntMatrix& m);

// Accepts "a/b", a plain integer, or a decimal like "0.25"; result is
// canonicalized. Throws Error on malformed input or a zero denominator.
Rat parse_rational(const std::string& text);

} // namespace cospec
