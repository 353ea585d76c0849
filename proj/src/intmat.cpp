#include "cospec/intmat.hpp"

#include "cospec/errors.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace cospec {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_int(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

RatMatrix RatMatrix::transposed() const {
    RatMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool RatMatrix::is_integral() const {
    for (const Rat& x : a_)
        if (x.get_den() != 1) return false;
    return true;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw PreconditionViolated("matrix dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Int& aik = a(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.rows()) throw PreconditionViolated("matrix dimension mismatch");
    RatMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Rat& aik = a(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

RatMatrix multiply(const IntMatrix& a, const RatMatrix& b) {
    return multiply(RatMatrix::from_int(a), b);
}

RatMatrix multiply(const RatMatrix& a, const IntMatrix& b) {
    return multiply(a, RatMatrix::from_int(b));
}

std::vector<Int> multiply(const IntMatrix& a, const std::vector<Int>& v) {
    if (a.cols() != int(v.size())) throw PreconditionViolated("matrix/vector dimension mismatch");
    std::vector<Int> r(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
    return r;
}

Int det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw PreconditionViolated("det: matrix not square");
    const int n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            for (int j = k; j < n; ++j) swap(a(k, j), a(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                // Bareiss: division by the previous pivot is exact
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = t;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

std::vector<Int> char_poly(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw PreconditionViolated("char_poly: matrix not square");
    const int n = m.rows();
    std::vector<Int> c(n + 1);
    c[0] = 1;
    IntMatrix b = m;
    for (int k = 1; k <= n; ++k) {
        if (k > 1) {
            // b <- m * (b + c[k-1] * I)
            IntMatrix s = b;
            for (int i = 0; i < n; ++i) s(i, i) += c[k - 1];
            b = multiply(m, s);
        }
        Int tr = 0;
        for (int i = 0; i < n; ++i) tr += b(i, i);
        mpz_divexact_ui(c[k].get_mpz_t(), tr.get_mpz_t(), k);
        c[k] = -c[k];
    }
    return c;
}

RatMatrix rat_inverse(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw PreconditionViolated("rat_inverse: matrix not square");
    const int n = m.rows();
    RatMatrix a = RatMatrix::from_int(m);
    RatMatrix inv = RatMatrix::identity(n);
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (a(i, k) != 0) { piv = i; break; }
        if (piv < 0) throw SingularMatrix("rat_inverse: singular matrix");
        if (piv != k)
            for (int j = 0; j < n; ++j) {
                swap(a(k, j), a(piv, j));
                swap(inv(k, j), inv(piv, j));
            }
        Rat d = a(k, k);
        for (int j = 0; j < n; ++j) {
            a(k, j) /= d;
            inv(k, j) /= d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            Rat f = a(i, k);
            for (int j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

Int level_of(const RatMatrix& q) {
    Int l = 1;
    for (int i = 0; i < q.rows(); ++i)
        for (int j = 0; j < q.cols(); ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q(i, j).get_den_mpz_t());
    return l;
}

RatMatrix scale(const RatMatrix& q, const Rat& s) {
    RatMatrix r(q.rows(), q.cols());
    for (int i = 0; i < q.rows(); ++i)
        for (int j = 0; j < q.cols(); ++j) r(i, j) = q(i, j) * s;
    return r;
}

IntMatrix to_int_matrix(const RatMatrix& q, const Int& scale_by) {
    IntMatrix m(q.rows(), q.cols());
    for (int i = 0; i < q.rows(); ++i)
        for (int j = 0; j < q.cols(); ++j) {
            Rat x = q(i, j) * Rat(scale_by);
            if (x.get_den() != 1)
                throw PreconditionViolated("to_int_matrix: entry not integral after scaling");
            m(i, j) = x.get_num();
        }
    return m;
}

IntMatrix read_int_matrix(std::istream& in) {
    long rows = 0, cols = 0;
    if (!(in >> rows >> cols)) throw MatrixFormatError("matrix header: expected \"rows cols\"");
    if (rows <= 0 || cols <= 0 || rows > 10000 || cols > 10000)
        throw MatrixFormatError("matrix header: dimensions out of range");
    IntMatrix m(static_cast<int>(rows), static_cast<int>(cols));
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) {
            std::string tok;
            if (!(in >> tok))
                throw MatrixFormatError("matrix body: expected " + std::to_string(rows * cols) +
                                        " entries, got " + std::to_string(i * cols + j));
            try {
                m(int(i), int(j)) = Int(tok);
            } catch (const std::invalid_argument&) {
                throw MatrixFormatError("matrix body: bad integer \"" + tok + "\"");
            }
        }
    return m;
}

Rat parse_rational(const std::string& text) {
    if (text.empty()) throw Error("empty rational");
    try {
        if (auto dot = text.find('.'); dot != std::string::npos) {
            std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            size_t frac_len = text.size() - dot - 1;
            if (digits.empty() || frac_len == 0) throw std::invalid_argument(text);
            Int num(digits, 10); // base fixed: "025" must not parse as octal
            Int den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
            Rat r(num, den);
            r.canonicalize();
            return r;
        }
        Rat r(text, 10);
        if (r.get_den() == 0) throw Error("zero denominator in \"" + text + "\"");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw Error("malformed rational \"" + text + "\"");
    }
}

void write_int_matrix(std::ostream& out, const IntMatrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << m(i, j);
        }
        out << '\n';
    }
}

} // namespace cospec
