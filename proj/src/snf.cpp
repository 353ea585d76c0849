#include "cospec/snf.hpp"

#include "cospec/errors.hpp"
#include "cospec/factor.hpp"

#include <algorithm>
#include <utility>

namespace cospec {

namespace {

// Working state for the elimination. Row operations on S are mirrored on U
// (inverse op, on columns) and Uinv (same op, on rows) so that
// U * S * V == M and U * Uinv == I stay true throughout; column operations
// are mirrored on V / Vinv the same way.
struct Elim {
    IntMatrix S, U, Uinv, V, Vinv;

    explicit Elim(const IntMatrix& m)
        : S(m),
          U(IntMatrix::identity(m.rows())),
          Uinv(IntMatrix::identity(m.rows())),
          V(IntMatrix::identity(m.cols())),
          Vinv(IntMatrix::identity(m.cols())) {}

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < S.cols(); ++c) swap(S(i, c), S(j, c));
        for (int r = 0; r < U.rows(); ++r) swap(U(r, i), U(r, j));
        for (int c = 0; c < Uinv.cols(); ++c) swap(Uinv(i, c), Uinv(j, c));
    }

    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < S.rows(); ++r) swap(S(r, i), S(r, j));
        for (int c = 0; c < V.cols(); ++c) swap(V(i, c), V(j, c));
        for (int r = 0; r < Vinv.rows(); ++r) swap(Vinv(r, i), Vinv(r, j));
    }

    void negate_row(int i) {
        for (int c = 0; c < S.cols(); ++c) S(i, c) = -S(i, c);
        for (int r = 0; r < U.rows(); ++r) U(r, i) = -U(r, i);
        for (int c = 0; c < Uinv.cols(); ++c) Uinv(i, c) = -Uinv(i, c);
    }

    // row_i += f * row_j on S; E^-1 subtracts, so U gets col_j -= f * col_i.
    void add_row(int i, int j, const Int& f) {
        for (int c = 0; c < S.cols(); ++c) S(i, c) += f * S(j, c);
        for (int r = 0; r < U.rows(); ++r) U(r, j) -= f * U(r, i);
        for (int c = 0; c < Uinv.cols(); ++c) Uinv(i, c) += f * Uinv(j, c);
    }

    void add_col(int i, int j, const Int& f) {
        for (int r = 0; r < S.rows(); ++r) S(r, i) += f * S(r, j);
        for (int c = 0; c < V.cols(); ++c) V(j, c) -= f * V(i, c);
        for (int r = 0; r < Vinv.rows(); ++r) Vinv(r, i) += f * Vinv(r, j);
    }

    // Unimodular 2x2 combination replacing (S row i, S row j) by
    // (x*ri + y*rj, -(b/g)*ri + (a/g)*rj) where x*a + y*b = g = gcd(a, b),
    // a = S(i,col), b = S(j,col). Afterwards S(i,col) = g, S(j,col) = 0.
    void gcd_rows(int i, int j, int col) {
        Int a = S(i, col), b = S(j, col), g, x, y;
        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        Int ag = a / g, bg = b / g;
        for (int c = 0; c < S.cols(); ++c) {
            Int si = S(i, c), sj = S(j, c);
            S(i, c) = x * si + y * sj;
            S(j, c) = ag * sj - bg * si;
        }
        // E = [[x, y], [-b/g, a/g]], E^-1 = [[a/g, -y], [b/g, x]]
        for (int r = 0; r < U.rows(); ++r) {
            Int ui = U(r, i), uj = U(r, j);
            U(r, i) = ui * ag + uj * bg;
            U(r, j) = uj * x - ui * y;
        }
        for (int c = 0; c < Uinv.cols(); ++c) {
            Int vi = Uinv(i, c), vj = Uinv(j, c);
            Uinv(i, c) = x * vi + y * vj;
            Uinv(j, c) = ag * vj - bg * vi;
        }
    }

    void gcd_cols(int i, int j, int row) {
        Int a = S(row, i), b = S(row, j), g, x, y;
        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        Int ag = a / g, bg = b / g;
        for (int r = 0; r < S.rows(); ++r) {
            Int si = S(r, i), sj = S(r, j);
            S(r, i) = x * si + y * sj;
            S(r, j) = ag * sj - bg * si;
        }
        for (int c = 0; c < V.cols(); ++c) {
            Int vi = V(i, c), vj = V(j, c);
            V(i, c) = ag * vi + bg * vj;
            V(j, c) = x * vj - y * vi;
        }
        for (int r = 0; r < Vinv.rows(); ++r) {
            Int vi = Vinv(r, i), vj = Vinv(r, j);
            Vinv(r, i) = x * vi + y * vj;
            Vinv(r, j) = ag * vj - bg * vi;
        }
    }
};

} // namespace

SnfResult snf(const IntMatrix& m) {
    const int rows = m.rows(), cols = m.cols();
    const int nd = std::min(rows, cols);
    Elim e(m);

    for (int t = 0; t < nd; ++t) {
        // smallest nonzero |entry| in the remaining block as pivot
        int pi = -1, pj = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (e.S(i, j) == 0) continue;
                if (pi < 0 ||
                    mpz_cmpabs(e.S(i, j).get_mpz_t(), e.S(pi, pj).get_mpz_t()) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break; // remaining block is zero
        e.swap_rows(t, pi);
        e.swap_cols(t, pj);

        for (;;) {
            // clear column t, then row t; column ops can refill the column,
            // so iterate until both are clear
            bool touched = false;
            for (int i = t + 1; i < rows; ++i) {
                if (e.S(i, t) == 0) continue;
                Int r = e.S(i, t) % e.S(t, t);
                if (r == 0)
                    e.add_row(i, t, -(e.S(i, t) / e.S(t, t)));
                else
                    e.gcd_rows(t, i, t);
                touched = true;
            }
            for (int j = t + 1; j < cols; ++j) {
                if (e.S(t, j) == 0) continue;
                Int r = e.S(t, j) % e.S(t, t);
                if (r == 0)
                    e.add_col(j, t, -(e.S(t, j) / e.S(t, t)));
                else
                    e.gcd_cols(t, j, t);
                touched = true;
            }
            if (touched) continue;

            // ensure the pivot divides the rest of the block, so the
            // divisibility chain holds without a fixup pass
            int bi = -1, bj = -1;
            for (int i = t + 1; i < rows && bi < 0; ++i)
                for (int j = t + 1; j < cols; ++j)
                    if (e.S(i, j) % e.S(t, t) != 0) { bi = i; bj = j; break; }
            if (bi < 0) break;
            e.add_row(t, bi, 1);
        }
        if (e.S(t, t) < 0) e.negate_row(t);
    }

    SnfResult r;
    r.d.resize(nd);
    for (int i = 0; i < nd; ++i) r.d[i] = e.S(i, i);
    r.U = std::move(e.U);
    r.Uinv = std::move(e.Uinv);
    r.V = std::move(e.V);
    r.Vinv = std::move(e.Vinv);
    return r;
}

int rank_mod_p(const IntMatrix& m, const Int& p) {
    if (!is_probable_prime(p)) throw PreconditionViolated("rank_mod_p: p is not prime");
    const int rows = m.rows(), cols = m.cols();
    IntMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            mpz_mod(a(i, j).get_mpz_t(), m(i, j).get_mpz_t(), p.get_mpz_t());
        }
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int i = rank; i < rows; ++i)
            if (a(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = col; j < cols; ++j) swap(a(rank, j), a(piv, j));
        Int inv;
        mpz_invert(inv.get_mpz_t(), a(rank, col).get_mpz_t(), p.get_mpz_t());
        for (int i = rank + 1; i < rows; ++i) {
            if (a(i, col) == 0) continue;
            Int f = a(i, col) * inv % p;
            for (int j = col; j < cols; ++j) {
                a(i, j) -= f * a(rank, j);
                mpz_mod(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), p.get_mpz_t());
            }
        }
        ++rank;
    }
    return rank;
}

std::vector<Int> kernel_mod_prime_power(const IntMatrix& m, const Int& p, unsigned k) {
    if (m.rows() != m.cols())
        throw PreconditionViolated("kernel_mod_prime_power: matrix not square");
    if (k < 1) throw PreconditionViolated("kernel_mod_prime_power: k must be >= 1");
    const int n = m.rows();
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);

    SnfResult s = snf(m);
    for (const Int& di : s.d)
        if (di == 0) throw PreconditionViolated("kernel_mod_prime_power: matrix is singular");
    if (s.d[n - 1] % pk != 0)
        throw PreconditionViolated("kernel_mod_prime_power: p^k does not divide d_n");
    int nondiv = 0;
    for (const Int& di : s.d)
        if (di % p != 0) ++nondiv;
    if (nondiv != n - 1)
        throw PreconditionViolated("kernel_mod_prime_power: rank_p(M) != n-1");

    // Solutions of (diag d) v' = 0 mod p^k are multiples of e_n, so the
    // solution module of M v = 0 is spanned by the last column of V^-1.
    std::vector<Int> w(n);
    for (int i = 0; i < n; ++i)
        mpz_mod(w[i].get_mpz_t(), s.Vinv(i, n - 1).get_mpz_t(), pk.get_mpz_t());

    // canonical representative: first entry coprime to p becomes 1
    int lead = -1;
    for (int i = 0; i < n; ++i)
        if (w[i] % p != 0) { lead = i; break; }
    if (lead < 0) throw VerificationFailed("kernel_mod_prime_power: generator vanishes mod p");
    Int inv;
    mpz_invert(inv.get_mpz_t(), w[lead].get_mpz_t(), pk.get_mpz_t());
    for (int i = 0; i < n; ++i) {
        w[i] *= inv;
        mpz_mod(w[i].get_mpz_t(), w[i].get_mpz_t(), pk.get_mpz_t());
    }
    return w;
}

} // namespace cospec
