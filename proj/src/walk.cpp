#include "cospec/walk.hpp"

#include "cospec/errors.hpp"
#include "cospec/snf.hpp"

#include <bit>

namespace cospec {

namespace {

std::vector<Int> apply_adjacency(const Graph& g, const std::vector<Int>& v) {
    const int n = g.order();
    std::vector<Int> r(n);
    for (int i = 0; i < n; ++i) {
        uint64_t row = g.row_bits(i);
        while (row) {
            int j = std::countr_zero(row);
            row &= row - 1;
            r[i] += v[j];
        }
    }
    return r;
}

std::vector<Int> all_ones(int n) { return std::vector<Int>(n, Int(1)); }

} // namespace

IntMatrix walk_matrix(const Graph& g) {
    const int n = g.order();
    IntMatrix w(n, n);
    std::vector<Int> v = all_ones(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) w(i, j) = v[i];
        if (j + 1 < n) v = apply_adjacency(g, v);
    }
    return w;
}

bool is_controllable(const Graph& g) { return det(walk_matrix(g)) != 0; }

IntMatrix m_matrix(const Graph& g) {
    const int n = g.order();
    const std::vector<Int> c = char_poly(adjacency_matrix(g));

    // Horner over A down the even-index coefficients; for odd n one extra
    // multiplication by A lands the trailing term on c_(n-1) A.
    IntMatrix m = IntMatrix::identity(n);
    const IntMatrix a = adjacency_matrix(g);
    for (int j = 1; j <= n / 2; ++j) {
        m = multiply(m, a);
        for (int i = 0; i < n; ++i) m(i, i) += c[2 * j];
    }
    if (n % 2 == 1) m = multiply(m, a);

    std::vector<Int> me = multiply(m, all_ones(n));
    for (const Int& x : me)
        if (x % 2 != 0)
            throw VerificationFailed("m_matrix: M(G)e is not even; arithmetic bug");
    return m;
}

IntMatrix w_hat(const Graph& g) {
    const int n = g.order();
    const int half_up = (n + 1) / 2;  // columns from the plain walk block
    const int half_down = n / 2;      // columns from the halved M block
    IntMatrix w(n, n);

    std::vector<Int> v = all_ones(n);
    for (int j = 0; j < half_up; ++j) {
        for (int i = 0; i < n; ++i) w(i, j) = v[i];
        v = apply_adjacency(g, v);
    }
    if (half_down > 0) {
        std::vector<Int> mv = multiply(m_matrix(g), all_ones(n));
        for (Int& x : mv) x /= 2;
        for (int j = 0; j < half_down; ++j) {
            for (int i = 0; i < n; ++i) w(i, half_up + j) = mv[i];
            if (j + 1 < half_down) mv = apply_adjacency(g, mv);
        }
    }
    return w;
}

SpectralFingerprint fingerprint(const Graph& g) {
    return SpectralFingerprint{char_poly(adjacency_matrix(g)),
                               char_poly(adjacency_matrix(complement(g)))};
}

FnClassification classify_fn(const Graph& g) {
    const int n = g.order();
    FnClassification r;
    r.d = snf(walk_matrix(g)).d;
    r.controllable = r.d[n - 1] != 0;
    if (n < 2) {
        r.degenerate = true;
        return r;
    }
    r.d_mid = r.d[(n + 1) / 2 - 1];
    r.d_penult = r.d[n - 2];
    r.in_fn = r.controllable && r.d_mid == 1 && r.d_penult == 2;
    return r;
}

} // namespace cospec
