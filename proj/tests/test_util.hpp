#pragma once

// Shared helpers for the test suites: seeded generators and the independent
// oracles (cofactor determinant, cofactor characteristic polynomial,
// permutation-enumeration isomorphism, unit-pivot modular solver). The
// oracles deliberately avoid the library's elimination code paths.

#include "cospec/graph.hpp"
#include "cospec/intmat.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace testutil {

using cospec::Graph;
using cospec::Int;
using cospec::IntMatrix;

inline uint64_t rand_below(cospec::SplitMix64& rng, uint64_t bound) {
    return rng.next() % bound;
}

inline IntMatrix random_int_matrix(cospec::SplitMix64& rng, int n, long lo, long hi) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = long(rand_below(rng, uint64_t(hi - lo + 1))) + lo;
    return m;
}

inline std::vector<int> random_permutation(cospec::SplitMix64& rng, int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[int(rand_below(rng, uint64_t(i + 1)))]);
    return perm;
}

// Determinant by cofactor expansion, memoized over column subsets: expands
// along rows using only additions and multiplications, no division.
inline Int cofactor_det(const IntMatrix& m) {
    const int n = m.rows();
    if (n == 0) return 1;
    // minor_of[mask] = det of the top-|mask| rows restricted to columns in mask
    std::vector<Int> minor_of(size_t(1) << n);
    minor_of[0] = 1;
    for (uint64_t mask = 1; mask < (uint64_t(1) << n); ++mask) {
        const int row = std::popcount(mask) - 1;
        Int acc = 0;
        int sign = row % 2 == 0 ? 1 : -1; // expanding along the block's last row
        for (int col = 0; col < n; ++col) {
            if (!(mask >> col & 1)) continue;
            acc += sign * m(row, col) * minor_of[mask & ~(uint64_t(1) << col)];
            sign = -sign;
        }
        minor_of[mask] = acc;
    }
    return minor_of[(uint64_t(1) << n) - 1];
}

// Polynomials over Z, ascending powers.
using Poly = std::vector<Int>;

inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// char poly det(xI - M) by recursive cofactor expansion over Z[x];
// returns coefficients highest power first to match cospec::char_poly.
inline Poly cofactor_char_poly(const IntMatrix& m) {
    const int n = m.rows();
    std::vector<int> cols(n);
    std::iota(cols.begin(), cols.end(), 0);

    // entry (i, j) of xI - M as a degree <= 1 polynomial
    auto entry = [&](int i, int j) -> Poly {
        Poly p{-m(i, j)};
        if (i == j) p.push_back(1);
        return p;
    };

    std::function<Poly(int, std::vector<int>)> expand = [&](int row,
                                                            std::vector<int> cs) -> Poly {
        if (cs.empty()) return Poly{1};
        Poly acc;
        for (size_t t = 0; t < cs.size(); ++t) {
            std::vector<int> rest;
            for (size_t u = 0; u < cs.size(); ++u)
                if (u != t) rest.push_back(cs[u]);
            Poly term = poly_mul(entry(row, cs[t]), expand(row + 1, rest));
            if (t % 2 == 1)
                for (Int& c : term) c = -c;
            acc = poly_add(acc, term);
        }
        return acc;
    };

    Poly asc = expand(0, cols);
    return Poly(asc.rbegin(), asc.rend());
}

// isomorphism by brute-force permutation enumeration
inline bool perm_isomorphic(const Graph& g, const Graph& h) {
    const int n = g.order();
    if (h.order() != n || g.edge_count() != h.edge_count()) return false;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool match = true;
        for (int i = 0; i < n && match; ++i)
            for (int j = i + 1; j < n && match; ++j)
                if (g.adjacent(i, j) != h.adjacent(perm[i], perm[j])) match = false;
        if (match) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Homogeneous solutions of M v = 0 (mod p^k) by unit-pivot Gauss-Jordan
// over Z/p^k: all n-1 pivots are units mod p (possible when rank_p = n-1),
// the free variable is set to t. Independent of the SNF machinery.
inline std::vector<Int> unit_pivot_kernel_solution(const IntMatrix& m, const Int& p,
                                                   unsigned k, const Int& t) {
    const int n = m.rows();
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
    IntMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            mpz_mod(a(i, j).get_mpz_t(), m(i, j).get_mpz_t(), pk.get_mpz_t());

    std::vector<bool> row_used(n, false), col_used(n, false);
    std::vector<std::pair<int, int>> pivots;
    for (int step = 0; step < n - 1; ++step) {
        int pi = -1, pj = -1;
        for (int i = 0; i < n && pi < 0; ++i) {
            if (row_used[i]) continue;
            for (int j = 0; j < n; ++j) {
                if (col_used[j]) continue;
                if (a(i, j) % p != 0) { pi = i; pj = j; break; }
            }
        }
        if (pi < 0) throw std::runtime_error("unit_pivot_kernel_solution: no unit pivot");
        Int inv;
        mpz_invert(inv.get_mpz_t(), a(pi, pj).get_mpz_t(), pk.get_mpz_t());
        for (int j = 0; j < n; ++j) {
            a(pi, j) = a(pi, j) * inv % pk;
        }
        for (int i = 0; i < n; ++i) {
            if (i == pi || a(i, pj) == 0) continue;
            Int f = a(i, pj);
            for (int j = 0; j < n; ++j) {
                a(i, j) -= f * a(pi, j);
                mpz_mod(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), pk.get_mpz_t());
            }
        }
        row_used[pi] = true;
        col_used[pj] = true;
        pivots.emplace_back(pi, pj);
    }
    int free_col = -1;
    for (int j = 0; j < n; ++j)
        if (!col_used[j]) free_col = j;

    std::vector<Int> v(n);
    v[free_col] = t % pk;
    for (auto [pi, pj] : pivots) {
        Int val = -(a(pi, free_col) * v[free_col]);
        mpz_mod(v[pj].get_mpz_t(), val.get_mpz_t(), pk.get_mpz_t());
    }
    return v;
}

} // namespace testutil
