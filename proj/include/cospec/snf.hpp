#pragma once

#include "cospec/intmat.hpp"

namespace cospec {

// Smith Normal Form decomposition of an integral matrix M:
//
//   U * diag(d) * V = M,  det(U) = +-1,  det(V) = +-1,  d[i] | d[i+1],  d[i] >= 0.
//
// Zero invariant factors sort to the end. Uinv and Vinv are maintained
// alongside the transforms; the last column of Vinv spans the mod-p^k kernel
// of M under the hypotheses of kernel_mod_prime_power().
struct SnfResult {
    std::vector<Int> d;
    IntMatrix U, V;
    IntMatrix Uinv, Vinv;
};

SnfResult snf(const IntMatrix& m);

// Rank of M over F_p, by Gaussian elimination mod p. Equals the number of
// invariant factors of M not divisible by p. Throws PreconditionViolated if
// p is not prime.
int rank_mod_p(const IntMatrix& m, const Int& p);

// The fixed vector w of the one-dimensional solution module of
// M v = 0 (mod p^k): w != 0 (mod p), M w = 0 (mod p^k), and every solution
// is a scalar multiple of w over Z/p^k.
//
// Requires M square and full rank over Q, p^k | d_n(M), rank_p(M) = n-1;
// throws PreconditionViolated otherwise. The result is canonicalized so that
// its first entry not divisible by p equals 1.
std::vector<Int> kernel_mod_prime_power(const IntMatrix& m, const Int& p, unsigned k);

} // namespace cospec
