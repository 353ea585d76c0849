#pragma once

#include "cospec/graph.hpp"
#include "cospec/intmat.hpp"

#include <vector>

namespace cospec {

// W(G): columns e, Ae, ..., A^(n-1)e.
IntMatrix walk_matrix(const Graph& g);

// det(W(G)) != 0
bool is_controllable(const Graph& g);

// M(G) = sum over j of c_2j * A^(ceil(n/2) - j), j = 0..floor(n/2), with
// c_0 = 1 and c_i the characteristic polynomial coefficients of A(G).
// M(G)e is always even; violation throws VerificationFailed.
IntMatrix m_matrix(const Graph& g);

// Compressed walk matrix, square:
//   [ e, Ae, ..., A^(ceil(n/2)-1)e | Me/2, AMe/2, ..., A^(floor(n/2)-1)Me/2 ]
// The halved block is exact because M(G)e is even and A preserves evenness.
IntMatrix w_hat(const Graph& g);

// Exact stand-in for the generalized spectrum: integer characteristic
// polynomials of A(G) and A of the complement, highest power first.
struct SpectralFingerprint {
    std::vector<Int> phi_g;
    std::vector<Int> phi_gc;
    bool operator==(const SpectralFingerprint&) const = default;
};

SpectralFingerprint fingerprint(const Graph& g);

struct FnClassification {
    bool controllable = false;
    std::vector<Int> d;   // invariant factors of W(G)
    Int d_mid = 0;        // d at 1-based index ceil(n/2), n >= 2
    Int d_penult = 0;     // d at 1-based index n-1, n >= 2
    bool in_fn = false;   // controllable && d_mid == 1 && d_penult == 2
    bool degenerate = false; // n < 2: d_(n-1) is undefined, never in F_n
};

FnClassification classify_fn(const Graph& g);

} // namespace cospec
