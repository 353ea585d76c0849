#pragma once

#include "cospec/intmat.hpp"

#include <cstdint>
#include <map>

namespace cospec {

// Prime factorization with an explicit completeness flag. When the rho stage
// gives up within its iteration budget, `complete` is false and `cofactor`
// holds the unfactored part (a composite with no prime factor below the
// trial-division bound); the entries in `factors` are still genuine primes.
struct Factorization {
    std::map<Int, unsigned> factors;
    bool complete = true;
    Int cofactor = 1;

    Int reassembled() const; // cofactor * prod p^e
};

// Miller-Rabin. Deterministic for n < 2^64 (fixed witness set that is exact
// in that range); 25 fixed witnesses above, so the answer is still a pure
// function of n.
bool is_probable_prime(const Int& n);

inline constexpr uint64_t kTrialDivisionBound = 1'000'000;
inline constexpr uint64_t kDefaultRhoIterationCap = 1u << 26;

Factorization factorize(const Int& x, uint64_t rho_iteration_cap = kDefaultRhoIterationCap);

} // namespace cospec
