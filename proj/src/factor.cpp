#include "cospec/factor.hpp"

#include "cospec/errors.hpp"

#include <vector>

namespace cospec {

namespace {

// Exact above the 2^64 deterministic range too, for every witness tried.
const unsigned kWitnesses[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                               43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, unsigned long s) {
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

// Pollard rho with Brent cycle detection. Returns a nontrivial factor of n
// (n composite, odd, > 1) or 0 when the iteration budget runs out.
Int pollard_rho_brent(const Int& n, uint64_t& budget) {
    for (unsigned long c = 1; budget > 0; ++c) {
        Int y = 2, x, q = 1, g = 1, ys;
        unsigned long r = 1;
        const unsigned long batch = 128;
        while (g == 1 && budget > 0) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            for (unsigned long k = 0; k < r && g == 1 && budget > 0; k += batch) {
                ys = y;
                unsigned long lim = std::min(batch, r - k);
                if (lim > budget) lim = static_cast<unsigned long>(budget);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * (x > y ? x - y : y - x) % n;
                }
                budget -= lim;
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            r *= 2;
        }
        if (g == n) {
            // batched gcd overshot; replay one step at a time
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                Int diff = x > ys ? x - ys : ys - x;
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g != 1 && g != n) return g;
        // cycle found the trivial factor; retry with a different polynomial
    }
    return 0;
}

void factor_recursive(const Int& n, Factorization& out, uint64_t& budget) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out.factors[n];
        return;
    }
    Int g = pollard_rho_brent(n, budget);
    if (g == 0) {
        out.complete = false;
        out.cofactor *= n;
        return;
    }
    factor_recursive(g, out, budget);
    factor_recursive(n / g, out, budget);
}

} // namespace

Int Factorization::reassembled() const {
    Int x = cofactor;
    for (const auto& [p, e] : factors) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        x *= pe;
    }
    return x;
}

bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    for (unsigned w : kWitnesses) {
        if (n == w) return true;
        if (n % w == 0) return false;
    }
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    // the first 12 witnesses decide n < 2^64; run the full set only beyond
    size_t rounds = mpz_sizeinbase(n.get_mpz_t(), 2) <= 64 ? 12 : std::size(kWitnesses);
    for (size_t i = 0; i < rounds; ++i)
        if (!miller_rabin_witness(n, Int(kWitnesses[i]), d, s)) return false;
    return true;
}

Factorization factorize(const Int& x, uint64_t rho_iteration_cap) {
    if (x < 1) throw PreconditionViolated("factorize: input must be >= 1");
    Factorization out;
    Int n = x;

    unsigned long tz = mpz_scan1(n.get_mpz_t(), 0);
    if (n > 1 && tz > 0) {
        out.factors[2] = unsigned(tz);
        mpz_tdiv_q_2exp(n.get_mpz_t(), n.get_mpz_t(), tz);
    }
    for (uint64_t p = 3; p <= kTrialDivisionBound && n > 1; p += 2) {
        if (p * p > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++out.factors[Int(static_cast<unsigned long>(p))];
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    if (n == 1) return out;
    if (n <= kTrialDivisionBound * kTrialDivisionBound || is_probable_prime(n)) {
        // below the square of the trial bound the remainder must be prime
        ++out.factors[n];
        return out;
    }
    uint64_t budget = rho_iteration_cap;
    factor_recursive(n, out, budget);
    return out;
}

} // namespace cospec
