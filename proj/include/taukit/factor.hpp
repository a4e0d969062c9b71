#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "taukit/bigint.hpp"

namespace taukit {

// Effort cap for factorization. One rho round is a bounded batch of
// Pollard–Brent iterations (see kRhoItersPerRound); the default budget
// corresponds to roughly 1e9 modular multiplications.
struct FactorBudget {
    std::uint64_t trial_limit = 1'000'000;
    std::uint64_t rho_rounds = 30'000;
};

inline constexpr std::uint64_t kRhoItersPerRound = 1u << 15;

// Largest prime factor report. When complete is false the budget ran out
// with a composite cofactor left over; value is then the largest prime
// certified so far (0 if none was found).
struct PFResult {
    BigInt value;
    bool complete = false;
};

struct Factorization {
    std::vector<std::pair<BigInt, unsigned>> factors;  // ascending primes
    BigInt cofactor = 1;                               // composite leftover, 1 when complete
    bool complete = true;
};

// Factor |x|. x = 0 is a domain error; |x| = 1 yields an empty factorization.
Factorization factorize(const BigInt& x, const FactorBudget& budget = {});

// Largest prime factor of |x|; domain error for |x| <= 1.
PFResult largest_prime_factor(const BigInt& x, const FactorBudget& budget = {});

// Convenience: P(|x|) as above but throws if the budget was exhausted.
BigInt largest_prime_factor_exact(const BigInt& x, const FactorBudget& budget = {});

}  // namespace taukit
