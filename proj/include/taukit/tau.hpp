#pragma once

#include <optional>

#include "taukit/bigint.hpp"
#include "taukit/qexpansion.hpp"

namespace taukit {

// tau(p^m) from tau(p) via the weight-12 Hecke recurrence
// tau(p^m) = tau(p) tau(p^{m-1}) - p^11 tau(p^{m-2}), tau(1) = 1.
BigInt tau_prime_power(const BigInt& tau_p, const BigInt& p, unsigned m);

// tau(n) for arbitrary n by multiplicativity over the prime factorization.
// Every prime factor of n must lie within table.limit.
BigInt tau(const BigInt& n, const QExpansion& table);

// Sum of v-th powers of the divisors of n, optionally reduced mod `modulus`.
BigInt sigma_pow(const BigInt& n, unsigned v, const std::optional<BigInt>& modulus = std::nullopt);

// n is an odd perfect square (the exact oddness locus of tau).
bool is_odd_square(const BigInt& n);

}  // namespace taukit
