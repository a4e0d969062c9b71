#pragma once

#include <cstdint>
#include <vector>

#include "taukit/bigint.hpp"

namespace taukit {

// All primes <= limit, ascending.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

// Shared read-only prime table (grown on demand, never shrunk).
const std::vector<std::uint32_t>& prime_table(std::uint32_t at_least);

// Deterministic Miller–Rabin, valid for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

// BPSW-style probable-prime test for arbitrary-size integers (exact below 2^64).
bool is_probable_prime(const BigInt& n);

}  // namespace taukit
