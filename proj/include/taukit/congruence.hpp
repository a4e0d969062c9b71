#pragma once

#include <string>
#include <vector>

#include "taukit/bigint.hpp"
#include "taukit/qexpansion.hpp"

namespace taukit {

// The classical tau congruence families, named by the prime they live at.
enum class CongruenceFamily { MOD2, MOD3, MOD5, MOD7, MOD23, MOD691 };

const char* family_name(CongruenceFamily f);

// Whether the family's case split covers n at all (MOD2 needs n odd, MOD3
// needs 3 coprime to n, MOD5 needs 5 coprime to n, MOD23 needs n a prime
// other than 23; MOD7 and MOD691 cover every n >= 1).
bool congruence_applicable(CongruenceFamily f, const BigInt& n);

struct PredictedResidue {
    BigInt modulus;
    BigInt residue;  // normalized to [0, modulus)
};

// Right-hand side of the congruence for n; throws std::domain_error when the
// case split excludes n.
PredictedResidue predicted_residue(CongruenceFamily f, const BigInt& n);

struct CongruenceViolation {
    CongruenceFamily family;
    BigInt n;
};

// Checks every applicable family at every n <= n_max against the table.
std::vector<CongruenceViolation> verify_congruences(std::size_t n_max, const QExpansion& table);

// Non-divisibility facts for tau(p^2): 7 (p != 7), 5 (p != 5) and 9 (p != 3)
// never divide it; inapplicable clauses are skipped.
bool taup2_nondivisibility(const BigInt& p, const BigInt& tau_p2);

}  // namespace taukit
