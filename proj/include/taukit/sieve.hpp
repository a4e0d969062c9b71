#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "taukit/bigint.hpp"
#include "taukit/eigendata.hpp"

namespace taukit {

// Which exponential Diophantine family the level/curve recipes target:
//   TAU_P2 : tau(p^2) = kappa * q^b   (degree-2 Hecke relation)
//   TAU_P4 : tau(p^4) = kappa * q^b   (degree-4 relation)
//   TAU_P3 : smoothness analysis of tau(p^3) (fixed levels, no (kappa,q))
enum class SieveKind { TAU_P2, TAU_P4, TAU_P3 };

struct SieveProblem {
    SieveKind kind = SieveKind::TAU_P2;
    BigInt kappa = 1;
    std::uint32_t q = 0;       // odd prime
    std::uint32_t M = 396;     // residue modulus, 22 | M
    std::vector<std::uint32_t> L;  // auxiliary primes: coprimality + ord_ell(q) | M
    long level_with_q = 0;     // newform level when the exponent is not divisible by 11
    long level_without_q = 0;  // newform level when it is
};

// Validates the (kind, kappa, q, M) constraints, derives both admissible
// newform levels, and computes L = {3 <= ell < ell_bound prime : ell coprime
// to 2*11*kappa*q (and 5 for TAU_P4), ord_ell(q) | M}.
// TAU_P3 carries no (kappa, q) parameters and is rejected here.
SieveProblem make_sieve_problem(SieveKind kind, const BigInt& kappa, std::uint32_t q,
                                std::uint32_t M = 396, std::uint32_t ell_bound = 200);

// Membership bitmap over exponent residues beta in [0, M).
using ResidueSet = std::vector<bool>;

struct SieveResult {
    ResidueSet H1, H3;
    bool empty() const;  // true iff both survivor sets are empty
};

// Multiplicative order of a modulo n (requires gcd(a, n) = 1, n > 1).
std::uint32_t multiplicative_order(std::uint32_t a, std::uint32_t n);

// The admissible (s, t) pairs over F_ell for one reduction kind: the
// nonsingularity locus of the associated curve family intersected with the
// residue constraints satisfied by (p, tau(p)) at ell in {3, 5, 7, 23}.
std::vector<std::pair<std::uint32_t, std::uint32_t>> build_B(std::uint32_t ell, SieveKind kind);

// D_{ell,j}(f): the image values kappa*q^b can take modulo ell, given that
// the curve trace at every admissible (s, t) must match an eigenvalue of f
// modulo a prime above 11.  Returned as a membership bitmap over residues.
// TAU_P3 has no image map and is rejected.
std::vector<bool> compute_D(const NewformEigenData& f, std::uint32_t ell, int j, SieveKind kind);

// Full residue sieve for one newform: builds the mod-4 classes E_j, splits
// by the 11 | beta condition according to which of the two admissible levels
// f lives at, then intersects the mod-ell constraints over ell in L.
SieveResult run_sieve(const SieveProblem& problem, const NewformEigenData& f);

// For a rational form with good reduction at q: whether +-(q+1) = a_q can
// hold modulo 11.  A surviving exponent class needs this to be true; false
// closes the case.
bool reduction_trace_check(const NewformEigenData& f, std::uint32_t q);

// The surviving (s, t) pairs per auxiliary prime for the tau(p^3) analysis.
// A newform is eliminated as soon as one of the returned sets is empty.
std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>> tau_p3_survivors(
    const NewformEigenData& f, const std::vector<std::uint32_t>& Ls = {3, 7, 13, 23});

}  // namespace taukit
