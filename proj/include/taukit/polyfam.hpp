#pragma once

#include "taukit/bivariate.hpp"
#include "taukit/lucas.hpp"
#include "taukit/qexpansion.hpp"

namespace taukit {

// F_0 = 0, F_1 = F_2 = 1, F_3 = -X+Y, F_{m+2} = (-2X+Y) F_m - X^2 F_{m-2};
// homogeneous of degree floor((m-1)/2) for m >= 1.
BivariatePoly f_poly(unsigned m);

// (Z^m - W^m)/(Z - W) for odd m, (Z^m - W^m)/(Z^2 - W^2) for even m,
// expanded as a homogeneous polynomial in (Z, W); H_0 = 0.
BivariatePoly h_expand(unsigned m);

// Moebius product prod_{d | m} F_d^{mu(m/d)}, computed by exact division.
// Degree phi(m)/2; monic in Y once X is set to 1.
BivariatePoly psi_poly(unsigned m);

// Numerical check that the roots of psi_m(1, Y) are exactly
// {4 cos^2(pi j / m) : gcd(j, m) = 1, 1 <= j <= (m-1)/2}, within tol.
bool psi_root_check(unsigned m, double tol);

// Exact counterpart of the root description: x^{phi(m)/2} psi_m(1, (x+1)^2/x)
// equals the m-th cyclotomic polynomial.
bool psi_cyclotomic_check(unsigned m);

// Every coefficient of psi_m bounded by 5^{phi(m)/2} in absolute value.
bool coeff_bound_check(unsigned m);

// tau(p^{m-1}) = tau(p)^eps * F_m(p^11, tau(p)^2), eps = 1 for even m.
bool tau_fm_identity_check(const BigInt& p, unsigned m, const QExpansion& table);

// psi_m(norm, trace^2) equals the Moebius product of Lucas terms
// prod_{d | m} u_d^{mu(m/d)} (exact rational arithmetic, integral result).
bool psi_lucas_identity_check(LucasSeq& seq, unsigned m);

// Necessary condition for q^a to exactly divide a psi_m value at coprime
// arguments: q = +-1 mod m or q^a | m. Domain error for m in {2,3,4,6},
// where the criterion fails.
bool admissible_prime_filter(unsigned m, const BigInt& q, unsigned a);

// Euler phi on machine integers (via trial factorization; desk scale).
unsigned long euler_phi(unsigned long m);

// Dense univariate integer polynomials, ascending coefficients; used for the
// exact cyclotomic cross-check.
using UniPoly = std::vector<BigInt>;
UniPoly uni_mul(const UniPoly& a, const UniPoly& b);
UniPoly uni_divexact(const UniPoly& a, const UniPoly& b);
UniPoly cyclotomic_poly(unsigned m);

}  // namespace taukit
