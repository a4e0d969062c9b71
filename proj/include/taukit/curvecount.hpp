#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace taukit {

// Elliptic curve over F_ell in general Weierstrass form
//   Y^2 + a1*X*Y + a3*Y = X^3 + a2*X^2 + a4*X + a6
// with coefficients reduced modulo an odd prime ell.  The residue-class
// sieves only ever populate a2 and a4 (curves of the shape
// Y^2 = X*(X^2 + a2*X + a4)), but bundled curve models carry all five
// invariants, so the counter accepts the general form.
struct CurveModEll {
    std::uint32_t ell = 0;               // odd prime field size
    std::array<std::uint32_t, 5> a{};    // a1, a2, a3, a4, a6 reduced mod ell

    // Discriminant of the Weierstrass equation mod ell (standard b2/b4/b6/b8
    // formulas); zero exactly when the curve is singular.
    std::uint32_t discriminant() const;
    bool singular() const { return discriminant() == 0; }
};

// Builds a curve over F_ell from (possibly negative) integer coefficients.
// Throws std::invalid_argument unless ell is an odd prime <= 1000.
CurveModEll make_curve(std::uint32_t ell, std::int64_t a1, std::int64_t a2,
                       std::int64_t a3, std::int64_t a4, std::int64_t a6);

// Quadratic-character lookup table for F_ell: (*this)(x) is 0 for x == 0,
// +1 when x is a nonzero square, -1 otherwise.
class QuadTable {
public:
    explicit QuadTable(std::uint32_t ell);
    std::uint32_t modulus() const { return ell_; }
    int operator()(std::uint32_t x) const { return table_[x]; }

private:
    std::uint32_t ell_;
    std::vector<signed char> table_;
};

// Trace of Frobenius a_ell = ell + 1 - #E(F_ell), computed by a full sweep
// over x with a quadratic-character table lookup on the completed-square
// right-hand side.  Requires a nonsingular curve (throws std::domain_error
// otherwise).  |a_ell| <= 2*sqrt(ell) always holds for the result.
int ap_point_count(const CurveModEll& curve);
int ap_point_count(const CurveModEll& curve, const QuadTable& chi);

}  // namespace taukit
