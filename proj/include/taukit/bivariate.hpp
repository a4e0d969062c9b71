#pragma once

#include <string>
#include <vector>

#include "taukit/bigint.hpp"

namespace taukit {

// Homogeneous integer polynomial in two variables, stored densely:
// coeff(i) multiplies X^i Y^(d-i). The zero polynomial has degree 0.
class BivariatePoly {
  public:
    BivariatePoly() : c_(1, BigInt(0)) {}
    explicit BivariatePoly(std::vector<BigInt> coeffs);  // size = degree+1
    static BivariatePoly constant(const BigInt& v) { return BivariatePoly({v}); }

    std::size_t degree() const { return c_.size() - 1; }
    const BigInt& coeff(std::size_t i) const { return c_.at(i); }
    bool is_zero() const;

    BivariatePoly operator*(const BivariatePoly& o) const;
    BivariatePoly operator+(const BivariatePoly& o) const;  // requires equal degree (or a zero side)
    BivariatePoly operator-(const BivariatePoly& o) const;
    BivariatePoly scaled(const BigInt& k) const;
    // multiply by the monomial X^a Y^b
    BivariatePoly shifted(std::size_t a, std::size_t b) const;

    bool operator==(const BivariatePoly& o) const;

    BigInt eval(const BigInt& x, const BigInt& y) const;
    Rational eval(const Rational& x, const Rational& y) const;

    // substitute X -> u, Y -> v for homogeneous u, v of equal degree
    BivariatePoly substitute(const BivariatePoly& u, const BivariatePoly& v) const;

  private:
    std::vector<BigInt> c_;
};

// Exact division in the homogeneous ring; throws std::domain_error when the
// division leaves a remainder or a fractional coefficient.
BivariatePoly exact_div(const BivariatePoly& a, const BivariatePoly& b);
bool divides(const BivariatePoly& a, const BivariatePoly& b);  // a | b?

// Canonical text form: terms in decreasing X-degree, explicit signs, no
// spaces, e.g. "-X^3+6X^2Y-5XY^2+Y^3". Variable names default to X/Y.
std::string to_string(const BivariatePoly& p, const char* xname = "X", const char* yname = "Y");
BivariatePoly parse_poly(const std::string& text);

}  // namespace taukit
