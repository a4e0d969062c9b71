#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "taukit/bigint.hpp"

namespace taukit {

// Error raised when a required Hecke eigenvalue is not available.
class MissingEigenvalueError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Integer a-invariants of a rational curve model (a1, a2, a3, a4, a6).
using CurveModel = std::array<long, 5>;

// Eigenvalue data of one conjugacy class of weight-2 newforms: for each
// listed prime ell, the monic integer characteristic polynomial of the
// Hecke eigenvalue c_ell over Q, in ascending-power order.  Rational
// classes may instead (or additionally) carry a curve model, in which
// case eigenvalues are obtained by point counting.
struct NewformEigenData {
    long level = 0;
    std::string label;
    int degree = 0;
    std::map<std::uint32_t, std::vector<BigInt>> charpolys;
    std::optional<CurveModel> curve;

    bool rational() const { return degree == 1; }

    // True when an eigenvalue at ell can be produced (explicit data, or a
    // curve model with good reduction at ell).
    bool has_eigenvalue(std::uint32_t ell) const;

    // Trace of Frobenius of the curve model at a prime of good reduction.
    // Throws MissingEigenvalueError without a model or at a bad prime.
    int curve_ap(std::uint32_t ell) const;

    // Characteristic polynomial of c_ell (ascending, monic, degree+1
    // coefficients); falls back to (x - a_ell) from the curve model.
    std::vector<BigInt> charpoly_at(std::uint32_t ell) const;

    // Whether 11 divides Norm(a - c_ell), evaluated as charpoly_ell(a).
    bool norm_divisible_11(std::uint32_t ell, long a) const;
};

class EigendataParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class EigendataValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parses a line-oriented eigenvalue stream.  Two record kinds:
//   NEWFORM <level> <label> <degree>   followed by lines
//   AP <ell> <c0> <c1> ... <c_{degree-1}> 1   (monic, ascending)
//   CURVE <level> <label> <a1> <a2> <a3> <a4> <a6>
// Records are separated by blank lines (a new header also ends the
// previous record).  Every record is validated: charpolys must be monic
// of the stated degree and all real roots must lie in [-2*sqrt(ell),
// 2*sqrt(ell)] (exact Sturm-sequence check at a rational bound).
// Parse errors carry the 1-based line number; validation errors name the
// offending (label, ell).
std::vector<NewformEigenData> load_eigendata(std::istream& in);
std::vector<NewformEigenData> load_eigendata_file(const std::string& path);

// Number of real roots of a nonzero integer polynomial (ascending
// coefficients) in the open interval (lo, hi], computed exactly via Sturm
// sequences over Q.
int sturm_root_count(const std::vector<BigInt>& poly, const Rational& lo, const Rational& hi);

// True when all real roots of the monic integer polynomial lie within
// [-bound, bound] where bound is just above 2*sqrt(ell).
bool ramanujan_bound_holds(const std::vector<BigInt>& poly, std::uint32_t ell);

}  // namespace taukit
