#include "taukit/curvecount.hpp"

#include <stdexcept>
#include <string>

#include "taukit/primes.hpp"

namespace taukit {

namespace {

std::uint64_t mod_u(std::int64_t v, std::uint32_t m) {
    std::int64_t r = v % static_cast<std::int64_t>(m);
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
}

}  // namespace

std::uint32_t CurveModEll::discriminant() const {
    const std::uint64_t m = ell;
    const std::uint64_t a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
    const std::uint64_t b2 = (a1 * a1 + 4 * a2) % m;
    const std::uint64_t b4 = (2 * a4 + a1 * a3) % m;
    const std::uint64_t b6 = (a3 * a3 + 4 * a6) % m;
    // b8 = a1^2*a6 + 4*a2*a6 - a1*a3*a4 + a2*a3^2 - a4^2  (all mod m)
    std::uint64_t b8 = (a1 * a1 % m) * a6 % m;
    b8 = (b8 + 4 * a2 % m * a6) % m;
    b8 = (b8 + 5 * m * m - a1 * a3 % m * a4 % m) % m;
    b8 = (b8 + a2 * a3 % m * a3) % m;
    b8 = (b8 + m * m - a4 * a4 % m) % m;
    // delta = -b2^2*b8 - 8*b4^3 - 27*b6^2 + 9*b2*b4*b6
    std::uint64_t t1 = b2 * b2 % m * b8 % m;
    std::uint64_t t2 = 8 * (b4 * b4 % m * b4 % m) % m;
    std::uint64_t t3 = 27 * (b6 * b6 % m) % m;
    std::uint64_t t4 = 9 * (b2 * b4 % m) % m * b6 % m;
    std::uint64_t delta = (4 * m + t4 - t1 % m - t2 - t3 % m) % m;
    return static_cast<std::uint32_t>(delta);
}

CurveModEll make_curve(std::uint32_t ell, std::int64_t a1, std::int64_t a2,
                       std::int64_t a3, std::int64_t a4, std::int64_t a6) {
    if (ell < 3 || ell > 1000 || !is_prime_u64(ell))
        throw std::invalid_argument("make_curve: modulus must be an odd prime <= 1000, got " +
                                    std::to_string(ell));
    CurveModEll c;
    c.ell = ell;
    c.a = {static_cast<std::uint32_t>(mod_u(a1, ell)), static_cast<std::uint32_t>(mod_u(a2, ell)),
           static_cast<std::uint32_t>(mod_u(a3, ell)), static_cast<std::uint32_t>(mod_u(a4, ell)),
           static_cast<std::uint32_t>(mod_u(a6, ell))};
    return c;
}

QuadTable::QuadTable(std::uint32_t ell) : ell_(ell), table_(ell, -1) {
    if (ell < 3 || !is_prime_u64(ell))
        throw std::invalid_argument("QuadTable: modulus must be an odd prime");
    table_[0] = 0;
    for (std::uint64_t x = 1; x < ell; ++x) table_[x * x % ell] = 1;
}

int ap_point_count(const CurveModEll& curve, const QuadTable& chi) {
    if (chi.modulus() != curve.ell)
        throw std::invalid_argument("ap_point_count: character table modulus mismatch");
    if (curve.singular()) throw std::domain_error("ap_point_count: singular curve over F_" +
                                                  std::to_string(curve.ell));
    const std::uint64_t m = curve.ell;
    const std::uint64_t a1 = curve.a[0], a2 = curve.a[1], a3 = curve.a[2], a4 = curve.a[3],
                        a6 = curve.a[4];
    // Number of points with abscissa x is 1 + chi(D(x)) where
    // D(x) = (a1*x + a3)^2 + 4*(x^3 + a2*x^2 + a4*x + a6), so
    // a_ell = -sum_x chi(D(x)).
    std::int64_t sum = 0;
    for (std::uint64_t x = 0; x < m; ++x) {
        std::uint64_t lin = (a1 * x + a3) % m;
        std::uint64_t f = ((x * x % m + a2 * x) % m * x + a4 * x) % m;
        f = (f + a6) % m;
        std::uint64_t d = (lin * lin + 4 * f) % m;
        sum += chi(static_cast<std::uint32_t>(d));
    }
    return static_cast<int>(-sum);
}

int ap_point_count(const CurveModEll& curve) {
    QuadTable chi(curve.ell);
    return ap_point_count(curve, chi);
}

}  // namespace taukit
