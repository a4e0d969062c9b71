#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "taukit/bigint.hpp"
#include "taukit/bivariate.hpp"

namespace taukit {

// The equation F(x, y) = b * p1^z1 ... ps^zs in integers x, y and z_i >= 0.
// With `either_sign` set the right-hand side may carry either sign (the
// familiar "+-" form); otherwise the sign of b is part of the equation.
// With `coprimality` set solutions must satisfy gcd(x, y, p1...ps) = 1.
struct TMInstance {
    BivariatePoly form;
    BigInt b = 1;
    std::vector<std::uint32_t> primes;  // strictly increasing
    bool coprimality = true;
    bool either_sign = true;
};

// Validates: degree >= 3, b != 0, primes strictly increasing and each prime.
TMInstance make_tm_instance(BivariatePoly form, BigInt b,
                            std::vector<std::uint32_t> primes,
                            bool coprimality = true, bool either_sign = true);

struct TMSolution {
    BigInt x, y;
    std::vector<unsigned> exponents;  // one entry per instance prime
};
bool operator==(const TMSolution& a, const TMSolution& b);
// Lexicographic on (x, y, exponents); the order box_search emits.
bool tm_solution_less(const TMSolution& a, const TMSolution& b);

struct SolutionCheck {
    TMSolution sol;
    BigInt value;              // the form evaluated at (x, y)
    bool equation_ok = false;  // value matches b * prod p^z under the sign rule
    bool coprime_ok = false;   // gcd condition (vacuously true when unset)
    bool x_is_prime_11th_power = false;
    bool ok() const { return equation_ok && coprime_ok; }
};

struct SolutionReport {
    std::vector<SolutionCheck> checks;
    bool all_valid() const;
    bool any_prime_11th_power() const;
};

// Checks every listed solution against the instance. Throws
// std::invalid_argument when an exponent vector does not match the prime
// list in length.
SolutionReport verify_solution_list(const TMInstance& inst,
                                    const std::vector<TMSolution>& sols);

// Exhaustive scan over |x|, |y| <= box, (x, y) != (0, 0), for solutions with
// every exponent <= exp_cap. The x-range is sharded across `threads` workers;
// the result is sorted by tm_solution_less and independent of the thread
// count. Requires box >= 1.
std::vector<TMSolution> box_search(const TMInstance& inst, long box,
                                   unsigned exp_cap, unsigned threads = 1);

// If (x, y) solves the instance with every exponent <= exp_cap, returns the
// solution with its exponent vector attached; otherwise nullopt.
std::optional<TMSolution> attach_exponents(const TMInstance& inst,
                                           const BigInt& x, const BigInt& y,
                                           unsigned exp_cap);

// ---- perfect powers ------------------------------------------------------

// True for 0, 1, -1 and any m^k with k >= 2 (negative inputs need odd k).
// Exact integer k-th-root extraction over 2 <= k <= bit length.
bool is_perfect_power(const BigInt& v);

// The prime p with v = p^11, if one exists.
std::optional<BigInt> prime_11th_root(const BigInt& v);

BigInt fibonacci_number(unsigned long n);  // F_0 = 0, F_1 = 1
BigInt lucas_number(unsigned long n);      // L_0 = 2, L_1 = 1

struct PowerHit {
    unsigned long index = 0;
    BigInt value;
};

struct PowerScanReport {
    unsigned long n_max = 0;
    std::vector<PowerHit> fib_hits;    // perfect powers among F_0..F_n_max
    std::vector<PowerHit> lucas_hits;  // perfect powers among L_0..L_n_max
    bool fib_values_expected = false;    // hit values within {0, 1, 8, 144}
    bool lucas_values_expected = false;  // hit values within {1, 4}
    bool prime_11th_free = false;  // no even-index F_n or any L_n equals p^11
};

// Scans F_n and L_n for 0 <= n <= n_max; requires n_max >= 1.
PowerScanReport fib_lucas_power_scan(unsigned long n_max);

// ---- (q, m) pair enumeration ---------------------------------------------

// All (q, m) with q < q_bound prime, m >= 7 prime and m | (q-1)(q+1),
// ascending in (q, m). Requires q_bound >= 3.
std::vector<std::pair<std::uint32_t, std::uint32_t>> qm_pairs(std::uint32_t q_bound);

// ---- explicit bound calculator -------------------------------------------

// 3^(n(2s+1)+27) * n^(2n(7s+13)+13) * (s+1)^(5n(s+1)+15); needs n >= 3, s >= 1.
BigInt bg_constant(unsigned n, unsigned s);

// Logarithm of
//   c(n,s) * P^N * (log* P)^(ns+2) * (R*h) * (log*(R*h))^2 * (R + s*h + log(H*B))
// with log* t = max(1, log t), evaluated in extended precision. Requires
// n >= 3, s >= 1, positive P, N, class number h and regulator R, H >= 3 and
// B >= e.
double bg_log_bound(unsigned n, unsigned s, double P, unsigned N, double H,
                    double B, double class_number, double regulator);

// ---- bundled instances and solution lists --------------------------------

TMInstance cubic_83_instance();  // -X^3+6X^2Y-5XY^2+Y^3 = +-83^a
std::vector<TMSolution> cubic_83_solutions();  // complete list of 36
TMInstance degree20_83_instance();             // degree-20 form = +-83^a
std::vector<TMSolution> degree20_83_solutions();  // complete list of 10
TMInstance unit_thue_instance();  // degree-11 form = 1 (exact sign, s = 0)
TMInstance cubic_smooth_instance();  // cubic = +-(3,5,...,37 products)
// Sign representatives (X, Y) of the known solutions with a coordinate
// beyond 100; both (X, Y) and (-X, -Y) solve the smooth instance.
std::vector<std::pair<long, long>> cubic_smooth_pairs();  // 16 pairs

// ---- fixture files -------------------------------------------------------

struct TMFixture {
    std::string name;
    TMInstance inst;
    std::vector<TMSolution> sols;
};

std::string format_tm_fixtures(const std::vector<TMFixture>& fixtures);
std::vector<TMFixture> parse_tm_fixtures(std::istream& in);
std::vector<TMFixture> load_tm_fixture_file(const std::string& path);

}  // namespace taukit
