#include <doctest.h>

#include <numeric>

#include "taukit/polyfam.hpp"
#include "taukit/primes.hpp"
#include "taukit/tau.hpp"

using namespace taukit;

// Degree-20 Thue form for the (83,41) campaign, transcribed verbatim.
static const char* kPsi41 =
    "X^20-210X^19Y+7315X^18Y^2-100947X^17Y^3+735471X^16Y^4-3268760X^15Y^5"
    "+9657700X^14Y^6-20058300X^13Y^7+30421755X^12Y^8-34597290X^11Y^9"
    "+30045015X^10Y^10-20160075X^9Y^11+10518300X^8Y^12-4272048X^7Y^13"
    "+1344904X^6Y^14-324632X^5Y^15+58905X^4Y^16-7770X^3Y^17+703X^2Y^18"
    "-39XY^19+Y^20";

TEST_CASE("poly printer and parser round-trip") {
    BivariatePoly f7 = f_poly(7);
    CHECK(to_string(f7) == "-X^3+6X^2Y-5XY^2+Y^3");
    CHECK(parse_poly(to_string(f7)) == f7);
    CHECK(parse_poly("-X+Y") == f_poly(3));
    CHECK(to_string(BivariatePoly::constant(BigInt(1))) == "1");
    CHECK(to_string(BivariatePoly()) == "0");
    CHECK_THROWS_AS(parse_poly("X+Y^2"), std::invalid_argument);  // not homogeneous
    CHECK_THROWS_AS(parse_poly(""), std::invalid_argument);
    BivariatePoly p41 = parse_poly(kPsi41);
    CHECK(to_string(p41) == kPsi41);
}

TEST_CASE("F family worked values and degrees") {
    CHECK(f_poly(0).is_zero());
    CHECK(f_poly(1) == BivariatePoly::constant(BigInt(1)));
    CHECK(f_poly(2) == BivariatePoly::constant(BigInt(1)));
    CHECK(to_string(f_poly(3)) == "-X+Y");
    CHECK(to_string(f_poly(5)) == "X^2-3XY+Y^2");
    CHECK(to_string(f_poly(7)) == "-X^3+6X^2Y-5XY^2+Y^3");
    for (unsigned m = 1; m <= 60; ++m) {
        CAPTURE(m);
        CHECK(f_poly(m).degree() == (m - 1) / 2);
    }
    // divisibility F_n | F_m for n | m
    for (unsigned m = 2; m <= 60; ++m)
        for (unsigned n = 2; n < m; ++n)
            if (m % n == 0) {
                CAPTURE(m);
                CAPTURE(n);
                CHECK(divides(f_poly(n), f_poly(m)));
            }
}

TEST_CASE("H expansion and the F/H identity") {
    CHECK(to_string(h_expand(3), "Z", "W") == "Z^2+ZW+W^2");
    CHECK(h_expand(2) == BivariatePoly::constant(BigInt(1)));
    CHECK(to_string(h_expand(5), "Z", "W") == "Z^4+Z^3W+Z^2W^2+ZW^3+W^4");
    const BivariatePoly zw = parse_poly("XY");            // Z*W in (Z,W)
    const BivariatePoly zpw2 = parse_poly("X^2+2XY+Y^2");  // (Z+W)^2
    for (unsigned m = 0; m <= 24; ++m) {
        CAPTURE(m);
        CHECK(f_poly(m).substitute(zw, zpw2) == h_expand(m));
    }
}

TEST_CASE("psi family worked values") {
    CHECK(to_string(psi_poly(3)) == "-X+Y");
    CHECK(to_string(psi_poly(4)) == "-2X+Y");
    CHECK(to_string(psi_poly(6)) == "-3X+Y");
    BivariatePoly p41 = psi_poly(41);
    CHECK(p41.degree() == 20);
    CHECK(p41 == parse_poly(kPsi41));
    // product of psi over divisors reassembles F
    for (unsigned m = 3; m <= 60; ++m) {
        BivariatePoly prod = BivariatePoly::constant(BigInt(1));
        for (unsigned d = 1; d <= m; ++d) {
            if (m % d) continue;
            if (d < 3)
                prod = prod * f_poly(d);  // psi_1, psi_2 correspond to F_1, F_2 = 1
            else
                prod = prod * psi_poly(d);
        }
        CAPTURE(m);
        CHECK(prod == f_poly(m));
    }
}

TEST_CASE("psi divisibility direction is the empirical one") {
    // the naive reading psi_m | psi_n for m | n fails immediately ...
    CHECK_FALSE(divides(psi_poly(3), psi_poly(6)));
    // ... while psi_m | F_n holds whenever m | n
    for (unsigned n = 3; n <= 40; ++n)
        for (unsigned m = 3; m <= n; ++m)
            if (n % m == 0) {
                CAPTURE(m);
                CAPTURE(n);
                CHECK(divides(psi_poly(m), f_poly(n)));
            }
}

TEST_CASE("numerical and exact root checks") {
    CHECK(psi_root_check(5, 1e-9));
    CHECK(psi_root_check(4, 1e-9));
    CHECK(psi_root_check(12, 1e-9));
    CHECK(psi_root_check(41, 1e-9));
    for (unsigned m = 3; m <= 50; ++m) {
        CAPTURE(m);
        CHECK(psi_root_check(m, 1e-9));
        CHECK(psi_cyclotomic_check(m));
    }
    CHECK(psi_cyclotomic_check(100));
}

TEST_CASE("coefficient bound") {
    CHECK(coeff_bound_check(41));
    CHECK(coeff_bound_check(3));
    CHECK(coeff_bound_check(100));
    BigInt maxc(0);
    BivariatePoly p41 = psi_poly(41);
    for (std::size_t i = 0; i <= p41.degree(); ++i) maxc = std::max(maxc, BigInt(abs(p41.coeff(i))));
    CHECK(maxc == 34597290);
    CHECK(maxc <= bi_pow(5, 20));
}

TEST_CASE("tau / F identity") {
    QExpansion q = delta_qexpansion(30);
    CHECK(tau_fm_identity_check(BigInt(2), 4, q));
    CHECK(tau_fm_identity_check(BigInt(3), 1, q));
    CHECK(tau_fm_identity_check(BigInt(5), 7, q));
    for (unsigned long p : {2, 3, 5, 7, 11, 13}) {
        for (unsigned m = 1; m <= 12; ++m) {
            CAPTURE(p);
            CAPTURE(m);
            CHECK(tau_fm_identity_check(BigInt(p), m, q));
        }
    }
}

TEST_CASE("psi / Lucas identity") {
    LucasSeq s2 = make_lucas(BigInt(2), BigInt(-24));
    CHECK(psi_poly(3).eval(BigInt(32), BigInt(9)) == -23);
    CHECK(psi_poly(4).eval(BigInt(32), BigInt(9)) == -55);
    CHECK(psi_lucas_identity_check(s2, 3));
    CHECK(psi_lucas_identity_check(s2, 4));
    LucasSeq s3 = make_lucas(BigInt(3), BigInt(252));
    CHECK(psi_lucas_identity_check(s3, 5));
    QExpansion q = delta_qexpansion(20);
    for (unsigned long p : {2, 3, 5, 7, 11, 13, 17, 19}) {
        LucasSeq s = make_lucas(BigInt(p), q.at(p));
        for (unsigned m = 3; m <= 20; ++m) {
            CAPTURE(p);
            CAPTURE(m);
            CHECK(psi_lucas_identity_check(s, m));
        }
    }
}

TEST_CASE("psi value divides tau at prime powers") {
    QExpansion q = delta_qexpansion(20);
    for (unsigned long p : {2, 3, 5, 7, 11, 13, 17, 19}) {
        BigInt tau_p = q.at(p);
        for (unsigned m = 3; m <= 20; ++m) {
            BigInt psi_val = psi_poly(m).eval(bi_pow(BigInt(p), 11), tau_p * tau_p);
            BigInt tpm = tau_prime_power(tau_p, BigInt(p), m - 1);
            CAPTURE(p);
            CAPTURE(m);
            REQUIRE(psi_val != 0);
            CHECK(mpz_divisible_p(tpm.get_mpz_t(), psi_val.get_mpz_t()));
        }
    }
}

TEST_CASE("admissible prime filter") {
    CHECK(admissible_prime_filter(7, BigInt(13), 1));
    CHECK_FALSE(admissible_prime_filter(7, BigInt(5), 1));
    CHECK(admissible_prime_filter(9, BigInt(3), 2));
    CHECK(admissible_prime_filter(5, BigInt(11), 1));   // 11 = 2*5+1
    CHECK(admissible_prime_filter(12, BigInt(11), 1));  // -1 mod 12
    CHECK_FALSE(admissible_prime_filter(12, BigInt(7), 1));
    for (unsigned m : {2, 3, 4, 6}) {
        CAPTURE(m);
        CHECK_THROWS_AS(admissible_prime_filter(m, BigInt(5), 1), std::domain_error);
    }
}
