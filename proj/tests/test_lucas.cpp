#include <doctest.h>

#include <numeric>

#include "taukit/lucas.hpp"
#include "taukit/primes.hpp"
#include "taukit/qexpansion.hpp"
#include "taukit/tau.hpp"

using namespace taukit;

TEST_CASE("make_lucas worked pairs") {
    LucasSeq s2 = make_lucas(BigInt(2), BigInt(-24));
    CHECK(s2.r() == 3);
    CHECK(s2.trace() == -3);
    CHECK(s2.norm() == 32);
    CHECK(s2.disc() == -119);

    LucasSeq s3 = make_lucas(BigInt(3), BigInt(252));
    CHECK(s3.r() == 2);
    CHECK(s3.trace() == 28);
    CHECK(s3.norm() == 2187);
    CHECK(s3.disc() == -7964);

    LucasSeq s5 = make_lucas(BigInt(5), BigInt(4830));
    CHECK(s5.r() == 1);
    CHECK(s5.trace() == 966);
    CHECK(s5.norm() == bi_pow(5, 9));
    CHECK(s5.disc() == BigInt(966) * 966 - 4 * bi_pow(5, 9));

    CHECK_THROWS_AS(make_lucas(BigInt(2), BigInt(0)), std::domain_error);
    CHECK_THROWS_AS(make_lucas(BigInt(4), BigInt(-24)), std::invalid_argument);
    // a fake tau value violating the Deligne bound must be rejected
    CHECK_THROWS_AS(make_lucas(BigInt(2), BigInt(100)), std::invalid_argument);
}

TEST_CASE("terms of the p=2 sequence") {
    LucasSeq s = make_lucas(BigInt(2), BigInt(-24));
    CHECK(s.term(1) == 1);
    CHECK(s.term(2) == -3);
    CHECK(s.term(3) == -23);
    CHECK(s.term(4) == 165);
    CHECK(s.term(5) == 241);
    CHECK(s.term(6) == -6003);
    CHECK(s.term(7) == 10297);
    CHECK(s.term(8) == 161205);
}

TEST_CASE("rank of apparition") {
    LucasSeq s = make_lucas(BigInt(2), BigInt(-24));
    CHECK(rank_of_apparition(s, BigInt(3)) == 2);
    CHECK(rank_of_apparition(s, BigInt(23)) == 3);
    CHECK(rank_of_apparition(s, BigInt(5)) == 4);
    CHECK(rank_of_apparition(s, BigInt(241)) == 5);
    CHECK_FALSE(rank_of_apparition(s, BigInt(2)).has_value());  // 2 | norm
}

TEST_CASE("Carmichael case analysis") {
    LucasSeq s = make_lucas(BigInt(2), BigInt(-24));
    CHECK(check_carmichael(s, BigInt(5)));   // QR, m=4 | 4
    CHECK(check_carmichael(s, BigInt(11)));  // QNR, m=4 | 12
    CHECK(check_carmichael(s, BigInt(2)));   // absent (2 | norm), vacuous
    CHECK(check_carmichael(s, BigInt(7)));   // 7 | disc = -119
    CHECK(check_carmichael(s, BigInt(17)));  // 17 | disc
    // full sweep asked by the module invariants: ell < 100, pattern to m = 60
    for (std::uint32_t ell : prime_table(100)) {
        if (ell >= 100) break;
        CAPTURE(ell);
        CHECK(check_carmichael(s, BigInt(ell)));
    }
}

TEST_CASE("primitive divisors of small terms") {
    LucasSeq s = make_lucas(BigInt(2), BigInt(-24));
    CHECK(primitive_divisors(s, 5) == std::set<BigInt>{BigInt(241)});
    CHECK(primitive_divisors(s, 6) == std::set<BigInt>{BigInt(29)});
    CHECK(primitive_divisors(s, 4) == std::set<BigInt>{BigInt(5), BigInt(11)});
    // budget exhaustion surfaces as a typed error with the partial work
    FactorBudget tiny{2, 0};
    try {
        primitive_divisors(s, 29, tiny);  // u_29 is far beyond a 2-trial budget
        FAIL("expected BudgetExhaustedError");
    } catch (const BudgetExhaustedError& e) {
        CHECK_FALSE(e.partial.complete);
    }
}

TEST_CASE("sequence identities against the tau table") {
    QExpansion q = delta_qexpansion(200);
    for (unsigned long p : {2, 3, 5, 7, 11}) {
        LucasSeq s = make_lucas(BigInt(p), q.at(p));
        // p^{r(n-1)} u_n = tau(p^{n-1}) for n <= 12
        for (std::size_t n = 1; n <= 12; ++n) {
            BigInt lhs = bi_pow(BigInt(p), s.r() * (n - 1)) * s.term(n);
            CHECK(lhs == tau_prime_power(q.at(p), BigInt(p), static_cast<unsigned>(n - 1)));
        }
        // u_k | u_n whenever k | n
        for (std::size_t n = 1; n <= 24; ++n)
            for (std::size_t k = 1; k <= n; ++k)
                if (n % k == 0)
                    CHECK(mpz_divisible_p(s.term(n).get_mpz_t(), s.term(k).get_mpz_t()));
        // p never divides a term
        for (std::size_t n = 1; n <= 40; ++n)
            CHECK_FALSE(mpz_divisible_ui_p(s.term(n).get_mpz_t(), p));
    }
}

TEST_CASE("primitive-divisor certificate at desk scale") {
    QExpansion q = delta_qexpansion(50);
    for (std::uint32_t p : prime_table(50)) {
        if (p > 50) break;
        LucasSeq s = make_lucas(BigInt(p), q.at(p));
        for (std::size_t n = 5; n <= 30; ++n) {
            if (n == 6) continue;
            CAPTURE(p);
            CAPTURE(n);
            CHECK(has_primitive_divisor(s, n));
        }
    }
    // certificate agrees with the explicit sets where those are computable
    LucasSeq s = make_lucas(BigInt(2), BigInt(-24));
    for (std::size_t n : {5, 7, 8, 9, 10, 11, 12}) {
        CHECK(has_primitive_divisor(s, n) == !primitive_divisors(s, n).empty());
    }
    CHECK_THROWS_AS(has_primitive_divisor(s, 4), std::domain_error);
    CHECK_THROWS_AS(has_primitive_divisor(s, 6), std::domain_error);
}
