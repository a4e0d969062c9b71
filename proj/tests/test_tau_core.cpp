#include <doctest.h>

#include <numeric>

#include "taukit/qexpansion.hpp"
#include "taukit/tau.hpp"

using namespace taukit;

namespace {

// Independent oracle: expand q * prod_{n<=N} (1-q^n)^24 by schoolbook
// BigInt multiplication, one factor at a time. Slow but obviously correct.
std::vector<BigInt> delta_by_direct_product(std::size_t N) {
    std::vector<BigInt> acc(N, 0);
    acc[0] = 1;
    for (std::size_t n = 1; n < N; ++n) {
        for (int rep = 0; rep < 24; ++rep) {
            // multiply by (1 - q^n) in place
            for (std::size_t d = N; d-- > n;) acc[d] -= acc[d - n];
        }
    }
    // shift by one power of q: coefficient of q^m in the product is acc[m-1]
    return acc;
}

}  // namespace

TEST_CASE("delta expansion matches the direct product oracle") {
    const std::size_t N = 64;
    QExpansion q = delta_qexpansion(N);
    auto oracle = delta_by_direct_product(N);
    for (std::size_t n = 1; n <= N; ++n) CHECK(q.at(n) == oracle[n - 1]);
}

TEST_CASE("delta expansion worked coefficients") {
    QExpansion q1 = delta_qexpansion(1);
    CHECK(q1.limit() == 1);
    CHECK(q1.at(1) == 1);

    QExpansion q = delta_qexpansion(30);
    CHECK(q.at(1) == 1);
    CHECK(q.at(2) == -24);
    CHECK(q.at(3) == 252);
    CHECK(q.at(4) == -1472);
    CHECK(q.at(5) == 4830);
    CHECK(q.at(6) == -6048);
    CHECK(q.at(6) == q.at(2) * q.at(3));
    CHECK(q.at(9) == -113643);
}

TEST_CASE("delta expansion rejects bad sizes") {
    CHECK_THROWS_AS(delta_qexpansion(0), std::invalid_argument);
    CHECK_THROWS_AS(delta_qexpansion(kMaxExpansionLimit + 1), ResourceError);
}

TEST_CASE("oddness locus, multiplicativity, Hecke recurrence, Deligne bound") {
    const std::size_t N = 2000;
    QExpansion q = delta_qexpansion(N);
    for (std::size_t n = 1; n <= N; ++n) {
        CAPTURE(n);
        CHECK(bi_is_odd(q.at(n)) == is_odd_square(BigInt(static_cast<unsigned long>(n))));
    }
    for (std::size_t a = 2; a * a <= N; ++a) {
        for (std::size_t b = a + 1; a * b <= N; ++b) {
            if (std::gcd(a, b) != 1) continue;
            CHECK(q.at(a * b) == q.at(a) * q.at(b));
        }
    }
    // prime powers against the recurrence
    for (std::size_t p : {2, 3, 5, 7, 11, 13, 31, 43}) {
        unsigned m = 1;
        for (std::size_t pk = p; pk <= N; pk *= p, ++m) {
            CHECK(q.at(pk) == tau_prime_power(q.at(p), BigInt(static_cast<unsigned long>(p)), m));
        }
    }
    // |tau(p)| <= 2 p^{11/2}: compare squares to stay integral
    for (std::size_t p = 2; p <= N; ++p) {
        bool isp = true;
        for (std::size_t d = 2; d * d <= p; ++d)
            if (p % d == 0) { isp = false; break; }
        if (!isp) continue;
        BigInt t = q.at(p);
        CHECK(t * t <= 4 * bi_pow(static_cast<unsigned long>(p), 11));
    }
}

TEST_CASE("tau_prime_power worked values") {
    CHECK(tau_prime_power(BigInt(-24), BigInt(2), 2) == -1472);
    CHECK(tau_prime_power(BigInt(-24), BigInt(2), 3) == 84480);
    CHECK(tau_prime_power(BigInt(-24), BigInt(2), 1) == -24);
    CHECK(tau_prime_power(BigInt(-24), BigInt(2), 0) == 1);
    CHECK(tau_prime_power(BigInt(252), BigInt(3), 1) == 252);
}

TEST_CASE("tau on composite arguments") {
    QExpansion q = delta_qexpansion(300);
    CHECK(tau(BigInt(1), q) == 1);
    CHECK(tau(BigInt(6), q) == -6048);
    CHECK(tau(BigInt(251) * 251, q) == BigInt("-80561663527802406257321747"));
    CHECK_THROWS_AS(tau(BigInt(307) * 4, q), std::out_of_range);  // 307 > limit 300
}

TEST_CASE("sigma_pow worked values and modular variant") {
    CHECK(sigma_pow(BigInt(1), 11) == 1);
    CHECK(sigma_pow(BigInt(2), 11) == 2049);
    CHECK(sigma_pow(BigInt(3), 9) == 19684);
    CHECK(sigma_pow(BigInt(12), 0) == 6);    // divisor count
    CHECK(sigma_pow(BigInt(12), 1) == 28);   // divisor sum
    BigInt m(691);
    CHECK(sigma_pow(BigInt(3), 11, m) == bi_mod(sigma_pow(BigInt(3), 11), m));
    // big n: factorization-based sigma agrees with a direct divisor loop
    BigInt n(720720);
    BigInt direct(0);
    for (unsigned long d = 1; d <= 720720; ++d)
        if (720720 % d == 0) direct += bi_pow(d, 3);
    CHECK(sigma_pow(n, 3) == direct);
}

TEST_CASE("expansion cache round-trips bit-exactly") {
    QExpansion q = delta_qexpansion(50);
    std::string path = "qexp_test_cache.txt";
    save_qexpansion(q, path);
    QExpansion r = load_qexpansion(path);
    REQUIRE(r.limit() == q.limit());
    for (std::size_t n = 1; n <= q.limit(); ++n) CHECK(r.at(n) == q.at(n));
    std::remove(path.c_str());
}
