#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace taukit {

using BigInt = mpz_class;
using Rational = mpq_class;

// Thrown when a computation would exceed a configured memory/size ceiling.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline BigInt bi_pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt bi_pow(unsigned long base, unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

// Nonnegative remainder in [0, m).
inline BigInt bi_mod(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline std::uint64_t bi_mod_u64(const BigInt& a, std::uint64_t m) {
    return mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(m));
}

inline BigInt bi_powm(const BigInt& b, const BigInt& e, const BigInt& m) {
    BigInt r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool bi_fits_u64(const BigInt& a) {
    return mpz_sgn(a.get_mpz_t()) >= 0 && mpz_sizeinbase(a.get_mpz_t(), 2) <= 64;
}

// Caller guarantees 0 <= a < 2^64.
inline std::uint64_t bi_to_u64(const BigInt& a) {
    if (mpz_sizeinbase(a.get_mpz_t(), 2) <= 32) return mpz_get_ui(a.get_mpz_t());
    BigInt hi = a >> 32;
    return (static_cast<std::uint64_t>(mpz_get_ui(hi.get_mpz_t())) << 32) |
           static_cast<std::uint64_t>(mpz_get_ui(BigInt(a & BigInt(0xffffffffUL)).get_mpz_t()));
}

inline BigInt bi_from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    BigInt r(static_cast<unsigned long>(u >> 64));
    r <<= 64;
    r += static_cast<unsigned long>(u & 0xffffffffffffffffULL);
    return neg ? BigInt(-r) : r;
}

inline bool bi_is_odd(const BigInt& a) { return mpz_odd_p(a.get_mpz_t()) != 0; }

inline bool bi_is_square(const BigInt& a) { return mpz_perfect_square_p(a.get_mpz_t()) != 0; }

inline BigInt bi_sqrt(const BigInt& a) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline BigInt bi_gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace taukit
