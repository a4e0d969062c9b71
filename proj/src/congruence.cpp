#include "taukit/congruence.hpp"

#include "taukit/primes.hpp"
#include "taukit/tau.hpp"

namespace taukit {

const char* family_name(CongruenceFamily f) {
    switch (f) {
        case CongruenceFamily::MOD2: return "MOD2";
        case CongruenceFamily::MOD3: return "MOD3";
        case CongruenceFamily::MOD5: return "MOD5";
        case CongruenceFamily::MOD7: return "MOD7";
        case CongruenceFamily::MOD23: return "MOD23";
        case CongruenceFamily::MOD691: return "MOD691";
    }
    return "?";
}

bool congruence_applicable(CongruenceFamily f, const BigInt& n) {
    if (n < 1) return false;
    switch (f) {
        case CongruenceFamily::MOD2: return bi_is_odd(n);
        case CongruenceFamily::MOD3: return bi_mod_u64(n, 3) != 0;
        case CongruenceFamily::MOD5: return bi_mod_u64(n, 5) != 0;
        case CongruenceFamily::MOD7: return true;
        case CongruenceFamily::MOD23: return n != 23 && is_probable_prime(n);
        case CongruenceFamily::MOD691: return true;
    }
    return false;
}

namespace {

BigInt inverse_power(const BigInt& n, unsigned long e, const BigInt& m) {
    BigInt inv;
    if (!mpz_invert(inv.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t()))
        throw std::domain_error("predicted_residue: n not invertible modulo the target");
    return bi_powm(inv, BigInt(e), m);
}

// Is p representable as u^2 + 23 v^2 with u != 0?
bool rep_u2_23v2(const BigInt& p) {
    for (BigInt v(0);; ++v) {
        BigInt rest = p - 23 * v * v;
        if (rest < 1) return false;
        if (bi_is_square(rest)) return true;
    }
}

}  // namespace

PredictedResidue predicted_residue(CongruenceFamily f, const BigInt& n) {
    if (!congruence_applicable(f, n))
        throw std::domain_error(std::string("predicted_residue: ") + family_name(f) +
                                " does not apply to this n");
    switch (f) {
        case CongruenceFamily::MOD2: {
            unsigned long r = bi_mod_u64(n, 8);
            unsigned long k = r == 1 ? 11 : r == 3 ? 13 : r == 5 ? 12 : 14;
            unsigned long c = r == 1 ? 1 : r == 3 ? 1217 : r == 5 ? 1537 : 705;
            BigInt m = bi_pow(2, k);
            return {m, bi_mod(c * sigma_pow(n, 11, m), m)};
        }
        case CongruenceFamily::MOD3: {
            unsigned long k = bi_mod_u64(n, 3) == 1 ? 6 : 7;
            BigInt m = bi_pow(3, k);
            return {m, bi_mod(inverse_power(n, 610, m) * sigma_pow(n, 1231, m), m)};
        }
        case CongruenceFamily::MOD5: {
            BigInt m = bi_pow(5, 3);
            return {m, bi_mod(inverse_power(n, 30, m) * sigma_pow(n, 71, m), m)};
        }
        case CongruenceFamily::MOD7: {
            unsigned long r = bi_mod_u64(n, 7);
            bool low = (r == 0 || r == 1 || r == 2 || r == 4);
            BigInt m = low ? BigInt(7) : BigInt(49);
            return {m, bi_mod(n * sigma_pow(n, 9, m), m)};
        }
        case CongruenceFamily::MOD23: {
            // three-way split over primes p != 23
            if (mpz_legendre(n.get_mpz_t(), BigInt(23).get_mpz_t()) == -1)
                return {BigInt(23), BigInt(0)};
            if (rep_u2_23v2(n)) return {BigInt(23), BigInt(2)};
            return {BigInt(23), BigInt(22)};
        }
        case CongruenceFamily::MOD691:
            return {BigInt(691), sigma_pow(n, 11, BigInt(691))};
    }
    throw std::logic_error("predicted_residue: unreachable");
}

std::vector<CongruenceViolation> verify_congruences(std::size_t n_max, const QExpansion& table) {
    if (n_max > table.limit())
        throw std::out_of_range("verify_congruences: n_max exceeds the expansion limit");
    std::vector<CongruenceViolation> out;
    constexpr CongruenceFamily families[] = {CongruenceFamily::MOD2,  CongruenceFamily::MOD3,
                                             CongruenceFamily::MOD5,  CongruenceFamily::MOD7,
                                             CongruenceFamily::MOD23, CongruenceFamily::MOD691};
    for (std::size_t k = 1; k <= n_max; ++k) {
        BigInt n(static_cast<unsigned long>(k));
        for (CongruenceFamily f : families) {
            if (!congruence_applicable(f, n)) continue;
            PredictedResidue pr = predicted_residue(f, n);
            if (bi_mod(table.at(k), pr.modulus) != pr.residue) out.push_back({f, n});
        }
    }
    return out;
}

bool taup2_nondivisibility(const BigInt& p, const BigInt& tau_p2) {
    if (p != 7 && bi_mod_u64(tau_p2, 7) == 0) return false;
    if (p != 5 && bi_mod_u64(tau_p2, 5) == 0) return false;
    if (p != 3 && bi_mod_u64(tau_p2, 9) == 0) return false;
    return true;
}

}  // namespace taukit
