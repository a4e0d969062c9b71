#include "taukit/tau.hpp"

#include "taukit/factor.hpp"

namespace taukit {

BigInt tau_prime_power(const BigInt& tau_p, const BigInt& p, unsigned m) {
    if (m == 0) return BigInt(1);
    if (m == 1) return tau_p;
    BigInt p11 = bi_pow(p, 11);
    BigInt prev(1), cur(tau_p);
    for (unsigned k = 2; k <= m; ++k) {
        BigInt next = tau_p * cur - p11 * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

BigInt tau(const BigInt& n, const QExpansion& table) {
    if (n < 1) throw std::domain_error("tau: n must be positive");
    if (n == 1) return BigInt(1);
    // The precondition bounds every prime factor by table.limit, so trial
    // division up to that limit must finish the job.
    FactorBudget budget;
    budget.trial_limit = table.limit() < 2 ? 2 : table.limit();
    budget.rho_rounds = 0;
    Factorization f = factorize(n, budget);
    if (!f.complete)
        throw std::out_of_range("tau: n has a prime factor beyond the expansion limit");
    BigInt result(1);
    for (const auto& [p, e] : f.factors) {
        if (p > static_cast<unsigned long>(table.limit()))
            throw std::out_of_range("tau: n has a prime factor beyond the expansion limit");
        result *= tau_prime_power(table.at(bi_to_u64(p)), p, e);
    }
    return result;
}

BigInt sigma_pow(const BigInt& n, unsigned v, const std::optional<BigInt>& modulus) {
    if (n < 1) throw std::domain_error("sigma_pow: n must be positive");
    if (modulus && *modulus < 1) throw std::domain_error("sigma_pow: modulus must be positive");
    BigInt result(1);
    if (n > 1) {
        Factorization f = factorize(n, {});
        if (!f.complete) throw std::runtime_error("sigma_pow: factorization budget exhausted");
        for (const auto& [p, e] : f.factors) {
            // 1 + p^v + ... + p^{ev}, reduced as we go when a modulus is present.
            BigInt term(1);
            if (modulus) {
                BigInt pv = bi_powm(p, BigInt(v), *modulus);
                BigInt acc(1);
                for (unsigned i = 0; i < e; ++i) {
                    acc = bi_mod(acc * pv, *modulus);
                    term += acc;
                }
            } else {
                BigInt pv = bi_pow(p, v);
                BigInt acc(1);
                for (unsigned i = 0; i < e; ++i) {
                    acc *= pv;
                    term += acc;
                }
            }
            result *= term;
            if (modulus) result = bi_mod(result, *modulus);
        }
    }
    if (modulus) result = bi_mod(result, *modulus);
    return result;
}

bool is_odd_square(const BigInt& n) { return n >= 1 && bi_is_odd(n) && bi_is_square(n); }

}  // namespace taukit
