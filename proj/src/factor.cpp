#include "taukit/factor.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "taukit/primes.hpp"

namespace taukit {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

// Pollard–Brent on a 64-bit composite. Returns a nontrivial factor.
// Cycles through deterministic (c, x0) choices so runs are reproducible.
std::uint64_t brent_u64(std::uint64_t n) {
    if ((n & 1) == 0) return 2;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ n);
    for (;;) {
        std::uint64_t c = rng() % (n - 1) + 1;
        std::uint64_t y = rng() % n;
        std::uint64_t g = 1, r = 1, q = 1, x = 0, ys = 0;
        const std::uint64_t m = 128;
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
            for (std::uint64_t k = 0; k < r && g == 1; k += m) {
                ys = y;
                std::uint64_t lim = std::min(m, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = (mulmod_u64(y, y, n) + c) % n;
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
            r <<= 1;
        }
        if (g == n) {
            g = 1;
            do {
                ys = (mulmod_u64(ys, ys, n) + c) % n;
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_u64_into(std::uint64_t n, std::map<BigInt, unsigned>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out[BigInt(static_cast<unsigned long>(n))]++;
        return;
    }
    std::uint64_t d = brent_u64(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

// One budgeted batch of Pollard–Brent iterations on an mpz composite.
// Returns a nontrivial factor of n or 1 if this round found none.
BigInt brent_round_mpz(const BigInt& n, std::uint64_t round_index) {
    BigInt c(static_cast<unsigned long>(2 * round_index + 1));
    BigInt y(2 + static_cast<unsigned long>(round_index));
    BigInt x, ys, q(1), g(1), diff;
    std::uint64_t r = 1, done = 0;
    const std::uint64_t batch = 128;
    while (done < kRhoItersPerRound) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) {
            y = bi_mod(y * y + c, n);
        }
        for (std::uint64_t k = 0; k < r; k += batch) {
            ys = y;
            std::uint64_t lim = std::min(batch, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                y = bi_mod(y * y + c, n);
                diff = x - y;
                q = bi_mod(q * diff, n);
            }
            done += lim;
            g = bi_gcd(q, n);
            if (g != 1) break;
        }
        if (g != 1) break;
        r <<= 1;
    }
    if (g == 1 || g == n) {
        if (g == n) {
            // Backtrack one step at a time to split the collision.
            g = 1;
            while (g == 1) {
                ys = bi_mod(ys * ys + c, n);
                diff = x - ys;
                g = bi_gcd(diff, n);
            }
            if (g != n) return g;
        }
        return BigInt(1);
    }
    return g;
}

}  // namespace

Factorization factorize(const BigInt& x, const FactorBudget& budget) {
    if (x == 0) throw std::domain_error("factorize: zero has no factorization");
    if (budget.trial_limit < 2) throw std::invalid_argument("factorize: trial_limit must be >= 2");
    BigInt n = abs(x);
    Factorization result;
    if (n == 1) return result;

    std::map<BigInt, unsigned> found;
    std::uint32_t tl = budget.trial_limit > 0xffffffffULL
                           ? 0xffffffffU
                           : static_cast<std::uint32_t>(budget.trial_limit);
    const auto& primes = prime_table(tl);
    for (std::uint32_t p : primes) {
        if (p > tl) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            unsigned e = static_cast<unsigned>(
                mpz_remove(n.get_mpz_t(), n.get_mpz_t(), BigInt(p).get_mpz_t()));
            found[BigInt(p)] += e;
        }
        if (n == 1) break;
        if (BigInt(p) * p > n) {
            // remaining part is prime
            found[n]++;
            n = 1;
            break;
        }
    }

    std::uint64_t rounds_left = budget.rho_rounds;
    std::vector<BigInt> pending;
    if (n != 1) pending.push_back(n);
    while (!pending.empty()) {
        BigInt c = pending.back();
        pending.pop_back();
        if (c == 1) continue;
        if (bi_fits_u64(c)) {
            factor_u64_into(bi_to_u64(c), found);
            continue;
        }
        if (is_probable_prime(c)) {
            found[c]++;
            continue;
        }
        if (mpz_perfect_power_p(c.get_mpz_t())) {
            // c = r^k for some prime k; reduce to the root (rho is hopeless
            // on prime squares, and this is cheap).
            unsigned long maxk = mpz_sizeinbase(c.get_mpz_t(), 2);
            bool reduced = false;
            for (std::uint32_t k : prime_table(64)) {
                if (k > maxk) break;
                BigInt root;
                if (mpz_root(root.get_mpz_t(), c.get_mpz_t(), k)) {
                    for (std::uint32_t i = 0; i < k; ++i) pending.push_back(root);
                    reduced = true;
                    break;
                }
            }
            if (reduced) continue;
        }
        bool split = false;
        while (rounds_left > 0) {
            std::uint64_t idx = budget.rho_rounds - rounds_left;
            --rounds_left;
            BigInt d = brent_round_mpz(c, idx);
            if (d != 1 && d != c) {
                pending.push_back(d);
                pending.push_back(c / d);
                split = true;
                break;
            }
        }
        if (!split) {
            result.complete = false;
            result.cofactor *= c;
        }
    }

    for (auto& [p, e] : found) result.factors.emplace_back(p, e);
    return result;
}

PFResult largest_prime_factor(const BigInt& x, const FactorBudget& budget) {
    BigInt n = abs(x);
    if (n <= 1) throw std::domain_error("largest_prime_factor: |x| must exceed 1");
    Factorization f = factorize(n, budget);
    PFResult r;
    r.complete = f.complete;
    r.value = f.factors.empty() ? BigInt(0) : f.factors.back().first;
    return r;
}

BigInt largest_prime_factor_exact(const BigInt& x, const FactorBudget& budget) {
    PFResult r = largest_prime_factor(x, budget);
    if (!r.complete) throw std::runtime_error("largest_prime_factor: budget exhausted");
    return r.value;
}

}  // namespace taukit
