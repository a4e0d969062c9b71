#include "taukit/lucas.hpp"

#include <algorithm>

#include "taukit/primes.hpp"

namespace taukit {

LucasSeq::LucasSeq(const BigInt& p, unsigned r, BigInt trace, BigInt norm)
    : p_(p), r_(r), trace_(std::move(trace)), norm_(std::move(norm)) {
    disc_ = trace_ * trace_ - 4 * norm_;
    terms_.push_back(BigInt(1));
    terms_.push_back(trace_);
}

BigInt LucasSeq::term(std::size_t n) {
    if (n < 1) throw std::out_of_range("LucasSeq::term: n must be >= 1");
    while (terms_.size() < n) {
        std::size_t k = terms_.size();
        terms_.push_back(trace_ * terms_[k - 1] - norm_ * terms_[k - 2]);
    }
    return terms_[n - 1];
}

LucasSeq make_lucas(const BigInt& p, const BigInt& tau_p) {
    if (tau_p == 0)
        throw std::domain_error("make_lucas: tau(p) = 0 has no Lucas pair; use the closed even/odd formula");
    if (p < 2 || !is_probable_prime(p)) throw std::invalid_argument("make_lucas: p must be prime");
    BigInt t = tau_p;
    unsigned r = static_cast<unsigned>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t()));
    if (r > 5) throw std::invalid_argument("make_lucas: ord_p(tau_p) > 5 is impossible for genuine tau values");
    BigInt norm = bi_pow(p, 11 - 2 * r);
    if (bi_gcd(t, norm) != 1) throw std::invalid_argument("make_lucas: trace and norm must be coprime");
    BigInt disc = t * t - 4 * norm;
    if (disc >= 0)
        throw std::invalid_argument("make_lucas: discriminant must be negative (tau_p violates the Deligne bound)");
    return LucasSeq(p, r, t, norm);
}

namespace {

// Terms of the sequence reduced mod ell, computed iteratively.
struct ModSeq {
    BigInt ell, t, n, prev, cur;  // prev = u_k, cur = u_{k+1}
    std::size_t k = 1;
    explicit ModSeq(LucasSeq& s, const BigInt& ell_)
        : ell(ell_), t(bi_mod(s.trace(), ell_)), n(bi_mod(s.norm(), ell_)), prev(1 % ell_),
          cur(t) {}
    // value of u_k
    const BigInt& value() const { return prev; }
    void step() {
        BigInt next = bi_mod(t * cur - n * prev, ell);
        prev = cur;
        cur = next;
        ++k;
    }
};

}  // namespace

std::optional<std::size_t> rank_of_apparition(LucasSeq& seq, const BigInt& ell) {
    if (ell < 2 || !is_probable_prime(ell)) throw std::invalid_argument("rank_of_apparition: ell must be prime");
    if (mpz_divisible_p(seq.norm().get_mpz_t(), ell.get_mpz_t())) return std::nullopt;
    std::size_t ceiling;
    if (ell == 2) {
        ceiling = 3;
    } else if (mpz_divisible_p(seq.disc().get_mpz_t(), ell.get_mpz_t())) {
        ceiling = static_cast<std::size_t>(mpz_get_ui(ell.get_mpz_t()));
    } else {
        ceiling = static_cast<std::size_t>(mpz_get_ui(ell.get_mpz_t())) + 1;
    }
    ModSeq ms(seq, ell);
    for (std::size_t m = 1; m <= ceiling; ++m, ms.step()) {
        if (ms.value() == 0) return m;
    }
    return std::nullopt;
}

bool check_carmichael(LucasSeq& seq, const BigInt& ell) {
    auto m_opt = rank_of_apparition(seq, ell);
    if (!m_opt) {
        // Divisible norm: no term is ever divisible by ell. Verify over a range.
        if (!mpz_divisible_p(seq.norm().get_mpz_t(), ell.get_mpz_t())) return false;
        ModSeq ms(seq, ell);
        for (std::size_t m = 1; m <= 60; ++m, ms.step())
            if (ms.value() == 0) return false;
        return true;
    }
    std::size_t m = *m_opt;
    bool case_ok;
    if (ell == 2) {
        case_ok = (m == 2 || m == 3);
    } else if (mpz_divisible_p(seq.disc().get_mpz_t(), ell.get_mpz_t())) {
        case_ok = (BigInt(static_cast<unsigned long>(m)) == ell);
    } else {
        int j = mpz_jacobi(seq.disc().get_mpz_t(), ell.get_mpz_t());
        BigInt target = j == 1 ? BigInt(ell - 1) : BigInt(ell + 1);
        case_ok = mpz_divisible_ui_p(target.get_mpz_t(), static_cast<unsigned long>(m)) != 0;
    }
    if (!case_ok) return false;
    // divisibility pattern: ell | u_k exactly when m | k
    std::size_t scan = std::max<std::size_t>(60, 3 * m);
    ModSeq ms(seq, ell);
    for (std::size_t k = 1; k <= scan; ++k, ms.step()) {
        if ((ms.value() == 0) != (k % m == 0)) return false;
    }
    return true;
}

std::set<BigInt> primitive_divisors(LucasSeq& seq, std::size_t n, const FactorBudget& budget) {
    if (n < 1) throw std::domain_error("primitive_divisors: n must be >= 1");
    BigInt un = seq.term(n);
    if (un == 0) throw std::domain_error("primitive_divisors: u_n = 0");
    std::set<BigInt> out;
    if (un == 1 || un == -1) return out;
    Factorization f = factorize(un, budget);
    if (!f.complete) throw BudgetExhaustedError(std::move(f));
    for (const auto& [ell, e] : f.factors) {
        (void)e;
        if (mpz_divisible_p(seq.disc().get_mpz_t(), ell.get_mpz_t())) continue;
        bool divides_earlier = false;
        ModSeq ms(seq, ell);
        for (std::size_t k = 1; k < n; ++k, ms.step()) {
            if (ms.value() == 0) {
                divides_earlier = true;
                break;
            }
        }
        if (!divides_earlier) out.insert(ell);
    }
    return out;
}

bool has_primitive_divisor(LucasSeq& seq, std::size_t n) {
    if (n < 5 || n == 6)
        throw std::domain_error("has_primitive_divisor: certificate applies for n >= 5, n != 6");
    // P_n = prod_{d | n} u_d^{mu(n/d)}, an exact integer.
    BigInt num(1), den(1);
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        std::size_t q = n / d;
        // mu(q): 0 unless q squarefree
        int mu = 1;
        std::size_t qq = q;
        for (std::size_t pf = 2; pf * pf <= qq; ++pf) {
            if (qq % pf) continue;
            qq /= pf;
            if (qq % pf == 0) {
                mu = 0;
                break;
            }
            mu = -mu;
        }
        if (mu == 0) continue;
        if (qq > 1) mu = -mu;
        (mu == 1 ? num : den) *= seq.term(d);
    }
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
        throw std::logic_error("has_primitive_divisor: Moebius product is not integral");
    BigInt P;
    mpz_divexact(P.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    P = abs(P);
    // strip every prime factor of n
    std::size_t m = n;
    for (std::size_t pf = 2; pf * pf <= m; ++pf) {
        if (m % pf) continue;
        while (m % pf == 0) m /= pf;
        while (mpz_divisible_ui_p(P.get_mpz_t(), pf)) mpz_divexact_ui(P.get_mpz_t(), P.get_mpz_t(), pf);
    }
    if (m > 1)
        while (mpz_divisible_ui_p(P.get_mpz_t(), m)) mpz_divexact_ui(P.get_mpz_t(), P.get_mpz_t(), m);
    return P > 1;
}

}  // namespace taukit
