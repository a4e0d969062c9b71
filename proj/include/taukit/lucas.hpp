#pragma once

#include <optional>
#include <set>
#include <vector>

#include "taukit/bigint.hpp"
#include "taukit/factor.hpp"

namespace taukit {

// The scaled Lucas sequence attached to a prime p and a nonzero tau(p):
// with r = ord_p(tau(p)), the pair has trace tau(p)/p^r and norm p^(11-2r),
// and u_n satisfies u_1 = 1, u_2 = trace, u_{n+2} = trace u_{n+1} - norm u_n.
class LucasSeq {
  public:
    LucasSeq(const BigInt& p, unsigned r, BigInt trace, BigInt norm);

    const BigInt& p() const { return p_; }
    unsigned r() const { return r_; }
    const BigInt& trace() const { return trace_; }
    const BigInt& norm() const { return norm_; }
    const BigInt& disc() const { return disc_; }

    // u_n, 1-based; memoized. Returned by value: the memo vector reallocates
    // as it grows, so references into it would not survive later calls.
    BigInt term(std::size_t n);

  private:
    BigInt p_;
    unsigned r_;
    BigInt trace_, norm_, disc_;
    std::vector<BigInt> terms_;  // terms_[k] = u_{k+1}
};

// Build the sequence from (p, tau(p)); throws std::domain_error for
// tau_p = 0 (that case follows a closed formula instead of a Lucas pair)
// and std::invalid_argument when the inputs violate the pair invariants.
LucasSeq make_lucas(const BigInt& p, const BigInt& tau_p);

// Smallest m with ell | u_m, searched up to the theoretical ceiling
// (ell+1 in general, ell when ell | disc, 3 when ell = 2).
// Absent when ell | norm, in which case no term is ever divisible.
std::optional<std::size_t> rank_of_apparition(LucasSeq& seq, const BigInt& ell);

// Verifies the classical rank-of-apparition case analysis at ell, plus the
// divisibility pattern ell | u_m <=> m_ell | m over a computed range.
bool check_carmichael(LucasSeq& seq, const BigInt& ell);

struct BudgetExhaustedError : std::runtime_error {
    Factorization partial;
    explicit BudgetExhaustedError(Factorization f)
        : std::runtime_error("factorization budget exhausted"), partial(std::move(f)) {}
};

// Primes dividing u_n but neither disc nor any earlier term. Requires a
// full factorization of u_n within budget; throws BudgetExhaustedError
// (carrying the partial factorization) otherwise.
std::set<BigInt> primitive_divisors(LucasSeq& seq, std::size_t n, const FactorBudget& budget = {});

// Factorization-free certificate that u_n (n >= 5, n != 6) has a primitive
// prime divisor: the Moebius product P_n = prod_{d|n} u_d^{mu(n/d)} with all
// prime factors of n stripped exceeds 1 in absolute value. Any prime left in
// that cofactor has rank of apparition exactly n and misses disc.
bool has_primitive_divisor(LucasSeq& seq, std::size_t n);

}  // namespace taukit
