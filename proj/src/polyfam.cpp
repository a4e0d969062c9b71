#include "taukit/polyfam.hpp"

#include <mpfr.h>

#include <numeric>

#include "taukit/tau.hpp"

namespace taukit {

namespace {

int moebius(unsigned long n) {
    int mu = 1;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

}  // namespace

unsigned long euler_phi(unsigned long m) {
    unsigned long result = m;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

BivariatePoly f_poly(unsigned m) {
    if (m == 0) return BivariatePoly();  // zero
    BivariatePoly fm2 = BivariatePoly();                       // F_0
    BivariatePoly fm1 = BivariatePoly::constant(BigInt(1));    // F_1
    if (m == 1) return fm1;
    if (m == 2) return fm1;
    BivariatePoly f3 = parse_poly("-X+Y");
    if (m == 3) return f3;
    // march the recurrence twice-interleaved: odd and even chains both step by 2
    BivariatePoly odd_prev = fm1, odd_cur = f3;       // F_1, F_3
    BivariatePoly even_prev = fm2, even_cur = BivariatePoly::constant(BigInt(1));  // F_0, F_2
    const BivariatePoly lin = parse_poly("-2X+Y");
    auto step = [&](BivariatePoly& prev, BivariatePoly& cur) {
        BivariatePoly next = lin * cur - prev.shifted(2, 0);
        prev = cur;
        cur = next;
    };
    if (m % 2 == 1) {
        for (unsigned k = 3; k < m; k += 2) step(odd_prev, odd_cur);
        return odd_cur;
    }
    for (unsigned k = 2; k < m; k += 2) step(even_prev, even_cur);
    return even_cur;
}

BivariatePoly h_expand(unsigned m) {
    if (m == 0) return BivariatePoly();
    if (m == 1 || m == 2) return BivariatePoly::constant(BigInt(1));
    if (m % 2 == 1) {
        std::vector<BigInt> c(m, BigInt(1));  // Z^i W^{m-1-i}, all ones
        return BivariatePoly(std::move(c));
    }
    std::vector<BigInt> c(m - 1, BigInt(0));  // degree m-2
    for (std::size_t i = 0; i < c.size(); i += 2) c[i] = 1;
    return BivariatePoly(std::move(c));
}

BivariatePoly psi_poly(unsigned m) {
    if (m < 3) throw std::domain_error("psi_poly: m must be >= 3");
    BivariatePoly num = BivariatePoly::constant(BigInt(1));
    BivariatePoly den = BivariatePoly::constant(BigInt(1));
    for (unsigned d = 1; d <= m; ++d) {
        if (m % d) continue;
        int mu = moebius(m / d);
        if (mu == 1) num = num * f_poly(d);
        if (mu == -1) den = den * f_poly(d);
    }
    BivariatePoly psi = exact_div(num, den);
    if (psi.degree() != euler_phi(m) / 2)
        throw std::logic_error("psi_poly: degree disagrees with phi(m)/2");
    return psi;
}

bool coeff_bound_check(unsigned m) {
    BivariatePoly psi = psi_poly(m);
    BigInt bound = bi_pow(5, euler_phi(m) / 2);
    for (std::size_t i = 0; i <= psi.degree(); ++i)
        if (abs(psi.coeff(i)) > bound) return false;
    return true;
}

bool psi_root_check(unsigned m, double tol) {
    if (m < 3) throw std::domain_error("psi_root_check: m must be >= 3");
    if (tol <= 0) throw std::domain_error("psi_root_check: tol must be positive");
    BivariatePoly psi = psi_poly(m);
    const std::size_t d = psi.degree();
    if (psi.coeff(0) != 1) return false;  // psi_m(1,Y) must be monic
    std::vector<unsigned> js;
    for (unsigned j = 1; 2 * j <= m - 1; ++j)
        if (std::gcd(j, m) == 1) js.push_back(j);
    if (js.size() != d) return false;

    const mpfr_prec_t prec = 256;
    mpfr_t pi, angle, y, val, tmp;
    mpfr_inits2(prec, pi, angle, y, val, tmp, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(pi, MPFR_RNDN);
    bool ok = true;
    for (unsigned j : js) {
        // y = 2 + 2 cos(2 pi j / m)
        mpfr_mul_ui(angle, pi, 2 * j, MPFR_RNDN);
        mpfr_div_ui(angle, angle, m, MPFR_RNDN);
        mpfr_cos(y, angle, MPFR_RNDN);
        mpfr_mul_ui(y, y, 2, MPFR_RNDN);
        mpfr_add_ui(y, y, 2, MPFR_RNDN);
        // Horner for psi(1, y): coefficients of Y^k are psi.coeff(d-k)
        mpfr_set_ui(val, 0, MPFR_RNDN);
        for (std::size_t i = 0; i <= d; ++i) {
            mpfr_mul(val, val, y, MPFR_RNDN);
            mpfr_set_z(tmp, psi.coeff(i).get_mpz_t(), MPFR_RNDN);
            mpfr_add(val, val, tmp, MPFR_RNDN);
        }
        mpfr_abs(val, val, MPFR_RNDN);
        if (mpfr_cmp_d(val, tol) > 0) {
            ok = false;
            break;
        }
    }
    mpfr_clears(pi, angle, y, val, tmp, static_cast<mpfr_ptr>(nullptr));
    return ok;
}

UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
    if (a.empty() || b.empty()) return {};
    UniPoly out(a.size() + b.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

UniPoly uni_divexact(const UniPoly& a, const UniPoly& b) {
    if (b.empty() || b.back() == 0) throw std::domain_error("uni_divexact: bad divisor");
    if (a.size() < b.size()) throw std::domain_error("uni_divexact: degree underflow");
    UniPoly rem = a;
    UniPoly quot(a.size() - b.size() + 1, BigInt(0));
    for (std::size_t top = rem.size(); top-- >= b.size();) {
        if (rem[top] == 0) {
            if (top + 1 == b.size()) break;
            continue;
        }
        BigInt q;
        if (!mpz_divisible_p(rem[top].get_mpz_t(), b.back().get_mpz_t()))
            throw std::domain_error("uni_divexact: fractional quotient");
        mpz_divexact(q.get_mpz_t(), rem[top].get_mpz_t(), b.back().get_mpz_t());
        std::size_t qi = top - (b.size() - 1);
        quot[qi] = q;
        for (std::size_t i = 0; i < b.size(); ++i) rem[qi + i] -= q * b[i];
        if (top + 1 == b.size()) break;
    }
    for (const BigInt& r : rem)
        if (r != 0) throw std::domain_error("uni_divexact: nonzero remainder");
    return quot;
}

UniPoly cyclotomic_poly(unsigned m) {
    if (m == 0) throw std::domain_error("cyclotomic_poly: m must be >= 1");
    // x^m - 1 divided by the product of proper cyclotomic factors
    UniPoly num(m + 1, BigInt(0));
    num[0] = -1;
    num[m] = 1;
    UniPoly den{BigInt(1)};
    for (unsigned d = 1; d < m; ++d)
        if (m % d == 0) den = uni_mul(den, cyclotomic_poly(d));
    return uni_divexact(num, den);
}

bool psi_cyclotomic_check(unsigned m) {
    if (m < 3) throw std::domain_error("psi_cyclotomic_check: m must be >= 3");
    BivariatePoly psi = psi_poly(m);
    const std::size_t d = psi.degree();
    // sum_i c_i (x+1)^{2(d-i)} x^i, an exact polynomial of degree 2d = phi(m)
    UniPoly acc{BigInt(0)};
    const UniPoly xp1sq{BigInt(1), BigInt(2), BigInt(1)};  // (x+1)^2
    for (std::size_t i = 0; i <= d; ++i) {
        UniPoly term{psi.coeff(i)};
        for (std::size_t k = 0; k < d - i; ++k) term = uni_mul(term, xp1sq);
        // multiply by x^i
        UniPoly shifted(i, BigInt(0));
        shifted.insert(shifted.end(), term.begin(), term.end());
        if (shifted.size() > acc.size()) acc.resize(shifted.size(), BigInt(0));
        for (std::size_t k = 0; k < shifted.size(); ++k) acc[k] += shifted[k];
    }
    while (acc.size() > 1 && acc.back() == 0) acc.pop_back();
    return acc == cyclotomic_poly(m);
}

bool tau_fm_identity_check(const BigInt& p, unsigned m, const QExpansion& table) {
    if (m < 1) throw std::domain_error("tau_fm_identity_check: m must be >= 1");
    if (!bi_fits_u64(p) || bi_to_u64(p) > table.limit())
        throw std::out_of_range("tau_fm_identity_check: p beyond the expansion limit");
    BigInt tau_p = table.at(static_cast<std::size_t>(bi_to_u64(p)));
    BigInt lhs = tau_prime_power(tau_p, p, m - 1);
    BigInt fm = f_poly(m).eval(bi_pow(p, 11), tau_p * tau_p);
    BigInt rhs = (m % 2 == 0) ? BigInt(tau_p * fm) : fm;
    return lhs == rhs;
}

bool psi_lucas_identity_check(LucasSeq& seq, unsigned m) {
    if (m < 3) throw std::domain_error("psi_lucas_identity_check: m must be >= 3");
    BigInt lhs = psi_poly(m).eval(seq.norm(), seq.trace() * seq.trace());
    BigInt num(1), den(1);
    for (unsigned d = 1; d <= m; ++d) {
        if (m % d) continue;
        int mu = moebius(m / d);
        if (mu == 1) num *= seq.term(d);
        if (mu == -1) den *= seq.term(d);
    }
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) return false;
    BigInt rhs;
    mpz_divexact(rhs.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return lhs == rhs;
}

bool admissible_prime_filter(unsigned m, const BigInt& q, unsigned a) {
    if (m != 5 && m < 7)
        throw std::domain_error("admissible_prime_filter: criterion is only valid for m = 5 or m >= 7");
    if (a < 1) throw std::domain_error("admissible_prime_filter: a must be positive");
    BigInt r = bi_mod(q, BigInt(m));
    if (r == 1 || r == BigInt(m) - 1) return true;
    BigInt qa = bi_pow(q, a);
    return qa <= m && mpz_divisible_p(BigInt(m).get_mpz_t(), qa.get_mpz_t());
}

}  // namespace taukit
