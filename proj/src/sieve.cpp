#include "taukit/sieve.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>
#include <tuple>

#include "taukit/curvecount.hpp"
#include "taukit/factor.hpp"
#include "taukit/primes.hpp"

namespace taukit {

namespace {

std::uint32_t mod_sub(std::uint32_t a, std::uint32_t b, std::uint32_t m) {
    return (a + m - b) % m;
}

std::uint32_t pow_mod_u32(std::uint32_t base, std::uint32_t exp, std::uint32_t m) {
    std::uint64_t r = 1, b = base % m;
    while (exp) {
        if (exp & 1) r = r * b % m;
        b = b * b % m;
        exp >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

void check_kind_coprimality(std::uint32_t ell, SieveKind kind) {
    if (ell < 3 || !is_prime_u64(ell) || ell > 1000)
        throw std::invalid_argument("auxiliary prime must be an odd prime <= 1000");
    if (ell == 11) throw std::invalid_argument("auxiliary prime 11 is never admissible");
    if ((kind == SieveKind::TAU_P4 || kind == SieveKind::TAU_P3) && ell == 5)
        throw std::invalid_argument("auxiliary prime 5 is not admissible for this kind");
}

// Curve family member reduced at ell.  For TAU_P2/TAU_P4 the shape depends
// on j in {1, 3}; the TAU_P3 family has a single shape (j ignored).
CurveModEll family_curve(std::uint32_t ell, std::uint32_t s11, std::uint32_t t, int j,
                         SieveKind kind) {
    std::uint64_t L = ell;
    std::uint64_t t2 = static_cast<std::uint64_t>(t) * t % L;
    std::uint64_t a2 = 0, a4 = 0;
    switch (kind) {
        case SieveKind::TAU_P2:
            a2 = 2 * static_cast<std::uint64_t>(t) % L;
            a4 = (j == 1) ? mod_sub(static_cast<std::uint32_t>(t2), s11,
                                    static_cast<std::uint32_t>(L))
                          : s11;
            break;
        case SieveKind::TAU_P4: {
            std::uint64_t s22 = static_cast<std::uint64_t>(s11) * s11 % L;
            std::uint64_t mid = 3 * static_cast<std::uint64_t>(s11) % L * t2 % L;
            a4 = (t2 * t2 % L + s22 % L + 2 * L - mid) % L;
            std::uint64_t twot2 = 2 * t2 % L, threes11 = 3 * static_cast<std::uint64_t>(s11) % L;
            a2 = (j == 1) ? (threes11 + L - twot2) % L : (twot2 + L - threes11) % L;
            break;
        }
        case SieveKind::TAU_P3:
            a2 = 2 * static_cast<std::uint64_t>(t) % L;
            a4 = 2 * static_cast<std::uint64_t>(s11) % L;
            break;
    }
    return make_curve(ell, 0, static_cast<std::int64_t>(a2), 0, static_cast<std::int64_t>(a4), 0);
}

struct PresieveEntry {
    std::uint16_t s, t, img;
    std::int16_t a;
};

// Traces and image values over the admissible pairs do not depend on the
// newform, so they are computed once per (kind, ell, j) and shared.
using PresieveTable = std::vector<PresieveEntry>;

const PresieveTable& presieve_table(std::uint32_t ell, int j, SieveKind kind) {
    using Key = std::tuple<int, std::uint32_t, int>;
    static std::mutex mu;
    static std::map<Key, std::unique_ptr<PresieveTable>> cache;
    if (kind == SieveKind::TAU_P3) j = 0;
    Key key{static_cast<int>(kind), ell, j};
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    auto table = std::make_unique<PresieveTable>();
    QuadTable chi(ell);
    for (auto [s, t] : build_B(ell, kind)) {
        std::uint32_t s11 = pow_mod_u32(s, 11, ell);
        CurveModEll curve = family_curve(ell, s11, t, j, kind);
        int a = ap_point_count(curve, chi);
        std::uint32_t img = 0;
        if (kind == SieveKind::TAU_P2) {
            img = mod_sub(t * t % ell, s11, ell);
        } else if (kind == SieveKind::TAU_P4) {
            std::uint64_t t2 = static_cast<std::uint64_t>(t) * t % ell;
            std::uint64_t s22 = static_cast<std::uint64_t>(s11) * s11 % ell;
            std::uint64_t mid = 3 * static_cast<std::uint64_t>(s11) % ell * t2 % ell;
            img = static_cast<std::uint32_t>((t2 * t2 % ell + s22 + 2ULL * ell - mid) % ell);
        }
        table->push_back({static_cast<std::uint16_t>(s), static_cast<std::uint16_t>(t),
                          static_cast<std::uint16_t>(img), static_cast<std::int16_t>(a)});
    }
    auto [pos, inserted] = cache.emplace(key, std::move(table));
    (void)inserted;
    return *pos->second;
}

// Characteristic polynomial of c_ell reduced mod 11, highest degree first.
std::vector<int> charpoly_mod11(const NewformEigenData& f, std::uint32_t ell) {
    auto poly = f.charpoly_at(ell);
    std::vector<int> out(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i)
        out[poly.size() - 1 - i] = static_cast<int>(bi_mod_u64(poly[i], 11));
    return out;
}

bool norm_vanishes_mod11(const std::vector<int>& poly_desc, int a) {
    int x = ((a % 11) + 11) % 11;
    int acc = 0;
    for (int c : poly_desc) acc = (acc * x + c) % 11;
    return acc == 0;
}

long radical_long(const BigInt& kappa) {
    BigInt abs_k = abs(kappa);
    long rad = 1;
    for (const auto& [p, e] : factorize(abs_k).factors) {
        (void)e;
        rad *= mpz_get_si(p.get_mpz_t());
    }
    return rad;
}

}  // namespace

bool SieveResult::empty() const {
    auto none = [](const ResidueSet& v) {
        return std::none_of(v.begin(), v.end(), [](bool b) { return b; });
    };
    return none(H1) && none(H3);
}

std::uint32_t multiplicative_order(std::uint32_t a, std::uint32_t n) {
    if (n < 2) throw std::invalid_argument("multiplicative_order: modulus must exceed 1");
    a %= n;
    if (std::gcd(a, n) != 1)
        throw std::invalid_argument("multiplicative_order: arguments are not coprime");
    std::uint64_t v = a;
    for (std::uint32_t k = 1; k <= n; ++k) {
        if (v == 1) return k;
        v = v * a % n;
    }
    throw std::logic_error("multiplicative_order: no order found");
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> build_B(std::uint32_t ell, SieveKind kind) {
    check_kind_coprimality(ell, kind);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    QuadTable chi(ell);
    for (std::uint32_t s = 1; s < ell; ++s) {
        std::uint32_t s11 = pow_mod_u32(s, 11, ell);
        std::uint32_t s3 = pow_mod_u32(s, 3, ell);
        for (std::uint32_t t = 0; t < ell; ++t) {
            std::uint32_t t2 = static_cast<std::uint32_t>(static_cast<std::uint64_t>(t) * t % ell);
            bool nonsingular = false;
            switch (kind) {
                case SieveKind::TAU_P2:
                    nonsingular = t2 != s11;
                    break;
                case SieveKind::TAU_P4: {
                    std::uint64_t s22 = static_cast<std::uint64_t>(s11) * s11 % ell;
                    std::uint64_t mid = 3 * static_cast<std::uint64_t>(s11) % ell * t2 % ell;
                    nonsingular =
                        (static_cast<std::uint64_t>(t2) * t2 % ell + s22 + 2ULL * ell - mid) %
                            ell !=
                        0;
                    break;
                }
                case SieveKind::TAU_P3:
                    nonsingular = t2 != 2 * s11 % ell && (ell < 13 || t != 0);
                    break;
            }
            if (!nonsingular) continue;
            bool admissible = true;
            switch (ell) {
                case 3:
                    admissible = t == (s + 1) % 3;
                    break;
                case 5:
                    admissible = t == static_cast<std::uint64_t>(s) * s % 5 * ((s3 + 1) % 5) % 5;
                    break;
                case 7:
                    admissible = t == static_cast<std::uint64_t>(s) * ((s3 + 1) % 7) % 7;
                    break;
                case 23:
                    admissible = chi(s) == 1 ? (t == 2 || t == 22) : t == 0;
                    break;
                default:
                    break;
            }
            if (admissible) out.emplace_back(s, t);
        }
    }
    return out;
}

std::vector<bool> compute_D(const NewformEigenData& f, std::uint32_t ell, int j, SieveKind kind) {
    if (kind == SieveKind::TAU_P3)
        throw std::invalid_argument("compute_D: the tau(p^3) analysis has no image map");
    if (j != 1 && j != 3) throw std::invalid_argument("compute_D: j must be 1 or 3");
    auto poly11 = charpoly_mod11(f, ell);
    std::vector<bool> image(ell, false);
    for (const PresieveEntry& e : presieve_table(ell, j, kind))
        if (norm_vanishes_mod11(poly11, e.a)) image[e.img] = true;
    return image;
}

SieveProblem make_sieve_problem(SieveKind kind, const BigInt& kappa, std::uint32_t q,
                                std::uint32_t M, std::uint32_t ell_bound) {
    if (kind == SieveKind::TAU_P3)
        throw std::invalid_argument(
            "make_sieve_problem: the tau(p^3) analysis has fixed levels and no (kappa, q); "
            "use tau_p3_survivors directly");
    if (kappa == 0 || !bi_is_odd(kappa))
        throw std::invalid_argument("make_sieve_problem: kappa must be odd and nonzero");
    if (q < 3 || !is_prime_u64(q)) throw std::invalid_argument("make_sieve_problem: q must be an odd prime");
    if (bi_mod_u64(kappa, q) == 0) throw std::invalid_argument("make_sieve_problem: q must not divide kappa");
    if (M == 0 || M % 22 != 0) throw std::invalid_argument("make_sieve_problem: 22 must divide M");

    SieveProblem prob;
    prob.kind = kind;
    prob.kappa = kappa;
    prob.q = q;
    prob.M = M;

    long rad = radical_long(kappa);
    if (kind == SieveKind::TAU_P2) {
        prob.level_with_q = 32L * rad * q;
        prob.level_without_q = 32L * rad;
    } else {
        if (q == 5) throw std::invalid_argument("make_sieve_problem: q = 5 is excluded for this kind");
        unsigned ord5 = 0;
        BigInt k = abs(kappa);
        while (bi_mod_u64(k, 5) == 0) {
            ++ord5;
            k /= 5;
        }
        if (ord5 > 1)
            throw std::invalid_argument("make_sieve_problem: 25 must not divide kappa for this kind");
        if (ord5 == 0) {
            prob.level_with_q = 8L * 5 * rad * q;
            prob.level_without_q = 8L * 5 * rad;
        } else {
            prob.level_with_q = 8L * 25 * (rad / 5) * q;
            prob.level_without_q = 8L * 25 * (rad / 5);
        }
    }

    for (std::uint32_t ell = 3; ell < ell_bound; ++ell) {
        if (!is_prime_u64(ell) || ell == 11 || ell == q) continue;
        if (kind == SieveKind::TAU_P4 && ell == 5) continue;
        if (bi_mod_u64(kappa, ell) == 0) continue;
        if (M % multiplicative_order(q % ell, ell) == 0) prob.L.push_back(ell);
    }
    return prob;
}

SieveResult run_sieve(const SieveProblem& problem, const NewformEigenData& f) {
    if (problem.kind == SieveKind::TAU_P3)
        throw std::invalid_argument("run_sieve: use tau_p3_survivors for the tau(p^3) analysis");
    bool with_q = f.level == problem.level_with_q;
    if (!with_q && f.level != problem.level_without_q)
        throw std::invalid_argument("run_sieve: newform level " + std::to_string(f.level) +
                                    " matches neither admissible level (" +
                                    std::to_string(problem.level_with_q) + ", " +
                                    std::to_string(problem.level_without_q) + ")");

    const std::uint32_t M = problem.M;
    std::uint32_t kappa4 = static_cast<std::uint32_t>(bi_mod_u64(problem.kappa, 4));
    std::uint32_t q4 = problem.q % 4;

    SieveResult res;
    res.H1.assign(M, false);
    res.H3.assign(M, false);
    for (std::uint32_t beta = 0; beta < M; ++beta) {
        std::uint32_t r4 = kappa4 * ((beta & 1) ? q4 : 1) % 4;
        bool in_e1, in_e3;
        if (problem.kind == SieveKind::TAU_P2) {
            in_e1 = r4 == 3;
            in_e3 = r4 == 1;
        } else {
            in_e1 = in_e3 = r4 == 1;  // tau(p^4) = 1 mod 4 regardless of p mod 4
        }
        bool beta_ok = with_q ? (beta % 11 != 0) : (beta % 11 == 0);
        res.H1[beta] = in_e1 && beta_ok;
        res.H3[beta] = in_e3 && beta_ok;
    }

    for (std::uint32_t ell : problem.L) {
        if (res.empty()) break;
        auto D1 = compute_D(f, ell, 1, problem.kind);
        auto D3 = compute_D(f, ell, 3, problem.kind);
        std::uint32_t kq = static_cast<std::uint32_t>(bi_mod_u64(problem.kappa, ell));
        std::uint32_t qr = problem.q % ell;
        std::uint32_t val = kq;  // kappa * q^beta mod ell, updated incrementally
        for (std::uint32_t beta = 0; beta < M; ++beta) {
            if (!D1[val]) res.H1[beta] = false;
            if (!D3[val]) res.H3[beta] = false;
            val = static_cast<std::uint32_t>(static_cast<std::uint64_t>(val) * qr % ell);
        }
    }
    return res;
}

bool reduction_trace_check(const NewformEigenData& f, std::uint32_t q) {
    if (!f.rational())
        throw std::invalid_argument("reduction_trace_check: newform " + f.label +
                                    " is not rational");
    auto poly = f.charpoly_at(q);
    long aq = -mpz_get_si(poly[0].get_mpz_t());
    long r = ((aq % 11) + 11) % 11;
    long s = (q + 1) % 11;
    return r == s || r == (11 - s) % 11;
}

std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>> tau_p3_survivors(
    const NewformEigenData& f, const std::vector<std::uint32_t>& Ls) {
    std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>> out;
    for (std::uint32_t ell : Ls) {
        check_kind_coprimality(ell, SieveKind::TAU_P3);
        auto poly11 = charpoly_mod11(f, ell);
        auto& list = out[ell];
        for (const PresieveEntry& e : presieve_table(ell, 0, SieveKind::TAU_P3))
            if (norm_vanishes_mod11(poly11, e.a)) list.emplace_back(e.s, e.t);
    }
    return out;
}

}  // namespace taukit
