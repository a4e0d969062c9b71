#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "taukit/curvecount.hpp"
#include "taukit/eigendata.hpp"
#include "taukit/primes.hpp"
#include "taukit/sieve.hpp"

using namespace taukit;

namespace {

// Independent check: count affine solutions of the general Weierstrass
// equation by a full double loop, no character table.
int oracle_ap(std::uint32_t ell, long a1, long a2, long a3, long a4, long a6) {
    auto m = [&](long v) { return static_cast<std::uint64_t>(((v % static_cast<long>(ell)) + ell) % ell); };
    std::uint64_t points = 1;  // point at infinity
    for (std::uint64_t x = 0; x < ell; ++x)
        for (std::uint64_t y = 0; y < ell; ++y) {
            std::uint64_t lhs = (y * y + m(a1) * x % ell * y + m(a3) * y) % ell;
            std::uint64_t rhs = (x * x % ell * x + m(a2) * x % ell * x + m(a4) * x + m(a6)) % ell;
            if (lhs == rhs) ++points;
        }
    return static_cast<int>(static_cast<long>(ell) + 1 - static_cast<long>(points));
}

std::uint32_t naive_pow(std::uint32_t base, unsigned exp, std::uint32_t m) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) r = r * base % m;
    return static_cast<std::uint32_t>(r);
}

bool naive_is_square(std::uint32_t v, std::uint32_t ell) {
    for (std::uint32_t y = 0; y < ell; ++y)
        if (y * y % ell == v) return true;
    return false;
}

// Independent recomputation of the admissible pairs, written directly from
// the defining conditions with scalar arithmetic.
std::vector<std::pair<std::uint32_t, std::uint32_t>> oracle_pairs(std::uint32_t ell,
                                                                  SieveKind kind) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t s = 1; s < ell; ++s)
        for (std::uint32_t t = 0; t < ell; ++t) {
            std::uint32_t s11 = naive_pow(s, 11, ell);
            std::uint32_t t2 = t * t % ell;
            bool ok = true;
            if (kind == SieveKind::TAU_P2) {
                ok = t2 != s11;
            } else if (kind == SieveKind::TAU_P4) {
                std::uint64_t q1 = static_cast<std::uint64_t>(t2) * t2 % ell;
                std::uint64_t q2 = 3ULL * s11 % ell * t2 % ell;
                std::uint64_t q3 = static_cast<std::uint64_t>(s11) * s11 % ell;
                ok = (q1 + q3 + 2 * ell - q2) % ell != 0;
            } else {
                std::uint32_t d = (t2 + 2 * ell - 2 * s11 % ell) % ell;
                ok = d != 0 && (ell < 13 || t != 0);
            }
            if (!ok) continue;
            if (ell == 3) ok = t == (s + 1) % 3;
            else if (ell == 5) ok = t == s * s % 5 * ((s * s % 5 * s + 1) % 5) % 5;
            else if (ell == 7) ok = t == s * ((s * s % 7 * s + 1) % 7) % 7;
            else if (ell == 23) ok = naive_is_square(s, 23) ? (t == 2 || t == 22) : t == 0;
            if (ok) out.emplace_back(s, t);
        }
    return out;
}

NewformEigenData load_one(const std::string& text) {
    std::istringstream in(text);
    auto v = load_eigendata(in);
    REQUIRE(v.size() == 1);
    return v[0];
}

const char* kCurve32 = "CURVE 32 a1 0 0 0 -1 0\n";
const char* kCurve96A = "CURVE 96 a1 0 4 0 3 0\n";
const char* kCurve96B = "CURVE 96 b1 0 -4 0 3 0\n";

std::set<std::uint32_t> bitmap_to_set(const std::vector<bool>& bm) {
    std::set<std::uint32_t> s;
    for (std::uint32_t i = 0; i < bm.size(); ++i)
        if (bm[i]) s.insert(i);
    return s;
}

std::vector<std::uint32_t> survivors(const ResidueSet& h) {
    std::vector<std::uint32_t> v;
    for (std::uint32_t i = 0; i < h.size(); ++i)
        if (h[i]) v.push_back(i);
    return v;
}

}  // namespace

TEST_CASE("curve traces match brute-force enumeration across shapes") {
    for (std::uint32_t ell : {3u, 5u, 7u, 11u, 13u}) {
        for (long a2 = 0; a2 < static_cast<long>(ell); ++a2)
            for (long a4 = 0; a4 < static_cast<long>(ell); ++a4)
                for (long a6 : {0L, 1L}) {
                    CurveModEll c = make_curve(ell, 0, a2, 0, a4, a6);
                    if (c.singular()) continue;
                    int a = ap_point_count(c);
                    CHECK(a == oracle_ap(ell, 0, a2, 0, a4, a6));
                    CHECK(static_cast<long>(a) * a <= 4 * static_cast<long>(ell));
                }
    }
    // general a1, a3 terms
    for (auto [a1, a2, a3, a4, a6] :
         std::vector<std::array<long, 5>>{{1, 0, 1, -1, 2}, {1, 1, 0, 3, 5}, {0, 2, 1, 0, -3}}) {
        for (std::uint32_t ell : {5u, 13u, 97u}) {
            CurveModEll c = make_curve(ell, a1, a2, a3, a4, a6);
            if (c.singular()) continue;
            CHECK(ap_point_count(c) == oracle_ap(ell, a1, a2, a3, a4, a6));
        }
    }
}

TEST_CASE("known curve traces and error paths") {
    CHECK(ap_point_count(make_curve(5, 0, 0, 0, -1, 0)) == -2);
    CHECK(ap_point_count(make_curve(11, 0, 4, 0, 3, 0)) == 4);
    CHECK_THROWS_AS(ap_point_count(make_curve(5, 0, 0, 0, 0, 0)), std::domain_error);
    CHECK_THROWS_AS(make_curve(2, 0, 1, 0, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_curve(9, 0, 1, 0, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_curve(1009, 0, 1, 0, 1, 0), std::invalid_argument);

    QuadTable chi7(7);
    for (std::uint32_t x : {1u, 2u, 4u}) CHECK(chi7(x) == 1);
    for (std::uint32_t x : {3u, 5u, 6u}) CHECK(chi7(x) == -1);
    CHECK(chi7(0) == 0);
    CHECK_THROWS_AS(ap_point_count(make_curve(5, 0, 1, 0, 1, 0), chi7), std::invalid_argument);
}

TEST_CASE("eigendata parsing round trip") {
    std::istringstream empty("");
    CHECK(load_eigendata(empty).empty());

    std::istringstream two(
        "NEWFORM 1056 x 2\n"
        "AP 5 -2 0 1\n"
        "AP 7 2 -3 1\n"
        "\n"
        "CURVE 32 a1 0 0 0 -1 0\n");
    auto v = load_eigendata(two);
    REQUIRE(v.size() == 2);
    CHECK(v[0].level == 1056);
    CHECK(v[0].label == "x");
    CHECK(v[0].degree == 2);
    CHECK_FALSE(v[0].rational());
    REQUIRE(v[0].charpolys.count(5) == 1);
    CHECK(v[0].charpolys.at(5) == std::vector<BigInt>{-2, 0, 1});
    CHECK(v[0].has_eigenvalue(7));
    CHECK_FALSE(v[0].has_eigenvalue(13));
    CHECK_THROWS_AS(v[0].charpoly_at(13), MissingEigenvalueError);

    CHECK(v[1].rational());
    CHECK(v[1].curve.has_value());
    CHECK(v[1].curve_ap(5) == -2);
    CHECK(v[1].charpoly_at(5) == std::vector<BigInt>{2, 1});
    CHECK(v[1].has_eigenvalue(3));
    CHECK_FALSE(v[1].has_eigenvalue(2));  // even level: bad reduction
    CHECK_THROWS_AS(v[1].curve_ap(2), MissingEigenvalueError);
}

TEST_CASE("eigendata rejects malformed input with line numbers") {
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return load_eigendata(in);
    };
    CHECK_THROWS_WITH_AS(parse("BOGUS 1 2\n"), doctest::Contains("line 1"), EigendataParseError);
    CHECK_THROWS_WITH_AS(parse("AP 3 0 1\n"), doctest::Contains("line 1"), EigendataParseError);
    CHECK_THROWS_WITH_AS(parse("NEWFORM 32 f 1\nAP 3 0 1\nAP 3 1 1\n"),
                         doctest::Contains("line 3"), EigendataParseError);
    CHECK_THROWS_AS(parse("NEWFORM 32 f\n"), EigendataParseError);
    CHECK_THROWS_AS(parse("NEWFORM 32 f 1\nAP 3 zz 1\n"), EigendataParseError);
    CHECK_THROWS_AS(parse("CURVE 32 a1 0 0 0 -1\n"), EigendataParseError);

    // validation: non-monic, degree mismatch, composite index, trace too large
    CHECK_THROWS_WITH_AS(parse("NEWFORM 32 f 1\nAP 3 1 2\n"), doctest::Contains("monic"),
                         EigendataValidationError);
    CHECK_THROWS_WITH_AS(parse("NEWFORM 32 f 2\nAP 3 0 1\n"), doctest::Contains("degree"),
                         EigendataValidationError);
    CHECK_THROWS_AS(parse("NEWFORM 32 f 1\nAP 4 0 1\n"), EigendataValidationError);
    CHECK_THROWS_WITH_AS(parse("NEWFORM 32 f 1\nAP 3 -5 1\n"), doctest::Contains("bound"),
                         EigendataValidationError);
    CHECK_THROWS_AS(load_eigendata_file("/nonexistent/eigendata.txt"), EigendataParseError);
}

TEST_CASE("real root localization by sign changes") {
    // (x-1)(x-2)(x-3)
    std::vector<BigInt> cubic{-6, 11, -6, 1};
    CHECK(sturm_root_count(cubic, Rational(0), Rational(4)) == 3);
    CHECK(sturm_root_count(cubic, Rational(1), Rational(3)) == 2);
    CHECK(sturm_root_count(cubic, Rational(3), Rational(10)) == 0);
    CHECK(sturm_root_count(cubic, Rational(-10), Rational(0)) == 0);
    // repeated root counts once
    CHECK(sturm_root_count({1, -2, 1}, Rational(0), Rational(2)) == 1);

    CHECK(ramanujan_bound_holds({-1, 1}, 3));
    CHECK_FALSE(ramanujan_bound_holds({-5, 1}, 3));
    CHECK(ramanujan_bound_holds({-3, 0, 1}, 3));
    CHECK_FALSE(ramanujan_bound_holds({-13, 0, 1}, 3));
    CHECK(ramanujan_bound_holds({-13, 0, 1}, 5));
    // power of a linear factor, root inside the bound
    CHECK(ramanujan_bound_holds({4, -4, 1}, 3));
}

TEST_CASE("norm divisibility by 11") {
    auto f32 = load_one(kCurve32);
    CHECK(f32.norm_divisible_11(3, 0));
    CHECK(f32.norm_divisible_11(3, 11));
    CHECK_FALSE(f32.norm_divisible_11(3, 3));

    std::istringstream in("NEWFORM 99 y 2\nAP 3 -5 0 1\n");
    auto fq = load_eigendata(in).at(0);
    CHECK(fq.norm_divisible_11(3, 4));    // 16 - 5 = 11
    CHECK(fq.norm_divisible_11(3, -4));
    CHECK_FALSE(fq.norm_divisible_11(3, 1));
}

TEST_CASE("admissible pair sets: worked examples") {
    using PairVec = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
    CHECK(build_B(3, SieveKind::TAU_P2) == PairVec{{2, 0}});
    CHECK(build_B(5, SieveKind::TAU_P2) == PairVec{{1, 2}, {2, 1}, {3, 2}, {4, 0}});
    CHECK(build_B(13, SieveKind::TAU_P2).size() == 144);
    CHECK(build_B(3, SieveKind::TAU_P3) == PairVec{{1, 2}, {2, 0}});

    auto b23 = build_B(23, SieveKind::TAU_P2);
    CHECK(b23.size() == 22);
    QuadTable chi(23);
    for (auto [s, t] : b23) {
        if (t == 0) CHECK(chi(s) == -1);
        else {
            CHECK(t == 2);
            CHECK(chi(s) == 1);
        }
    }

    CHECK_THROWS_AS(build_B(11, SieveKind::TAU_P2), std::invalid_argument);
    CHECK_THROWS_AS(build_B(5, SieveKind::TAU_P4), std::invalid_argument);
    CHECK_THROWS_AS(build_B(5, SieveKind::TAU_P3), std::invalid_argument);
    CHECK_THROWS_AS(build_B(4, SieveKind::TAU_P2), std::invalid_argument);
}

TEST_CASE("admissible pair sets match the scalar recomputation") {
    for (SieveKind kind : {SieveKind::TAU_P2, SieveKind::TAU_P4, SieveKind::TAU_P3}) {
        for (std::uint32_t ell : {3u, 5u, 7u, 13u, 23u, 29u}) {
            if (ell == 5 && kind != SieveKind::TAU_P2) continue;
            CAPTURE(static_cast<int>(kind));
            CAPTURE(ell);
            CHECK(build_B(ell, kind) == oracle_pairs(ell, kind));
        }
    }
}

TEST_CASE("eigenvalue congruence images match the scalar recomputation") {
    auto f32 = load_one(kCurve32);
    std::istringstream in(
        "NEWFORM 1056 syn 2\n"
        "AP 3 -2 0 1\n"
        "AP 5 -1 -1 1\n"
        "AP 7 -4 0 1\n"
        "AP 13 -6 0 1\n"
        "AP 23 1 3 1\n");
    auto fsyn = load_eigendata(in).at(0);

    for (const NewformEigenData* f : {&f32, &fsyn}) {
        for (SieveKind kind : {SieveKind::TAU_P2, SieveKind::TAU_P4}) {
            for (std::uint32_t ell : {3u, 5u, 7u, 13u, 23u}) {
                if (ell == 5 && kind == SieveKind::TAU_P4) continue;
                if (f->rational() && f->level % ell == 0) continue;
                for (int j : {1, 3}) {
                    std::set<std::uint32_t> expected;
                    for (auto [s, t] : oracle_pairs(ell, kind)) {
                        std::uint32_t s11 = naive_pow(s, 11, ell);
                        std::uint32_t t2 = t * t % ell;
                        std::uint32_t img, a2v, a4v;
                        if (kind == SieveKind::TAU_P2) {
                            img = (t2 + ell - s11) % ell;
                            a2v = 2 * t % ell;
                            a4v = j == 1 ? img : s11;
                        } else {
                            std::uint32_t q1 = static_cast<std::uint32_t>(
                                static_cast<std::uint64_t>(t2) * t2 % ell);
                            std::uint32_t q2 = static_cast<std::uint32_t>(
                                3ULL * s11 % ell * t2 % ell);
                            std::uint32_t q3 = static_cast<std::uint32_t>(
                                static_cast<std::uint64_t>(s11) * s11 % ell);
                            img = (q1 + q3 + 2 * ell - q2) % ell;
                            a4v = img;
                            std::uint32_t twot2 = 2 * t2 % ell, th = 3 * s11 % ell;
                            a2v = j == 1 ? (th + ell - twot2) % ell : (twot2 + ell - th) % ell;
                        }
                        int a = oracle_ap(ell, 0, a2v, 0, a4v, 0);
                        // exact integer evaluation of the characteristic polynomial
                        BigInt acc = 0;
                        auto poly = f->charpoly_at(ell);
                        for (auto it = poly.rbegin(); it != poly.rend(); ++it)
                            acc = acc * a + *it;
                        if (bi_mod_u64(acc, 11) == 0) expected.insert(img);
                    }
                    CAPTURE(f->label);
                    CAPTURE(ell);
                    CAPTURE(j);
                    CHECK(bitmap_to_set(compute_D(*f, ell, j, kind)) == expected);
                }
            }
        }
    }

    CHECK_THROWS_AS(compute_D(f32, 3, 1, SieveKind::TAU_P3), std::invalid_argument);
    CHECK_THROWS_AS(compute_D(f32, 3, 2, SieveKind::TAU_P2), std::invalid_argument);
    CHECK_THROWS_AS(compute_D(fsyn, 19, 1, SieveKind::TAU_P2), MissingEigenvalueError);
}

TEST_CASE("self-pair obstruction: matching curve values always survive") {
    auto f32 = load_one(kCurve32);
    auto f96a = load_one(kCurve96A);
    for (std::uint32_t ell = 3; ell < 60; ++ell) {
        if (!is_prime_u64(ell) || ell == 11) continue;
        CAPTURE(ell);
        CHECK(compute_D(f32, ell, 3, SieveKind::TAU_P2)[1]);
        if (ell % 3 != 0) CHECK(compute_D(f96a, ell, 1, SieveKind::TAU_P2)[3]);
    }
}

TEST_CASE("sieve problem construction and validation") {
    auto prob = make_sieve_problem(SieveKind::TAU_P2, 3, 11, 396);
    CHECK(prob.level_with_q == 1056);
    CHECK(prob.level_without_q == 96);
    // independent recomputation of the auxiliary prime set
    std::vector<std::uint32_t> expected;
    for (std::uint32_t ell = 3; ell < 200; ++ell) {
        if (!is_prime_u64(ell) || ell == 11 || ell == 3) continue;
        std::uint32_t v = 11 % ell, ord = 1;
        while (v != 1) {
            v = v * 11 % ell;
            ++ord;
        }
        if (396 % ord == 0) expected.push_back(ell);
    }
    CHECK(prob.L == expected);
    CHECK(std::count(prob.L.begin(), prob.L.end(), 5) == 1);
    CHECK(std::count(prob.L.begin(), prob.L.end(), 7) == 1);
    CHECK(std::count(prob.L.begin(), prob.L.end(), 3) == 0);

    auto p4 = make_sieve_problem(SieveKind::TAU_P4, 5, 11, 396);
    CHECK(p4.level_with_q == 2200);
    CHECK(p4.level_without_q == 200);
    CHECK(std::count(p4.L.begin(), p4.L.end(), 5) == 0);
    auto p4n = make_sieve_problem(SieveKind::TAU_P4, -5, 11, 396);
    CHECK(p4n.level_with_q == 2200);
    auto p41 = make_sieve_problem(SieveKind::TAU_P4, 1, 11, 396);
    CHECK(p41.level_with_q == 440);
    CHECK(p41.level_without_q == 40);

    CHECK_THROWS_AS(make_sieve_problem(SieveKind::TAU_P2, 2, 11, 396), std::invalid_argument);
    CHECK_THROWS_AS(make_sieve_problem(SieveKind::TAU_P2, 0, 11, 396), std::invalid_argument);
    CHECK_THROWS_AS(make_sieve_problem(SieveKind::TAU_P2, 3, 9, 396), std::invalid_argument);
    CHECK_THROWS_AS(make_sieve_problem(SieveKind::TAU_P2, 33, 3, 396), std::invalid_argument);
    CHECK_THROWS_AS(make_sieve_problem(SieveKind::TAU_P2, 3, 11, 100), std::invalid_argument);
    CHECK_THROWS_AS(make_sieve_problem(SieveKind::TAU_P4, 25, 11, 396), std::invalid_argument);
    CHECK_THROWS_AS(make_sieve_problem(SieveKind::TAU_P4, 3, 5, 396), std::invalid_argument);
    CHECK_THROWS_AS(make_sieve_problem(SieveKind::TAU_P3, 1, 11, 396), std::invalid_argument);

    CHECK(multiplicative_order(11, 23) == 22);
    CHECK(multiplicative_order(1, 7) == 1);
    CHECK_THROWS_AS(multiplicative_order(6, 9), std::invalid_argument);
}

TEST_CASE("residue sieve reproduces the recorded level-96 campaign") {
    auto f96a = load_one(kCurve96A);
    auto f96b = load_one(kCurve96B);
    CHECK(f96a.curve_ap(11) == 4);
    CHECK(f96b.curve_ap(11) == -4);

    auto prob = make_sieve_problem(SieveKind::TAU_P2, 3, 11, 396);
    auto ra = run_sieve(prob, f96a);
    std::vector<std::uint32_t> multiples_of_22;
    for (std::uint32_t b = 0; b < 396; b += 22) multiples_of_22.push_back(b);
    CHECK(survivors(ra.H1) == multiples_of_22);
    CHECK(survivors(ra.H1).size() == 18);
    CHECK(survivors(ra.H3).empty());
    CHECK_FALSE(ra.empty());

    auto rb = run_sieve(prob, f96b);
    CHECK(rb.empty());

    CHECK_FALSE(reduction_trace_check(f96a, 11));
    CHECK_FALSE(reduction_trace_check(f96b, 11));
}

TEST_CASE("residue sieve structure: empty prime set, monotonicity, errors") {
    auto f96a = load_one(kCurve96A);
    auto base = make_sieve_problem(SieveKind::TAU_P2, 3, 11, 396);

    SieveProblem no_filter = base;
    no_filter.L.clear();
    auto r0 = run_sieve(no_filter, f96a);
    for (std::uint32_t b = 0; b < 396; ++b) {
        CHECK(r0.H1[b] == (b % 22 == 0));
        CHECK(r0.H3[b] == (b % 22 == 11));
    }

    // adding primes can only remove survivors
    auto prev = r0;
    for (std::size_t k = 1; k <= base.L.size(); ++k) {
        SieveProblem partial = base;
        partial.L.assign(base.L.begin(), base.L.begin() + static_cast<long>(k));
        auto r = run_sieve(partial, f96a);
        for (std::uint32_t b = 0; b < 396; ++b) {
            CHECK((!r.H1[b] || prev.H1[b]));
            CHECK((!r.H3[b] || prev.H3[b]));
        }
        prev = r;
    }

    auto f32 = load_one(kCurve32);
    CHECK_THROWS_AS(run_sieve(base, f32), std::invalid_argument);
    SieveProblem p3;
    p3.kind = SieveKind::TAU_P3;
    CHECK_THROWS_AS(run_sieve(p3, f96a), std::invalid_argument);

    std::istringstream in("NEWFORM 1056 syn 2\nAP 3 -2 0 1\n");
    auto fsyn = load_eigendata(in).at(0);
    CHECK_THROWS_AS(run_sieve(base, fsyn), MissingEigenvalueError);
}

TEST_CASE("good-reduction trace compatibility check") {
    std::istringstream yes("NEWFORM 15 r 1\nAP 7 -3 1\n");
    auto fy = load_eigendata(yes).at(0);
    CHECK(reduction_trace_check(fy, 7));  // a_7 = 3 and -(7+1) = 3 mod 11

    std::istringstream no("NEWFORM 15 s 1\nAP 7 0 1\n");
    auto fn = load_eigendata(no).at(0);
    CHECK_FALSE(reduction_trace_check(fn, 7));

    std::istringstream deg2("NEWFORM 15 t 2\nAP 7 -4 0 1\n");
    auto f2 = load_eigendata(deg2).at(0);
    CHECK_THROWS_AS(reduction_trace_check(f2, 7), std::invalid_argument);
}

TEST_CASE("cubic-relation survivors: matching form keeps its pair everywhere") {
    // a rational eigensystem manufactured from one member of the curve family:
    // s = 1, t = 2 reduces into the admissible set at every tested prime
    std::ostringstream data;
    data << "NEWFORM 256 fake 1\n";
    for (std::uint32_t ell : {3u, 7u, 13u, 23u})
        data << "AP " << ell << " " << -oracle_ap(ell, 0, 4, 0, 2, 0) << " 1\n";
    auto fake = load_one(data.str());

    auto surv = tau_p3_survivors(fake);
    REQUIRE(surv.size() == 4);
    for (std::uint32_t ell : {3u, 7u, 13u, 23u}) {
        REQUIRE(surv.count(ell) == 1);
        auto& list = surv.at(ell);
        CHECK_FALSE(list.empty());
        CHECK(std::count(list.begin(), list.end(), std::make_pair(1u, 2u)) == 1);
        // every survivor is an admissible pair
        auto b = build_B(ell, SieveKind::TAU_P3);
        for (auto& st : list) CHECK(std::count(b.begin(), b.end(), st) == 1);
    }

    auto f32 = load_one(kCurve32);
    auto s32 = tau_p3_survivors(f32);
    CHECK(s32.size() == 4);
    CHECK_THROWS_AS(tau_p3_survivors(f32, {5}), std::invalid_argument);
}
