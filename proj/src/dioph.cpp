#include "taukit/dioph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "taukit/primes.hpp"

namespace taukit {

namespace {

BigInt prime_product(const std::vector<std::uint32_t>& primes) {
    BigInt r(1);
    for (std::uint32_t p : primes) r *= BigInt(p);
    return r;
}

// Exponent vector with value == b * prod p^z (sign rule applied), if any.
std::optional<std::vector<unsigned>> match_value(const TMInstance& inst, const BigInt& v,
                                                 unsigned exp_cap) {
    if (sgn(v) == 0) return std::nullopt;
    if (!inst.either_sign && sgn(v) != sgn(inst.b)) return std::nullopt;
    BigInt a = abs(v);
    BigInt babs = abs(inst.b);
    if (!mpz_divisible_p(a.get_mpz_t(), babs.get_mpz_t())) return std::nullopt;
    a /= babs;
    std::vector<unsigned> exps;
    exps.reserve(inst.primes.size());
    for (std::uint32_t p : inst.primes) {
        BigInt pb(p);
        unsigned long z = mpz_remove(a.get_mpz_t(), a.get_mpz_t(), pb.get_mpz_t());
        if (z > exp_cap) return std::nullopt;
        exps.push_back(static_cast<unsigned>(z));
    }
    if (a != 1) return std::nullopt;
    return exps;
}

bool coprime_condition(const TMInstance& inst, const BigInt& x, const BigInt& y,
                       const BigInt& pprod) {
    if (!inst.coprimality) return true;
    return bi_gcd(bi_gcd(x, y), pprod) == 1;
}

}  // namespace

TMInstance make_tm_instance(BivariatePoly form, BigInt b, std::vector<std::uint32_t> primes,
                            bool coprimality, bool either_sign) {
    if (form.degree() < 3) throw std::invalid_argument("tm instance: form degree must be >= 3");
    if (sgn(b) == 0) throw std::invalid_argument("tm instance: fixed factor b must be nonzero");
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (!is_prime_u64(primes[i]))
            throw std::invalid_argument("tm instance: " + std::to_string(primes[i]) +
                                        " is not prime");
        if (i > 0 && primes[i - 1] >= primes[i])
            throw std::invalid_argument("tm instance: primes must be strictly increasing");
    }
    TMInstance inst;
    inst.form = std::move(form);
    inst.b = std::move(b);
    inst.primes = std::move(primes);
    inst.coprimality = coprimality;
    inst.either_sign = either_sign;
    return inst;
}

bool operator==(const TMSolution& a, const TMSolution& b) {
    return a.x == b.x && a.y == b.y && a.exponents == b.exponents;
}

bool tm_solution_less(const TMSolution& a, const TMSolution& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.exponents < b.exponents;
}

bool SolutionReport::all_valid() const {
    for (const auto& c : checks)
        if (!c.ok()) return false;
    return true;
}

bool SolutionReport::any_prime_11th_power() const {
    for (const auto& c : checks)
        if (c.x_is_prime_11th_power) return true;
    return false;
}

SolutionReport verify_solution_list(const TMInstance& inst, const std::vector<TMSolution>& sols) {
    BigInt pprod = prime_product(inst.primes);
    SolutionReport report;
    report.checks.reserve(sols.size());
    for (const TMSolution& s : sols) {
        if (s.exponents.size() != inst.primes.size())
            throw std::invalid_argument("verify_solution_list: exponent count " +
                                        std::to_string(s.exponents.size()) + " does not match " +
                                        std::to_string(inst.primes.size()) + " primes");
        SolutionCheck check;
        check.sol = s;
        check.value = inst.form.eval(s.x, s.y);
        BigInt rhs = inst.b;
        for (std::size_t i = 0; i < inst.primes.size(); ++i)
            rhs *= bi_pow(BigInt(inst.primes[i]), s.exponents[i]);
        check.equation_ok =
            (check.value == rhs) || (inst.either_sign && check.value == -rhs);
        check.coprime_ok = coprime_condition(inst, s.x, s.y, pprod);
        check.x_is_prime_11th_power = prime_11th_root(s.x).has_value();
        report.checks.push_back(std::move(check));
    }
    return report;
}

std::optional<TMSolution> attach_exponents(const TMInstance& inst, const BigInt& x,
                                           const BigInt& y, unsigned exp_cap) {
    if (sgn(x) == 0 && sgn(y) == 0) return std::nullopt;
    if (!coprime_condition(inst, x, y, prime_product(inst.primes))) return std::nullopt;
    auto exps = match_value(inst, inst.form.eval(x, y), exp_cap);
    if (!exps) return std::nullopt;
    return TMSolution{x, y, std::move(*exps)};
}

std::vector<TMSolution> box_search(const TMInstance& inst, long box, unsigned exp_cap,
                                   unsigned threads) {
    if (box < 1) throw std::invalid_argument("box_search: box must be >= 1");
    const BigInt pprod = prime_product(inst.primes);

    auto scan = [&](long x_lo, long x_hi, std::vector<TMSolution>& out) {
        for (long x = x_lo; x <= x_hi; ++x) {
            BigInt bx(x);
            for (long y = -box; y <= box; ++y) {
                long g = std::gcd(x, y);
                if (g == 0) continue;  // (0, 0)
                if (inst.coprimality && g != 1 && bi_gcd(BigInt(g), pprod) != 1) continue;
                BigInt by(y);
                auto exps = match_value(inst, inst.form.eval(bx, by), exp_cap);
                if (exps) out.push_back(TMSolution{bx, by, std::move(*exps)});
            }
        }
    };

    long span = 2 * box + 1;
    unsigned pool_size = threads == 0 ? 1 : threads;
    if (static_cast<long>(pool_size) > span) pool_size = static_cast<unsigned>(span);

    std::vector<TMSolution> result;
    if (pool_size == 1) {
        scan(-box, box, result);
    } else {
        std::vector<std::vector<TMSolution>> parts(pool_size);
        std::vector<std::thread> pool;
        long chunk = (span + pool_size - 1) / pool_size;
        for (unsigned t = 0; t < pool_size; ++t) {
            long lo = -box + static_cast<long>(t) * chunk;
            long hi = std::min(lo + chunk - 1, box);
            if (lo > hi) break;
            pool.emplace_back(scan, lo, hi, std::ref(parts[t]));
        }
        for (auto& th : pool) th.join();
        for (auto& part : parts)
            for (auto& s : part) result.push_back(std::move(s));
    }
    std::sort(result.begin(), result.end(), tm_solution_less);
    return result;
}

// ---- perfect powers ------------------------------------------------------

bool is_perfect_power(const BigInt& v) {
    int s = sgn(v);
    if (s == 0) return true;  // 0 = 0^2
    BigInt a = abs(v);
    if (a == 1) return true;  // 1 = 1^2, -1 = (-1)^3
    std::size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
    for (unsigned long k = 2; k <= bits; ++k) {
        if (s < 0 && k % 2 == 0) continue;
        BigInt r;
        if (mpz_root(r.get_mpz_t(), a.get_mpz_t(), k)) return true;
    }
    return false;
}

std::optional<BigInt> prime_11th_root(const BigInt& v) {
    if (sgn(v) <= 0) return std::nullopt;
    if (mpz_sizeinbase(v.get_mpz_t(), 2) < 12) return std::nullopt;  // below 2^11
    BigInt r;
    if (!mpz_root(r.get_mpz_t(), v.get_mpz_t(), 11)) return std::nullopt;
    if (!is_probable_prime(r)) return std::nullopt;
    return r;
}

BigInt fibonacci_number(unsigned long n) {
    BigInt r;
    mpz_fib_ui(r.get_mpz_t(), n);
    return r;
}

BigInt lucas_number(unsigned long n) {
    BigInt r;
    mpz_lucnum_ui(r.get_mpz_t(), n);
    return r;
}

PowerScanReport fib_lucas_power_scan(unsigned long n_max) {
    if (n_max < 1) throw std::invalid_argument("fib_lucas_power_scan: n_max must be >= 1");
    PowerScanReport report;
    report.n_max = n_max;
    report.fib_values_expected = true;
    report.lucas_values_expected = true;
    report.prime_11th_free = true;
    const std::set<BigInt> fib_allowed = {BigInt(0), BigInt(1), BigInt(8), BigInt(144)};
    const std::set<BigInt> lucas_allowed = {BigInt(1), BigInt(4)};
    for (unsigned long n = 0; n <= n_max; ++n) {
        BigInt f = fibonacci_number(n);
        if (is_perfect_power(f)) {
            if (!fib_allowed.count(f)) report.fib_values_expected = false;
            report.fib_hits.push_back({n, f});
        }
        if (n % 2 == 0 && prime_11th_root(f)) report.prime_11th_free = false;
        BigInt l = lucas_number(n);
        if (is_perfect_power(l)) {
            if (!lucas_allowed.count(l)) report.lucas_values_expected = false;
            report.lucas_hits.push_back({n, l});
        }
        if (prime_11th_root(l)) report.prime_11th_free = false;
    }
    return report;
}

// ---- (q, m) pair enumeration ---------------------------------------------

namespace {
void collect_prime_divisors_ge7(std::uint64_t t, std::set<std::uint64_t>& out) {
    for (std::uint64_t d = 2; d * d <= t; ++d) {
        if (t % d == 0) {
            while (t % d == 0) t /= d;
            if (d >= 7) out.insert(d);
        }
    }
    if (t >= 7) out.insert(t);
}
}  // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>> qm_pairs(std::uint32_t q_bound) {
    if (q_bound < 3) throw std::invalid_argument("qm_pairs: q_bound must be >= 3");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t q : primes_up_to(q_bound - 1)) {
        std::set<std::uint64_t> ms;
        collect_prime_divisors_ge7(q - 1, ms);
        collect_prime_divisors_ge7(q + 1, ms);
        for (std::uint64_t m : ms) out.emplace_back(q, static_cast<std::uint32_t>(m));
    }
    return out;
}

// ---- explicit bound calculator -------------------------------------------

namespace {
void bg_exponents(unsigned n, unsigned s, unsigned long& e1, unsigned long& e2,
                  unsigned long& e3) {
    if (n < 3 || s < 1)
        throw std::invalid_argument("bound constant: need n >= 3 and s >= 1");
    unsigned long nl = n, sl = s;
    e1 = nl * (2 * sl + 1) + 27;
    e2 = 2 * nl * (7 * sl + 13) + 13;
    e3 = 5 * nl * (sl + 1) + 15;
}
}  // namespace

BigInt bg_constant(unsigned n, unsigned s) {
    unsigned long e1, e2, e3;
    bg_exponents(n, s, e1, e2, e3);
    return bi_pow(3UL, e1) * bi_pow(static_cast<unsigned long>(n), e2) *
           bi_pow(static_cast<unsigned long>(s) + 1, e3);
}

double bg_log_bound(unsigned n, unsigned s, double P, unsigned N, double H, double B,
                    double class_number, double regulator) {
    unsigned long e1, e2, e3;
    bg_exponents(n, s, e1, e2, e3);
    if (!(P > 0) || N == 0) throw std::invalid_argument("bound: P and N must be positive");
    if (!(H >= 3)) throw std::invalid_argument("bound: H must be >= 3");
    if (!(B >= 2.71828182845904523L))
        throw std::invalid_argument("bound: B must be >= e");
    if (!(class_number > 0) || !(regulator > 0))
        throw std::invalid_argument("bound: class number and regulator must be positive");

    auto star = [](long double t) { return std::max(static_cast<long double>(1), t); };
    long double log_c = static_cast<long double>(e1) * std::log(3.0L) +
                        static_cast<long double>(e2) * std::log(static_cast<long double>(n)) +
                        static_cast<long double>(e3) * std::log(static_cast<long double>(s) + 1);
    long double log_p = std::log(static_cast<long double>(P));
    long double rh = static_cast<long double>(regulator) * class_number;
    long double tail = static_cast<long double>(regulator) +
                       static_cast<long double>(s) * class_number +
                       std::log(static_cast<long double>(H) * B);
    long double total = log_c + static_cast<long double>(N) * log_p +
                        static_cast<long double>(n) * s * std::log(star(log_p)) +
                        2 * std::log(star(log_p)) + std::log(rh) +
                        2 * std::log(star(std::log(rh))) + std::log(tail);
    return static_cast<double>(total);
}

// ---- bundled instances and solution lists --------------------------------

namespace {

const char* kCubicForm = "-X^3+6X^2Y-5XY^2+Y^3";

const char* kDegree20Form =
    "X^20-210X^19Y+7315X^18Y^2-100947X^17Y^3+735471X^16Y^4-3268760X^15Y^5"
    "+9657700X^14Y^6-20058300X^13Y^7+30421755X^12Y^8-34597290X^11Y^9"
    "+30045015X^10Y^10-20160075X^9Y^11+10518300X^8Y^12-4272048X^7Y^13"
    "+1344904X^6Y^14-324632X^5Y^15+58905X^4Y^16-7770X^3Y^17+703X^2Y^18"
    "-39XY^19+Y^20";

const char* kUnitThueForm =
    "X^11+22X^10Y+165X^9Y^2+990X^8Y^3+2970X^7Y^4+8316X^6Y^5+12474X^5Y^6"
    "+17820X^4Y^7+13365X^3Y^8+8910X^2Y^9+2673XY^10+486Y^11";

std::vector<TMSolution> triples_to_solutions(const long (*t)[3], std::size_t count) {
    std::vector<TMSolution> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(TMSolution{BigInt(t[i][0]), BigInt(t[i][1]),
                                 {static_cast<unsigned>(t[i][2])}});
    return out;
}

}  // namespace

TMInstance cubic_83_instance() {
    return make_tm_instance(parse_poly(kCubicForm), BigInt(1), {83});
}

std::vector<TMSolution> cubic_83_solutions() {
    static const long kTriples[36][3] = {
        {5, 1, 0},     {-9, -14, 0},  {2, 3, 0},    {-7, -1, 1},  {5, 2, 1},
        {0, 1, 0},     {-1, -2, 0},   {-17, -38, 2}, {-8, -13, 1}, {13, 20, 1},
        {1, 1, 0},     {4, 13, 0},    {-6, -19, 1}, {-1, 0, 0},   {21, 25, 2},
        {3, 11, 1},    {-4, 13, 2},   {-1, -3, 0},  {-5, -2, 1},  {0, -1, 0},
        {17, 38, 2},   {6, 19, 1},    {7, 1, 1},    {1, 0, 0},    {-4, -13, 0},
        {4, -13, 2},   {9, 14, 0},    {-3, -11, 1}, {1, 3, 0},    {-1, -1, 0},
        {-13, -20, 1}, {-5, -1, 0},   {-21, -25, 2}, {8, 13, 1},  {1, 2, 0},
        {-2, -3, 0}};
    return triples_to_solutions(kTriples, 36);
}

TMInstance degree20_83_instance() {
    return make_tm_instance(parse_poly(kDegree20Form), BigInt(1), {83});
}

std::vector<TMSolution> degree20_83_solutions() {
    static const long kTriples[10][3] = {
        {-1, -3, 0}, {-1, -2, 0}, {1, 2, 0}, {1, 0, 0}, {-1, 0, 0},
        {1, 3, 0},   {0, 1, 0},   {0, -1, 0}, {1, 1, 0}, {-1, -1, 0}};
    return triples_to_solutions(kTriples, 10);
}

TMInstance unit_thue_instance() {
    return make_tm_instance(parse_poly(kUnitThueForm), BigInt(1), {}, true, false);
}

TMInstance cubic_smooth_instance() {
    return make_tm_instance(parse_poly(kCubicForm), BigInt(1),
                            {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37});
}

std::vector<std::pair<long, long>> cubic_smooth_pairs() {
    return {{31, 105},  {33, 107},  {33, 109},   {41, 124},  {67, 219},  {74, 115},
            {74, 117},  {76, 119},  {83, 125},   {152, 237}, {207, -152}, {251, 815},
            {313, 62},  {359, 925}, {564, 877},  {566, 773}};
}

// ---- fixture files -------------------------------------------------------

namespace {

[[noreturn]] void fixture_fail(std::size_t line, const std::string& what) {
    throw std::runtime_error("fixture parse error at line " + std::to_string(line) + ": " + what);
}

bool digits_only(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

BigInt parse_int(const std::string& tok, std::size_t line) {
    std::string body = (tok.size() > 1 && (tok[0] == '-' || tok[0] == '+')) ? tok.substr(1) : tok;
    if (!digits_only(body)) fixture_fail(line, "expected an integer, got '" + tok + "'");
    return BigInt(tok, 10);
}

unsigned long parse_unsigned(const std::string& tok, std::size_t line) {
    if (!digits_only(tok)) fixture_fail(line, "expected a nonnegative integer, got '" + tok + "'");
    return std::stoul(tok);
}

}  // namespace

std::string format_tm_fixtures(const std::vector<TMFixture>& fixtures) {
    std::ostringstream out;
    out << "# Binary-form instances with their known solution lists.\n";
    for (const TMFixture& f : fixtures) {
        out << "\nINSTANCE " << f.name << "\n";
        out << "FORM " << to_string(f.inst.form) << "\n";
        out << "B " << f.inst.b.get_str() << "\n";
        out << "PRIMES";
        for (std::uint32_t p : f.inst.primes) out << ' ' << p;
        out << "\n";
        out << "COPRIME " << (f.inst.coprimality ? 1 : 0) << "\n";
        out << "SIGN " << (f.inst.either_sign ? "either" : "exact") << "\n";
        for (const TMSolution& s : f.sols) {
            out << "SOL " << s.x.get_str() << ' ' << s.y.get_str();
            for (unsigned z : s.exponents) out << ' ' << z;
            out << "\n";
        }
        out << "END\n";
    }
    return out.str();
}

std::vector<TMFixture> parse_tm_fixtures(std::istream& in) {
    std::vector<TMFixture> fixtures;
    bool open = false;
    std::string name;
    BivariatePoly form;
    bool have_form = false;
    BigInt b;
    std::vector<std::uint32_t> primes;
    bool coprime = true, either = true;
    std::vector<TMSolution> sols;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key) || key[0] == '#') continue;
        if (key == "INSTANCE") {
            if (open) fixture_fail(lineno, "INSTANCE before previous END");
            if (!(ls >> name)) fixture_fail(lineno, "INSTANCE needs a name");
            open = true;
            have_form = false;
            b = 1;
            primes.clear();
            coprime = true;
            either = true;
            sols.clear();
            continue;
        }
        if (!open) fixture_fail(lineno, "'" + key + "' outside an INSTANCE block");
        if (key == "FORM") {
            std::string text;
            if (!(ls >> text)) fixture_fail(lineno, "FORM needs a polynomial");
            try {
                form = parse_poly(text);
            } catch (const std::exception& e) {
                fixture_fail(lineno, e.what());
            }
            have_form = true;
        } else if (key == "B") {
            std::string tok;
            if (!(ls >> tok)) fixture_fail(lineno, "B needs a value");
            b = parse_int(tok, lineno);
        } else if (key == "PRIMES") {
            primes.clear();
            std::string tok;
            while (ls >> tok)
                primes.push_back(static_cast<std::uint32_t>(parse_unsigned(tok, lineno)));
        } else if (key == "COPRIME") {
            std::string tok;
            if (!(ls >> tok) || (tok != "0" && tok != "1"))
                fixture_fail(lineno, "COPRIME must be 0 or 1");
            coprime = tok == "1";
        } else if (key == "SIGN") {
            std::string tok;
            if (!(ls >> tok) || (tok != "either" && tok != "exact"))
                fixture_fail(lineno, "SIGN must be 'either' or 'exact'");
            either = tok == "either";
        } else if (key == "SOL") {
            std::vector<std::string> toks;
            std::string tok;
            while (ls >> tok) toks.push_back(tok);
            if (toks.size() != 2 + primes.size())
                fixture_fail(lineno, "SOL needs x, y and " + std::to_string(primes.size()) +
                                         " exponents");
            TMSolution s;
            s.x = parse_int(toks[0], lineno);
            s.y = parse_int(toks[1], lineno);
            for (std::size_t i = 2; i < toks.size(); ++i)
                s.exponents.push_back(static_cast<unsigned>(parse_unsigned(toks[i], lineno)));
            sols.push_back(std::move(s));
        } else if (key == "END") {
            if (!have_form) fixture_fail(lineno, "instance '" + name + "' has no FORM");
            TMFixture fx;
            fx.name = name;
            try {
                fx.inst = make_tm_instance(form, b, primes, coprime, either);
            } catch (const std::exception& e) {
                fixture_fail(lineno, e.what());
            }
            fx.sols = std::move(sols);
            sols.clear();
            fixtures.push_back(std::move(fx));
            open = false;
        } else {
            fixture_fail(lineno, "unknown keyword '" + key + "'");
        }
    }
    if (open) fixture_fail(lineno, "missing END for instance '" + name + "'");
    return fixtures;
}

std::vector<TMFixture> load_tm_fixture_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fixture file: " + path);
    return parse_tm_fixtures(in);
}

}  // namespace taukit
