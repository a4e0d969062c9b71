#include "taukit/eigendata.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "taukit/curvecount.hpp"
#include "taukit/primes.hpp"

namespace taukit {

namespace {

using QPoly = std::vector<Rational>;  // ascending coefficients

int sgn(const Rational& v) { return mpq_sgn(v.get_mpq_t()); }

int degree_of(const QPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (sgn(p[i]) != 0) return i;
    return -1;  // zero polynomial
}

QPoly trim(QPoly p) {
    int d = degree_of(p);
    p.resize(static_cast<std::size_t>(d + 1 > 0 ? d + 1 : 0));
    return p;
}

QPoly derivative(const QPoly& p) {
    QPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    return trim(std::move(d));
}

// Remainder of a by b (b nonzero), standard long division over Q.
QPoly poly_rem(QPoly a, const QPoly& b) {
    int db = degree_of(b);
    int da = degree_of(a);
    while (da >= db && da >= 0) {
        Rational factor = a[da] / b[db];
        for (int i = 0; i <= db; ++i) a[da - db + i] -= factor * b[i];
        a[da] = 0;
        da = degree_of(a);
    }
    return trim(std::move(a));
}

Rational eval_at(const QPoly& p, const Rational& x) {
    Rational acc = 0;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) acc = acc * x + p[i];
    return acc;
}

std::vector<QPoly> sturm_chain(const QPoly& poly) {
    std::vector<QPoly> chain;
    chain.push_back(trim(poly));
    QPoly d = derivative(chain[0]);
    if (degree_of(d) < 0) return chain;
    chain.push_back(d);
    while (true) {
        const QPoly& a = chain[chain.size() - 2];
        const QPoly& b = chain.back();
        if (degree_of(b) <= 0) break;
        QPoly r = poly_rem(a, b);
        if (degree_of(r) < 0) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_changes(const std::vector<int>& signs) {
    int count = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

int variations_at(const std::vector<QPoly>& chain, const Rational& x) {
    std::vector<int> signs;
    for (const auto& p : chain) signs.push_back(sgn(eval_at(p, x)));
    return sign_changes(signs);
}

int variations_at_infinity(const std::vector<QPoly>& chain, bool positive) {
    std::vector<int> signs;
    for (const auto& p : chain) {
        int d = degree_of(p);
        if (d < 0) {
            signs.push_back(0);
            continue;
        }
        int lead = sgn(p[static_cast<std::size_t>(d)]);
        signs.push_back(positive ? lead : (d % 2 == 0 ? lead : -lead));
    }
    return sign_changes(signs);
}

QPoly to_qpoly(const std::vector<BigInt>& poly) {
    QPoly q;
    q.reserve(poly.size());
    for (const auto& c : poly) q.emplace_back(c);
    return trim(std::move(q));
}

}  // namespace

int sturm_root_count(const std::vector<BigInt>& poly, const Rational& lo, const Rational& hi) {
    QPoly p = to_qpoly(poly);
    if (degree_of(p) < 0) throw std::invalid_argument("sturm_root_count: zero polynomial");
    auto chain = sturm_chain(p);
    return variations_at(chain, lo) - variations_at(chain, hi);
}

bool ramanujan_bound_holds(const std::vector<BigInt>& poly, std::uint32_t ell) {
    QPoly p = to_qpoly(poly);
    if (degree_of(p) < 1) return true;  // constants have no roots
    // Rational bound just above 2*sqrt(ell): (isqrt(4*ell*10^6) + 1) / 1000.
    BigInt num = bi_sqrt(BigInt(static_cast<unsigned long>(ell) * 4000000UL)) + 1;
    Rational bound(num, 1000);
    bound.canonicalize();
    // A root exactly at +-bound already lies strictly outside [-2*sqrt(ell), 2*sqrt(ell)].
    if (sgn(eval_at(p, bound)) == 0 || sgn(eval_at(p, -bound)) == 0) return false;
    auto chain = sturm_chain(p);
    int total = variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
    int inside = variations_at(chain, -bound) - variations_at(chain, bound);
    return total == inside;
}

bool NewformEigenData::has_eigenvalue(std::uint32_t ell) const {
    if (charpolys.count(ell)) return true;
    return curve.has_value() && ell != 0 && level % ell != 0;
}

int NewformEigenData::curve_ap(std::uint32_t ell) const {
    if (!curve)
        throw MissingEigenvalueError("newform " + label + ": no curve model for eigenvalue at " +
                                     std::to_string(ell));
    if (level % ell == 0)
        throw MissingEigenvalueError("newform " + label + ": bad reduction at " +
                                     std::to_string(ell));
    const CurveModel& m = *curve;
    return ap_point_count(make_curve(ell, m[0], m[1], m[2], m[3], m[4]));
}

std::vector<BigInt> NewformEigenData::charpoly_at(std::uint32_t ell) const {
    auto it = charpolys.find(ell);
    if (it != charpolys.end()) return it->second;
    if (curve && level % ell != 0) return {BigInt(-curve_ap(ell)), BigInt(1)};
    throw MissingEigenvalueError("newform " + label + ": no eigenvalue data at prime " +
                                 std::to_string(ell));
}

bool NewformEigenData::norm_divisible_11(std::uint32_t ell, long a) const {
    auto poly = charpoly_at(ell);
    long acc = 0;
    long x = ((a % 11) + 11) % 11;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it)
        acc = (acc * x + bi_mod_u64(*it, 11)) % 11;
    return acc == 0;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    throw EigendataParseError("eigendata parse error at line " + std::to_string(line_no) + ": " +
                              what);
}

long parse_long(const std::string& tok, std::size_t line_no, const char* what) {
    try {
        std::size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        parse_fail(line_no, std::string("bad ") + what + " '" + tok + "'");
    }
}

BigInt parse_bigint(const std::string& tok, std::size_t line_no) {
    try {
        return BigInt(tok);
    } catch (const std::exception&) {
        parse_fail(line_no, "bad integer coefficient '" + tok + "'");
    }
}

void validate_record(const NewformEigenData& f) {
    if (f.level < 1 || f.degree < 1)
        throw EigendataValidationError("newform " + f.label +
                                       ": level and degree must be positive");
    for (const auto& [ell, poly] : f.charpolys) {
        if (!is_prime_u64(ell))
            throw EigendataValidationError("newform " + f.label + ": AP index " +
                                           std::to_string(ell) + " is not prime");
        if (poly.size() != static_cast<std::size_t>(f.degree) + 1)
            throw EigendataValidationError(
                "newform " + f.label + ", ell=" + std::to_string(ell) +
                ": characteristic polynomial has " + std::to_string(poly.size()) +
                " coefficients, expected degree " + std::to_string(f.degree));
        if (poly.back() != 1)
            throw EigendataValidationError("newform " + f.label + ", ell=" + std::to_string(ell) +
                                           ": characteristic polynomial is not monic");
        if (!ramanujan_bound_holds(poly, ell))
            throw EigendataValidationError("newform " + f.label + ", ell=" + std::to_string(ell) +
                                           ": eigenvalue bound |c| <= 2*sqrt(ell) violated");
    }
}

}  // namespace

std::vector<NewformEigenData> load_eigendata(std::istream& in) {
    std::vector<NewformEigenData> records;
    std::optional<NewformEigenData> current;
    auto flush = [&]() {
        if (current) {
            validate_record(*current);
            records.push_back(std::move(*current));
            current.reset();
        }
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.empty()) {
            flush();
            continue;
        }
        if (tok[0] == "NEWFORM") {
            flush();
            if (tok.size() != 4) parse_fail(line_no, "NEWFORM expects <level> <label> <degree>");
            NewformEigenData f;
            f.level = parse_long(tok[1], line_no, "level");
            f.label = tok[2];
            f.degree = static_cast<int>(parse_long(tok[3], line_no, "degree"));
            current = std::move(f);
        } else if (tok[0] == "AP") {
            if (!current) parse_fail(line_no, "AP line before any NEWFORM header");
            if (tok.size() < 4) parse_fail(line_no, "AP expects <ell> and monic coefficients");
            long ell = parse_long(tok[1], line_no, "prime index");
            if (ell < 2) parse_fail(line_no, "AP prime index must be >= 2");
            std::vector<BigInt> poly;
            for (std::size_t i = 2; i < tok.size(); ++i)
                poly.push_back(parse_bigint(tok[i], line_no));
            auto [it, fresh] =
                current->charpolys.emplace(static_cast<std::uint32_t>(ell), std::move(poly));
            (void)it;
            if (!fresh) parse_fail(line_no, "duplicate AP line for prime " + std::to_string(ell));
        } else if (tok[0] == "CURVE") {
            flush();
            if (tok.size() != 8)
                parse_fail(line_no, "CURVE expects <level> <label> <a1> <a2> <a3> <a4> <a6>");
            NewformEigenData f;
            f.level = parse_long(tok[1], line_no, "level");
            f.label = tok[2];
            f.degree = 1;
            CurveModel m{};
            for (int i = 0; i < 5; ++i)
                m[static_cast<std::size_t>(i)] =
                    parse_long(tok[static_cast<std::size_t>(i) + 3], line_no, "a-invariant");
            f.curve = m;
            validate_record(f);
            records.push_back(std::move(f));
        } else {
            parse_fail(line_no, "unknown record '" + tok[0] + "'");
        }
    }
    flush();
    return records;
}

std::vector<NewformEigenData> load_eigendata_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw EigendataParseError("cannot open eigendata file: " + path);
    return load_eigendata(in);
}

}  // namespace taukit
