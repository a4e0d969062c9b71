#include "taukit/bivariate.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace taukit {

BivariatePoly::BivariatePoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("BivariatePoly: empty coefficient vector");
}

bool BivariatePoly::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const BigInt& v) { return v == 0; });
}

BivariatePoly BivariatePoly::operator*(const BivariatePoly& o) const {
    if (is_zero() || o.is_zero()) return BivariatePoly();
    std::vector<BigInt> out(degree() + o.degree() + 1, BigInt(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
    }
    return BivariatePoly(std::move(out));
}

BivariatePoly BivariatePoly::operator+(const BivariatePoly& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (degree() != o.degree())
        throw std::domain_error("BivariatePoly: sum of unequal homogeneous degrees");
    std::vector<BigInt> out(c_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += o.c_[i];
    return BivariatePoly(std::move(out));
}

BivariatePoly BivariatePoly::operator-(const BivariatePoly& o) const { return *this + o.scaled(BigInt(-1)); }

BivariatePoly BivariatePoly::scaled(const BigInt& k) const {
    if (k == 0) return BivariatePoly();
    std::vector<BigInt> out(c_);
    for (auto& v : out) v *= k;
    return BivariatePoly(std::move(out));
}

BivariatePoly BivariatePoly::shifted(std::size_t a, std::size_t b) const {
    if (is_zero()) return BivariatePoly();
    std::vector<BigInt> out(degree() + a + b + 1, BigInt(0));
    for (std::size_t i = 0; i < c_.size(); ++i) out[i + a] = c_[i];
    return BivariatePoly(std::move(out));
}

bool BivariatePoly::operator==(const BivariatePoly& o) const {
    if (is_zero() && o.is_zero()) return true;
    return c_ == o.c_;
}

BigInt BivariatePoly::eval(const BigInt& x, const BigInt& y) const {
    // Horner in x: sum_i c_i x^i y^{d-i} = y^d * sum c_i (x/y)^i, done integrally
    BigInt acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i] * bi_pow(y, degree() - i);
    return acc;
}

Rational BivariatePoly::eval(const Rational& x, const Rational& y) const {
    Rational acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) {
        Rational ypow(1);
        for (std::size_t k = 0; k < degree() - i; ++k) ypow *= y;
        acc = acc * x + Rational(c_[i]) * ypow;
    }
    return acc;
}

BivariatePoly BivariatePoly::substitute(const BivariatePoly& u, const BivariatePoly& v) const {
    if (u.degree() != v.degree())
        throw std::domain_error("BivariatePoly::substitute: arguments of unequal degree");
    BivariatePoly acc;  // zero
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        BivariatePoly term = BivariatePoly::constant(c_[i]);
        for (std::size_t k = 0; k < i; ++k) term = term * u;
        for (std::size_t k = 0; k < degree() - i; ++k) term = term * v;
        if (acc.is_zero())
            acc = term;
        else
            acc = acc + term;
    }
    return acc;
}

BivariatePoly exact_div(const BivariatePoly& a, const BivariatePoly& b) {
    if (b.is_zero()) throw std::domain_error("exact_div: division by zero polynomial");
    if (a.is_zero()) return BivariatePoly();
    if (a.degree() < b.degree()) throw std::domain_error("exact_div: degree of divisor exceeds dividend");
    // long division on X-coefficient arrays over the rationals
    std::vector<Rational> rem(a.degree() + 1);
    for (std::size_t i = 0; i <= a.degree(); ++i) rem[i] = Rational(a.coeff(i));
    std::size_t db = b.degree();
    while (db > 0 && b.coeff(db) == 0) --db;  // top nonzero X-power of divisor
    const std::size_t dq = a.degree() - b.degree();
    std::vector<Rational> quot(dq + 1);
    for (std::size_t top = a.degree() + 1; top-- > 0;) {
        if (rem[top] == 0) continue;
        if (top < db) throw std::domain_error("exact_div: nonzero remainder");
        std::size_t qi = top - db;
        if (qi > dq) throw std::domain_error("exact_div: quotient degree overflow");
        Rational q = rem[top] / Rational(b.coeff(db));
        quot[qi] = q;
        for (std::size_t i = 0; i <= db; ++i) rem[qi + i] -= q * Rational(b.coeff(i));
    }
    for (const auto& r : rem)
        if (r != 0) throw std::domain_error("exact_div: nonzero remainder");
    std::vector<BigInt> out(dq + 1);
    for (std::size_t i = 0; i <= dq; ++i) {
        if (quot[i].get_den() != 1) throw std::domain_error("exact_div: fractional quotient coefficient");
        out[i] = quot[i].get_num();
    }
    return BivariatePoly(std::move(out));
}

bool divides(const BivariatePoly& a, const BivariatePoly& b) {
    try {
        exact_div(b, a);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

std::string to_string(const BivariatePoly& p, const char* xname, const char* yname) {
    if (p.is_zero()) return "0";
    std::string out;
    const std::size_t d = p.degree();
    for (std::size_t i = d + 1; i-- > 0;) {
        const BigInt& c = p.coeff(i);
        if (c == 0) continue;
        BigInt a = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += (c < 0) ? "-" : "+";
        }
        const std::size_t j = d - i;  // Y-power
        bool has_var = i > 0 || j > 0;
        if (a != 1 || !has_var) out += a.get_str();
        if (i > 0) {
            out += xname;
            if (i > 1) out += "^" + std::to_string(i);
        }
        if (j > 0) {
            out += yname;
            if (j > 1) out += "^" + std::to_string(j);
        }
    }
    return out;
}

BivariatePoly parse_poly(const std::string& text) {
    struct Term {
        BigInt coeff;
        std::size_t xe, ye;
    };
    std::vector<Term> terms;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    if (pos == text.size()) throw std::invalid_argument("parse_poly: empty input");
    while (pos < text.size()) {
        skip_ws();
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            if (text[pos] == '-') sign = -1;
            ++pos;
            skip_ws();
        } else if (!terms.empty()) {
            throw std::invalid_argument("parse_poly: missing sign between terms");
        }
        std::string digits;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) digits += text[pos++];
        BigInt coeff = digits.empty() ? BigInt(1) : BigInt(digits);
        coeff *= sign;
        auto parse_power = [&](char var) -> std::size_t {
            skip_ws();
            if (pos < text.size() && (text[pos] == '*')) {  // tolerate optional '*'
                ++pos;
                skip_ws();
            }
            if (pos >= text.size() || std::toupper(text[pos]) != var) return 0;
            ++pos;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                std::string e;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) e += text[pos++];
                if (e.empty()) throw std::invalid_argument("parse_poly: missing exponent");
                return std::stoul(e);
            }
            return 1;
        };
        std::size_t xe = parse_power('X');
        std::size_t ye = parse_power('Y');
        if (digits.empty() && xe == 0 && ye == 0)
            throw std::invalid_argument("parse_poly: empty term");
        terms.push_back({coeff, xe, ye});
        skip_ws();
    }
    std::size_t d = 0;
    for (const auto& t : terms) d = std::max(d, t.xe + t.ye);
    std::vector<BigInt> c(d + 1, BigInt(0));
    for (const auto& t : terms) {
        if (t.coeff != 0 && t.xe + t.ye != d)
            throw std::invalid_argument("parse_poly: non-homogeneous input");
        c[t.xe] += t.coeff;
    }
    return BivariatePoly(std::move(c));
}

}  // namespace taukit
