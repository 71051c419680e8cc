#include "quala/rational.hpp"

#include <ostream>

#include "quala/errors.hpp"

namespace quala {

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw SyntaxError("rational with zero denominator");
    BigInt n = den < 0 ? BigInt(-num) : num;
    BigInt d = den < 0 ? BigInt(-den) : den;
    v_ = boost::multiprecision::cpp_rational(n, d);  // reduces to lowest terms
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw SyntaxError("division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    size_t begin = text.find_first_not_of(" \t");
    size_t end = text.find_last_not_of(" \t");
    if (begin == std::string_view::npos)
        throw SyntaxError("empty rational literal");
    text = text.substr(begin, end - begin + 1);

    auto parse_int = [&](std::string_view s, long offset) -> BigInt {
        if (s.empty()) throw SyntaxError("empty integer in rational", offset);
        size_t i = 0;
        bool neg = false;
        if (s[0] == '-' || s[0] == '+') {
            neg = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) throw SyntaxError("sign without digits", offset);
        BigInt value = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9')
                throw SyntaxError(std::string("unexpected character '") + s[i] +
                                      "' in rational",
                                  offset + static_cast<long>(i));
            value = value * 10 + (s[i] - '0');
        }
        return neg ? BigInt(-value) : value;
    };

    size_t slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(text, static_cast<long>(begin)));
    BigInt num = parse_int(text.substr(0, slash), static_cast<long>(begin));
    BigInt den = parse_int(text.substr(slash + 1),
                           static_cast<long>(begin + slash + 1));
    if (den == 0)
        throw SyntaxError("zero denominator", static_cast<long>(begin + slash + 1));
    return Rational(num, den);
}

Rational Rational::pow(unsigned long k) const {
    Rational result(1);
    Rational base = *this;
    while (k > 0) {
        if (k & 1) result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

std::string Rational::str() const {
    if (is_integer()) return numerator().str();
    return numerator().str() + "/" + denominator().str();
}

std::string Rational::str_pq() const {
    return numerator().str() + "/" + denominator().str();
}

std::string Rational::decimal(unsigned digits) const {
    BigInt num = numerator();
    BigInt den = denominator();
    bool neg = num < 0;
    if (neg) num = -num;
    BigInt whole = num / den;
    BigInt rem = num % den;
    std::string out = (neg && (whole != 0 || rem != 0) ? "-" : "") + whole.str();
    if (digits > 0) {
        out += '.';
        for (unsigned i = 0; i < digits; ++i) {
            rem *= 10;
            out += BigInt(rem / den).str();
            rem %= den;
        }
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

}  // namespace quala
