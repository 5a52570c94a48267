#include "rcmc/rational.hpp"

#include "rcmc/errors.hpp"

namespace rcmc {

Rational rational_pow(const Rational& base, long e) {
    if (e < 0) throw std::invalid_argument("rational_pow: negative exponent");
    Rational acc(1);
    Rational b = base;
    long k = e;
    while (k > 0) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

Rational pow2(long e) {
    BigInt p = BigInt(1) << static_cast<unsigned>(e < 0 ? -e : e);
    return e >= 0 ? Rational(p) : Rational(1, p);
}

std::string to_fraction(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

// Strict base-10 integer: [+-]?[0-9]+.  Built digit by digit so that leading
// zeros stay decimal (the BigInt string constructor would read them as octal)
// and stray characters are rejected.
BigInt parse_decimal(const std::string& s) {
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    if (i >= s.size()) throw ParseError("bad integer literal '" + s + "'");
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw ParseError("bad integer literal '" + s + "'");
        v = v * 10 + (s[i] - '0');
    }
    return neg ? BigInt(-v) : v;
}

} // namespace

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num = parse_decimal(s.substr(0, slash));
        BigInt den = parse_decimal(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + s + "'");
        return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string head = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (frac.empty()) throw ParseError("bad rational literal '" + s + "'");
        const bool neg = !head.empty() && head[0] == '-';
        if (!head.empty() && (head[0] == '+' || head[0] == '-')) head = head.substr(1);
        BigInt num = head.empty() ? BigInt(0) : parse_decimal(head);
        BigInt den = 1;
        for (char c : frac) {
            if (c < '0' || c > '9') throw ParseError("bad rational literal '" + s + "'");
            num = num * 10 + (c - '0');
            den *= 10;
        }
        Rational r(num, den);
        return neg ? Rational(-r) : r;
    }
    return Rational(parse_decimal(s));
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

long bit_size(const Rational& q) {
    BigInt n = abs(numerator(q));
    BigInt d = denominator(q);
    long bn = n == 0 ? 0 : static_cast<long>(msb(n)) + 1;
    long bd = static_cast<long>(msb(d)) + 1;
    return bn > bd ? bn : bd;
}

} // namespace rcmc
