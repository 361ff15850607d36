#include "overlap/rational.hpp"

#include <cctype>

namespace overlap {

namespace {

BigInt digits_to_int(std::string_view s) {
    BigInt v = 0;
    for (char c : s) {
        v *= 10;
        v += c - '0';
    }
    return v;
}

}  // namespace

Rational parse_decimal(std::string_view s) {
    std::size_t i = 0;
    const std::size_t len = s.size();
    bool negative = false;

    if (i < len && (s[i] == '+' || s[i] == '-')) {
        negative = s[i] == '-';
        ++i;
    }
    const std::size_t int_begin = i;
    while (i < len && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == int_begin) throw ParseError("expected digit", i);

    BigInt numerator = digits_to_int(s.substr(int_begin, i - int_begin));
    int frac_digits = 0;

    if (i < len && s[i] == '.') {
        ++i;
        const std::size_t frac_begin = i;
        while (i < len && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == frac_begin) throw ParseError("expected digit after '.'", i);
        frac_digits = static_cast<int>(i - frac_begin);
        numerator = numerator * boost::multiprecision::pow(BigInt(10), frac_digits) +
                    digits_to_int(s.substr(frac_begin, i - frac_begin));
    }
    if (i != len) {
        throw ParseError(std::string("unexpected character '") + s[i] + "'", i);
    }

    if (negative) numerator = -numerator;
    return Rational(numerator, boost::multiprecision::pow(BigInt(10), frac_digits));
}

Rational pow10(int e) {
    BigInt p = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(e < 0 ? -e : e));
    return e < 0 ? Rational(1, p) : Rational(p);
}

std::string decimal_string(const Rational& r, int digits, bool trim_zeros) {
    if (digits < 0) throw std::invalid_argument("decimal_string: digits must be >= 0");

    const bool negative = r < 0;
    BigInt num = boost::multiprecision::abs(numerator(r));
    BigInt den = denominator(r);

    // Scale, then round ties to even.
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits));
    BigInt scaled = num * scale;
    BigInt q = scaled / den;
    BigInt rem = scaled % den;
    BigInt twice = rem * 2;
    if (twice > den || (twice == den && (q & 1) != 0)) ++q;

    std::string body = q.str();
    std::string out;
    if (digits == 0) {
        out = body;
    } else {
        if (static_cast<int>(body.size()) <= digits) {
            body.insert(0, digits + 1 - body.size(), '0');
        }
        out = body.substr(0, body.size() - digits) + "." +
              body.substr(body.size() - digits);
        if (trim_zeros) {
            out.erase(out.find_last_not_of('0') + 1);
            if (!out.empty() && out.back() == '.') out.pop_back();
        }
    }
    if (negative && out.find_first_not_of("0.") != std::string::npos) out.insert(0, 1, '-');
    return out;
}

bool has_terminating_decimal(const Rational& r) {
    BigInt den = denominator(r);
    while (den % 2 == 0) den /= 2;
    while (den % 5 == 0) den /= 5;
    return den == 1;
}

std::string exact_decimal_string(const Rational& r) {
    BigInt den = denominator(r);
    int twos = 0, fives = 0;
    while (den % 2 == 0) { den /= 2; ++twos; }
    while (den % 5 == 0) { den /= 5; ++fives; }
    if (den != 1) {
        throw std::domain_error("value " + fraction_string(r) +
                                " has no finite decimal representation");
    }
    return decimal_string(r, twos > fives ? twos : fives, /*trim_zeros=*/true);
}

std::string fraction_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace overlap
