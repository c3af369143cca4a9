#include "crn/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace crn {

Rational rational_pow(const Rational& base, long long exp) {
    if (exp == 0) return Rational(1);
    bool invert = exp < 0;
    unsigned long long e = invert ? static_cast<unsigned long long>(-exp) : static_cast<unsigned long long>(exp);
    if (invert && base == 0) throw std::domain_error("rational_pow: zero base with negative exponent");
    Rational acc(1);
    Rational b = base;
    while (e > 0) {
        if (e & 1ULL) acc *= b;
        b *= b;
        e >>= 1ULL;
    }
    return invert ? Rational(1) / acc : acc;
}

std::optional<Rational> parse_rational(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) return std::nullopt;

    auto is_int = [](const std::string& t) {
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) return std::nullopt;
        BigInt d(den);
        if (d == 0) return std::nullopt;
        return Rational(BigInt(num), d);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (frac.empty()) return std::nullopt;
        bool neg = !whole.empty() && whole[0] == '-';
        if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.erase(0, 1);
        if (whole.empty()) whole = "0";
        if (!is_int(whole) || !is_int(frac)) return std::nullopt;
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        Rational value = Rational(BigInt(whole)) + Rational(BigInt(frac), scale);
        return neg ? Rational(-value) : value;
    }
    if (!is_int(s)) return std::nullopt;
    return Rational(BigInt(s));
}

std::string format_rational(const Rational& value) {
    if (denominator(value) == 1) return numerator(value).str();
    return numerator(value).str() + "/" + denominator(value).str();
}

BigInt factorial(long long n) {
    if (n < 0) throw std::domain_error("factorial of negative value");
    BigInt acc = 1;
    for (long long i = 2; i <= n; ++i) acc *= i;
    return acc;
}

}  // namespace crn
