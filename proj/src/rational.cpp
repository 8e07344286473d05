#include "usm/rational.hpp"

#include "usm/errors.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace usm {

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

mpz_class parse_integer(std::string_view s, std::string_view whole)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s))
        throw InvalidInput("malformed number '" + std::string(whole) + "'");
    mpz_class z(std::string(s), 10);
    return negative ? mpz_class(-z) : z;
}

} // namespace

Rational::Rational(long long num, long long den)
{
    if (den == 0)
        throw InvalidInput("zero denominator");
    value_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero())
        throw InvalidInput("division by zero");
    value_ /= o.value_;
    return *this;
}

Rational Rational::parse(std::string_view text)
{
    auto trimmed = text;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
        trimmed.remove_prefix(1);
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
        trimmed.remove_suffix(1);
    if (trimmed.empty())
        throw InvalidInput("empty number");

    if (auto slash = trimmed.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(trimmed.substr(0, slash), text);
        auto den_text = trimmed.substr(slash + 1);
        if (!all_digits(den_text))
            throw InvalidInput("malformed denominator in '" + std::string(text) + "'");
        mpz_class den(std::string(den_text), 10);
        if (den == 0)
            throw InvalidInput("zero denominator in '" + std::string(text) + "'");
        return Rational(mpq_class(num, den));
    }

    if (auto dot = trimmed.find('.'); dot != std::string_view::npos) {
        auto int_part = trimmed.substr(0, dot);
        auto frac_part = trimmed.substr(dot + 1);
        bool negative = !int_part.empty() && int_part.front() == '-';
        if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+'))
            int_part.remove_prefix(1);
        if (int_part.empty() && frac_part.empty())
            throw InvalidInput("malformed number '" + std::string(text) + "'");
        if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
            throw InvalidInput("malformed number '" + std::string(text) + "'");
        std::string digits = std::string(int_part) + std::string(frac_part);
        mpz_class num(digits.empty() ? std::string("0") : digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
        if (negative)
            num = -num;
        return Rational(mpq_class(num, den));
    }

    return Rational(mpq_class(parse_integer(trimmed, text)));
}

Rational Rational::pow2(unsigned exponent)
{
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, exponent);
    return Rational(mpq_class(p));
}

std::string Rational::str() const
{
    if (value_.get_den() == 1)
        return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::decimal(int digits) const
{
    if (is_zero())
        return "0";
    mpz_class num = abs(value_.get_num());
    const mpz_class& den = value_.get_den();

    // Scale so the integer quotient carries exactly `digits` significant digits.
    long exponent = 0; // value = quotient * 10^-exponent
    mpz_class q = num / den;
    long int_digits = q == 0 ? 0 : static_cast<long>(q.get_str().size());
    if (int_digits == 0) {
        // count leading fractional zeros
        mpz_class scaled = num * 10;
        long lead = 0;
        while (scaled < den) {
            scaled *= 10;
            ++lead;
        }
        exponent = lead + digits;
    } else {
        exponent = digits - int_digits;
    }

    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(exponent)));
    mpz_class scaled_num = exponent >= 0 ? num * p10 : num;
    mpz_class scaled_den = exponent >= 0 ? den : den * p10;
    mpz_class quot, rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
    if (2 * rem >= scaled_den)
        quot += 1;

    std::string s = quot.get_str();
    if (exponent > 0) {
        if (static_cast<long>(s.size()) <= exponent)
            s = std::string(static_cast<size_t>(exponent) - s.size() + 1, '0') + s;
        s.insert(s.size() - static_cast<size_t>(exponent), ".");
        while (s.back() == '0')
            s.pop_back();
        if (s.back() == '.')
            s.pop_back();
    } else if (exponent < 0) {
        s += std::string(static_cast<size_t>(-exponent), '0');
    }
    return sgn(value_) < 0 ? "-" + s : s;
}

std::ostream& operator<<(std::ostream& os, const Rational& r)
{
    return os << r.str();
}

} // namespace usm
