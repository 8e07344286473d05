#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace usm {

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
  public:
    Rational() = default;
    Rational(long long value) : value_(static_cast<long>(value)) {}
    Rational(long long num, long long den);

    /// Parses "p/q", an integer, or a finite decimal such as "0.4" or "-1.25".
    /// Decimals are converted exactly ("0.4" -> 2/5).
    static Rational parse(std::string_view text);

    static Rational pow2(unsigned exponent);

    /// "p/q", or "p" when the denominator is one.
    std::string str() const;
    /// Decimal rendering rounded to `digits` significant digits; trailing
    /// zeros are trimmed.
    std::string decimal(int digits = 17) const;
    double to_double() const { return value_.get_d(); }

    std::string numerator() const { return value_.get_num().get_str(); }
    std::string denominator() const { return value_.get_den().get_str(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { Rational r; r.value_ = -value_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    const mpq_class& raw() const { return value_; }

  private:
    explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

    mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace usm
