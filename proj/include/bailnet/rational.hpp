#ifndef BAILNET_RATIONAL_HPP
#define BAILNET_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bailnet {

/// Exact rational number. Every monetary quantity, rate and parameter in the
/// engine is one of these; there is no floating point on the computation path.
class Rational {
public:
    Rational() = default;
    Rational(long value) : v_(value) {}
    Rational(int value) : v_(value) {}
    Rational(long num, long den);
    explicit Rational(mpq_class value);

    /// Accepts "12", "-0.125", "3/8", "1.5e-3". Decimals are converted
    /// digit-by-digit, never through a binary float. Throws InputError.
    static Rational parse(std::string_view text);

    /// Shortest exact decimal when the denominator is of the form 2^a 5^b,
    /// otherwise "p/q" in lowest terms.
    std::string to_string() const;
    double to_double() const { return v_.get_d(); }
    /// Decimal view rounded to 12 significant digits.
    double approx() const;

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const;

    const mpq_class& raw() const { return v_; }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class v_;
};

using Money = Rational;

inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

/// base^exp for exp >= 0.
Rational pow(const Rational& base, unsigned exp);

} // namespace bailnet

#endif
