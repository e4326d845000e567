#include "bailnet/rational.hpp"

#include "bailnet/error.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace bailnet {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

[[noreturn]] void bad_number(std::string_view text)
{
    throw InputError("not an exact number: \"" + std::string(text) + "\"");
}

mpz_class pow10(unsigned long e)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

} // namespace

const char* status_code_name(Status status) noexcept
{
    switch (status) {
    case Status::ok: return "OK";
    case Status::input: return "E_INPUT";
    case Status::capacity: return "E_CAPACITY";
    case Status::internal: return "E_INTERNAL";
    }
    return "E_INTERNAL";
}

Rational::Rational(long num, long den)
{
    if (den == 0)
        throw InputError("zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational::Rational(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero())
        throw InvariantError("division by zero");
    v_ /= o.v_;
    return *this;
}

bool Rational::is_integer() const { return v_.get_den() == 1; }

Rational Rational::parse(std::string_view text)
{
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    if (s.empty())
        bad_number(text);

    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    mpq_class value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            bad_number(text);
        mpz_class d{std::string(den), 10};
        if (d == 0)
            throw InputError("zero denominator in \"" + std::string(text) + "\"");
        value = mpq_class(mpz_class{std::string(num), 10}, d);
        value.canonicalize();
    } else {
        long exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            auto exp_text = s.substr(e + 1);
            bool exp_neg = false;
            if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
                exp_neg = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!all_digits(exp_text) || exp_text.size() > 6)
                bad_number(text);
            exponent = std::strtol(std::string(exp_text).c_str(), nullptr, 10);
            if (exp_neg)
                exponent = -exponent;
            s = s.substr(0, e);
        }
        std::string_view int_part = s, frac_part;
        if (auto dot = s.find('.'); dot != std::string_view::npos) {
            int_part = s.substr(0, dot);
            frac_part = s.substr(dot + 1);
        }
        if (int_part.empty() && frac_part.empty())
            bad_number(text);
        if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
            bad_number(text);
        std::string digits = std::string(int_part) + std::string(frac_part);
        mpz_class mantissa(digits.empty() ? std::string("0") : digits, 10);
        long scale = static_cast<long>(frac_part.size()) - exponent;
        if (scale >= 0)
            value = mpq_class(mantissa, pow10(static_cast<unsigned long>(scale)));
        else
            value = mpq_class(mantissa * pow10(static_cast<unsigned long>(-scale)));
    }
    value.canonicalize();
    if (negative)
        value = -value;
    return Rational(value);
}

std::string Rational::to_string() const
{
    if (is_integer())
        return v_.get_num().get_str();

    mpz_class den = v_.get_den();
    unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
    unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
    if (den != 1)
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();

    const unsigned long places = std::max(twos, fives);
    mpz_class scaled = v_.get_num() * pow10(places) / v_.get_den();
    const bool negative = sgn(scaled) < 0;
    if (negative)
        scaled = -scaled;
    std::string digits = scaled.get_str();
    if (digits.size() <= places)
        digits.insert(0, places - digits.size() + 1, '0');
    digits.insert(digits.size() - places, ".");
    return negative ? "-" + digits : digits;
}

double Rational::approx() const
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", to_double());
    return std::strtod(buf, nullptr);
}

Rational pow(const Rational& base, unsigned exp)
{
    Rational r(1);
    for (unsigned i = 0; i < exp; ++i)
        r *= base;
    return r;
}

} // namespace bailnet
