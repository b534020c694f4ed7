#include "kcubic/scalar.hpp"

#include "kcubic/errors.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace kcubic {

Scalar make_rational(long num, long den)
{
    if (den == 0)
        throw DomainError("zero denominator");
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

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

mpz_class parse_integer(std::string_view s, std::string_view whole)
{
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '+' || digits.front() == '-'))
        digits.remove_prefix(1);
    if (!all_digits(digits))
        throw ParseError("not a number: '" + std::string(whole) + "'");
    mpz_class z(std::string(digits), 10);
    return (!s.empty() && s.front() == '-') ? mpz_class(-z) : z;
}

} // namespace

Scalar parse_scalar(std::string_view text)
{
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    if (s.empty())
        throw ParseError("empty number");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(s.substr(0, slash), text);
        std::string_view den_text = s.substr(slash + 1);
        if (!den_text.empty() && den_text.front() == '+')
            throw ParseError("not a number: '" + std::string(text) + "'");
        mpz_class den = parse_integer(den_text, text);
        if (den == 0)
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        Scalar q(num, den);
        q.canonicalize();
        return q;
    }

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = s.substr(e + 1);
        mpz_class z = parse_integer(exp_text, text);
        if (!z.fits_slong_p() || abs(z) > 10000)
            throw ParseError("exponent out of range in '" + std::string(text) + "'");
        exponent = z.get_si();
        s = s.substr(0, e);
    }

    std::string digits;
    auto dot = s.find('.');
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
        throw ParseError("not a number: '" + std::string(text) + "'");
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
        throw ParseError("not a number: '" + std::string(text) + "'");
    digits.append(int_part).append(frac_part);

    mpz_class mantissa(digits, 10);
    if (negative)
        mantissa = -mantissa;
    long scale = exponent - static_cast<long>(frac_part.size());
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Scalar q = scale < 0 ? Scalar(mantissa, ten_pow) : Scalar(mantissa * ten_pow);
    q.canonicalize();
    return q;
}

double to_double(const Scalar& q) { return q.get_d(); }

Scalar from_double(double v)
{
    if (!std::isfinite(v))
        throw DomainError("non-finite value");
    return Scalar(v);
}

std::string to_string(const Scalar& q) { return q.get_str(10); }

Scalar pow(const Scalar& base, unsigned exponent)
{
    Scalar result = 1;
    for (unsigned i = 0; i < exponent; ++i)
        result *= base;
    return result;
}

} // namespace kcubic
