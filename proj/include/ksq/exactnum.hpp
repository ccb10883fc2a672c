#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace ksq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Thrown when two values from distinct quadratic fields meet in one operation.
struct FieldMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

int sign_of(const Rational& r);
double to_double(const Rational& r);
std::string to_string(const Rational& r);

// Canonical rational from a num/den pair; den must be nonzero.
Rational make_rational(BigInt numerator, BigInt denominator);

// True iff d has no repeated prime factor. Requires 0 <= d <= 4'000'000'000.
bool is_square_free(std::int64_t d);

/// Exact element of the real quadratic field Q(sqrt(D)):
///
///     value = rat_part + rad_part * sqrt(radicand)
///
/// Canonical form: rad_part == 0 forces radicand == 0 ("pure rational",
/// combinable with values of any field). A nonzero rad_part requires a
/// square-free radicand >= 2, which makes the representation unique:
/// numeric equality coincides with field-wise equality.
///
/// Operations mixing two distinct nonzero radicands throw FieldMismatchError.
class QuadNum {
public:
    QuadNum() = default;
    QuadNum(long long rational_value) : rat_(rational_value) {}
    QuadNum(Rational rational_part) : rat_(std::move(rational_part)) {}
    QuadNum(Rational rational_part, Rational radical_part, std::int64_t radicand);

    const Rational& rat_part() const { return rat_; }
    const Rational& rad_part() const { return rad_; }
    std::int64_t radicand() const { return radicand_; }

    bool is_zero() const { return rat_ == 0 && rad_ == 0; }
    bool is_rational() const { return radicand_ == 0; }

    // Exact sign of the real value, by case analysis on the signs of the two
    // parts and, when they disagree, integer comparison of rat^2 vs D*rad^2.
    int sign() const;

    double to_double() const;
    QuadNum conjugate() const;
    QuadNum inverse() const;  // throws std::domain_error on zero
    std::string str() const;

    QuadNum operator-() const;
    friend QuadNum operator+(const QuadNum& x, const QuadNum& y);
    friend QuadNum operator-(const QuadNum& x, const QuadNum& y);
    friend QuadNum operator*(const QuadNum& x, const QuadNum& y);
    QuadNum& operator+=(const QuadNum& y) { return *this = *this + y; }
    QuadNum& operator-=(const QuadNum& y) { return *this = *this - y; }
    QuadNum& operator*=(const QuadNum& y) { return *this = *this * y; }

    friend bool operator==(const QuadNum& x, const QuadNum& y) = default;

    // Numeric order; requires compatible radicands.
    friend bool operator<(const QuadNum& x, const QuadNum& y) { return (x - y).sign() < 0; }
    friend bool operator>(const QuadNum& x, const QuadNum& y) { return y < x; }
    friend bool operator<=(const QuadNum& x, const QuadNum& y) { return !(y < x); }
    friend bool operator>=(const QuadNum& x, const QuadNum& y) { return !(x < y); }

private:
    Rational rat_{0};
    Rational rad_{0};
    std::int64_t radicand_ = 0;
};

// 0 + 1 * sqrt(d)
QuadNum sqrt_of(std::int64_t d);

std::ostream& operator<<(std::ostream& os, const QuadNum& q);

}  // namespace ksq
