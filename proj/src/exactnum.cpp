#include "ksq/exactnum.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <utility>

namespace ksq {

int sign_of(const Rational& r) {
    if (r < 0) return -1;
    if (r > 0) return 1;
    return 0;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

Rational make_rational(BigInt numerator, BigInt denominator) {
    if (denominator == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(std::move(numerator)) / Rational(std::move(denominator));
}

bool is_square_free(std::int64_t d) {
    if (d < 0 || d > 4'000'000'000LL) throw std::invalid_argument("radicand out of supported range");
    if (d < 2) return d == 1;  // 0 is conventionally excluded, 1 is square-free
    for (std::int64_t p = 2; p * p <= d; ++p) {
        while (d % p == 0) {
            d /= p;
            if (d % p == 0) return false;
        }
    }
    return true;
}

namespace {

std::int64_t merged_radicand(const QuadNum& x, const QuadNum& y) {
    if (x.radicand() == 0) return y.radicand();
    if (y.radicand() == 0) return x.radicand();
    if (x.radicand() != y.radicand()) {
        throw FieldMismatchError("incompatible quadratic fields: sqrt(" + std::to_string(x.radicand()) +
                                 ") vs sqrt(" + std::to_string(y.radicand()) + ")");
    }
    return x.radicand();
}

}  // namespace

QuadNum::QuadNum(Rational rational_part, Rational radical_part, std::int64_t radicand)
    : rat_(std::move(rational_part)), rad_(std::move(radical_part)), radicand_(radicand) {
    if (rad_ == 0) {
        radicand_ = 0;
        return;
    }
    if (radicand_ < 2) throw std::invalid_argument("radicand must be >= 2 for a nonzero radical part");
    if (!is_square_free(radicand_)) {
        throw std::invalid_argument("radicand " + std::to_string(radicand_) + " is not square-free");
    }
}

int QuadNum::sign() const {
    const int sa = sign_of(rat_);
    const int sb = sign_of(rad_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: |rat| vs |rad|*sqrt(D) decides; compare squares exactly.
    const Rational lhs = rat_ * rat_;
    const Rational rhs = rad_ * rad_ * radicand_;
    if (lhs == rhs) {
        // Would make sqrt(D) rational; impossible for square-free D >= 2.
        throw std::logic_error("degenerate quadratic representation");
    }
    return lhs > rhs ? sa : sb;
}

double QuadNum::to_double() const {
    double v = ksq::to_double(rat_);
    if (rad_ != 0) v += ksq::to_double(rad_) * std::sqrt(static_cast<double>(radicand_));
    return v;
}

QuadNum QuadNum::conjugate() const { return QuadNum(rat_, -rad_, radicand_); }

QuadNum QuadNum::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    // 1/(a + b sqrt(D)) = (a - b sqrt(D)) / (a^2 - D b^2)
    const Rational norm = rat_ * rat_ - rad_ * rad_ * radicand_;
    if (norm == 0) throw std::logic_error("degenerate quadratic representation");
    return QuadNum(rat_ / norm, -rad_ / norm, radicand_);
}

std::string QuadNum::str() const {
    if (radicand_ == 0) return to_string(rat_);
    std::string radical = to_string(rad_ < 0 ? Rational(-rad_) : rad_) + "*sqrt(" + std::to_string(radicand_) + ")";
    if (rat_ == 0) return (rad_ < 0 ? "-" : "") + radical;
    return to_string(rat_) + (rad_ < 0 ? " - " : " + ") + radical;
}

QuadNum QuadNum::operator-() const { return QuadNum(-rat_, -rad_, radicand_); }

QuadNum operator+(const QuadNum& x, const QuadNum& y) {
    return QuadNum(x.rat_ + y.rat_, x.rad_ + y.rad_, merged_radicand(x, y));
}

QuadNum operator-(const QuadNum& x, const QuadNum& y) {
    return QuadNum(x.rat_ - y.rat_, x.rad_ - y.rad_, merged_radicand(x, y));
}

QuadNum operator*(const QuadNum& x, const QuadNum& y) {
    const std::int64_t d = merged_radicand(x, y);
    Rational rat = x.rat_ * y.rat_;
    if (d != 0) rat += x.rad_ * y.rad_ * d;
    Rational rad = x.rat_ * y.rad_ + x.rad_ * y.rat_;
    return QuadNum(std::move(rat), std::move(rad), d);
}

QuadNum sqrt_of(std::int64_t d) { return QuadNum(Rational(0), Rational(1), d); }

std::ostream& operator<<(std::ostream& os, const QuadNum& q) { return os << q.str(); }

}  // namespace ksq
