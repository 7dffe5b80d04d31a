#include "mwelect/rational.hpp"

#include <cmath>
#include <ostream>

#include "mwelect/errors.hpp"

namespace mwelect {

namespace mp = boost::multiprecision;

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw ArgError("rational with zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = mp::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::runtime_error&) {
        throw ParseError("malformed rational '" + text + "'");
    }
}

Rational& Rational::operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw ArgError("rational division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

double Rational::to_double() const {
    if (num_ == 0) return 0.0;
    // Shift both parts into a range where the double conversion is exact
    // enough; msb() requires positive input.
    BigInt n = num_ < 0 ? BigInt(-num_) : num_;
    BigInt d = den_;
    unsigned nb = mp::msb(n), db = mp::msb(d);
    unsigned top = nb > db ? nb : db;
    if (top > 400) {
        unsigned shift = top - 400;
        n >>= shift;
        d >>= shift;
        if (d == 0) d = 1;
    }
    double v = n.convert_to<double>() / d.convert_to<double>();
    return num_ < 0 ? -v : v;
}

std::string Rational::str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace mwelect
