#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <string>
#include <utility>

namespace mwelect {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number. Always kept reduced with denominator > 0, so
// comparisons and hashing of the (num, den) pair are canonical. Scores,
// benchmarks and greedy/Banzhaf objectives are all carried as Rationals;
// float views are derived, never fed back into comparisons.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
    Rational(BigInt v) : num_(std::move(v)), den_(1) {}
    Rational(BigInt num, BigInt den);

    // Parses "p", "-p", or "p/q".
    static Rational parse(const std::string& text);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Nearest-double view; relative error < 1e-12 for |value| < 2^52.
    double to_double() const;

    // "p" when integral, "p/q" otherwise.
    std::string str() const;

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

  private:
    void normalize();
    BigInt num_, den_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace mwelect
