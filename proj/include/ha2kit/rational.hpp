#ifndef HA2KIT_RATIONAL_HPP
#define HA2KIT_RATIONAL_HPP

#include <stdexcept>
#include <string>

#include "ha2kit/bigint.hpp"

namespace ha2kit {

// Exact rational number, always in lowest terms with positive denominator.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    static Rational from_string(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(BigInt::from_string(s));
        return Rational(BigInt::from_string(s.substr(0, slash)), BigInt::from_string(s.substr(slash + 1)));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == BigInt(1) && den_ == BigInt(1); }
    int sign() const { return num_.sign(); }

    Rational operator-() const { return Rational(-num_, den_, no_normalize{}); }

    Rational operator+(const Rational& o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Rational operator*(const Rational& o) const { return Rational(num_ * o.num_, den_ * o.den_); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(num_ * o.den_, den_ * o.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return (num_ * o.den_) < (o.num_ * den_); }

    std::string to_string() const {
        if (den_ == BigInt(1)) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

  private:
    struct no_normalize {};
    Rational(BigInt n, BigInt d, no_normalize) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        if (den_.is_negative()) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = BigInt::gcd(num_, den_);
        if (g != BigInt(1)) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }

    BigInt num_;
    BigInt den_;
};

inline Rational operator*(long long a, const Rational& b) { return Rational(a) * b; }

}  // namespace ha2kit

#endif
