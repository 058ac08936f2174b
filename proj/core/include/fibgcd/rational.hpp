#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace fibgcd {

using BigInt = boost::multiprecision::cpp_int;

// Exact reduced fraction. Arbitrary-precision components: density products
// over many primes overflow 128 bits well before y = 50, so there is no
// fixed-width bound to document beyond available memory. Kept reduced after
// every operation; denominator always positive.
class Rational {
 public:
  Rational() = default;  // 0/1
  Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }
  explicit Rational(BigInt value) : num_(std::move(value)) {}

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  Rational& operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ <= b.num_ * a.den_;
  }

  double to_double() const {
    return num_.convert_to<double>() / den_.convert_to<double>();
  }

  std::string to_string() const {
    return num_.str() + "/" + den_.str();
  }

 private:
  void normalize() {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_{0};
  BigInt den_{1};
};

}  // namespace fibgcd
