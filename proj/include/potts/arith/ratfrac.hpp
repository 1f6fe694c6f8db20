#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "potts/arith/mpoly.hpp"

namespace potts {

// Quotient of polynomials. No polynomial gcds are taken: only integer content
// is normalized away, so equal fractions need not be equal representations.
// Compare with operator== (cross multiplication) or reduce() first.
template <class Vars>
class Frac {
 public:
  using P = MPoly<Vars>;

  Frac() : den_(Rational(1)) {}
  Frac(P num) : num_(std::move(num)), den_(Rational(1)) { normalize(); }  // NOLINT
  Frac(P num, P den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("fraction with zero denominator");
    normalize();
  }
  Frac(const Rational& c) : Frac(P(c)) {}  // NOLINT
  Frac(long c) : Frac(P(c)) {}             // NOLINT

  const P& num() const { return num_; }
  const P& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  // Cancels the denominator when it divides the numerator exactly.
  Frac reduce() const {
    if (den_.is_constant()) return *this;
    if (auto q = num_.try_divide(den_)) return Frac(std::move(*q));
    return *this;
  }
  std::optional<P> to_poly() const {
    if (den_.is_constant()) return num_.scaled(1 / den_.constant_term());
    return num_.try_divide(den_);
  }

  Frac operator-() const { return Frac(-num_, den_, Raw{}); }
  friend Frac operator+(const Frac& a, const Frac& b) {
    if (a.den_ == b.den_) return Frac(a.num_ + b.num_, a.den_);
    return Frac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Frac operator-(const Frac& a, const Frac& b) { return a + (-b); }
  friend Frac operator*(const Frac& a, const Frac& b) {
    if (a.is_zero() || b.is_zero()) return Frac();
    return Frac(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Frac operator/(const Frac& a, const Frac& b) {
    if (b.is_zero()) throw std::domain_error("division by zero fraction");
    return Frac(a.num_ * b.den_, a.den_ * b.num_);
  }
  Frac& operator+=(const Frac& o) { return *this = *this + o; }
  Frac& operator-=(const Frac& o) { return *this = *this - o; }
  Frac& operator*=(const Frac& o) { return *this = *this * o; }

  friend bool operator==(const Frac& a, const Frac& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }

  Frac derivative(std::size_t v) const {
    if (den_.is_constant()) return Frac(num_.derivative(v), den_);
    return Frac(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
  }

 private:
  struct Raw {};
  Frac(P num, P den, Raw) : num_(std::move(num)), den_(std::move(den)) {}

  void normalize() {
    if (num_.is_zero()) {
      den_ = P(Rational(1));
      return;
    }
    // Denominator becomes primitive with a positive leading coefficient.
    Rational cd = den_.content();
    if (cd != 1) {
      den_ = den_.scaled(1 / cd);
      num_ = num_.scaled(1 / cd);
    }
  }

  P num_;
  P den_;
};

using RatFrac = Frac<PottsVars>;

template <class Vars>
bool is_zero(const Frac<Vars>& f) {
  return f.is_zero();
}

template <class Vars>
std::string to_string(const Frac<Vars>& f) {
  if (f.den().is_constant()) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

}  // namespace potts
