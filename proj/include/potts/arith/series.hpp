#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "potts/arith/mpoly.hpp"

namespace potts {

// Distinguished size variable: edges (t) for maps, vertices (w) for triangulations.
enum class SizeVar { t, w };

inline const char* name(SizeVar v) { return v == SizeVar::t ? "t" : "w"; }

class SeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Truncated power series c_0 + c_1 s + ... + c_N s^N + O(s^{N+1}).
// Every operation reports only the precision it can justify.
template <class C>
class Series {
 public:
  Series() = default;
  Series(SizeVar var, int order) : var_(var), coeffs_(static_cast<std::size_t>(order + 1)) {
    if (order < 0) throw SeriesError("negative truncation order");
  }
  Series(SizeVar var, std::vector<C> coeffs) : var_(var), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw SeriesError("series needs at least one coefficient");
  }

  SizeVar var() const { return var_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<C>& coeffs() const { return coeffs_; }

  const C& operator[](int n) const {
    if (n < 0 || n > order()) throw SeriesError("coefficient index beyond truncation order");
    return coeffs_[static_cast<std::size_t>(n)];
  }
  C& operator[](int n) {
    if (n < 0 || n > order()) throw SeriesError("coefficient index beyond truncation order");
    return coeffs_[static_cast<std::size_t>(n)];
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const C& c) { return potts::is_zero(c); });
  }
  // Index of the first nonzero coefficient, or -1.
  int valuation() const {
    for (int n = 0; n <= order(); ++n)
      if (!potts::is_zero(coeffs_[static_cast<std::size_t>(n)])) return n;
    return -1;
  }

  Series truncated(int n) const {
    if (n > order()) throw SeriesError("cannot extend precision by truncation");
    return Series(var_, std::vector<C>(coeffs_.begin(), coeffs_.begin() + n + 1));
  }

  Series operator-() const {
    Series r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend Series operator+(const Series& a, const Series& b) {
    check_var(a, b);
    int n = std::min(a.order(), b.order());
    Series r(a.var_, n);
    for (int k = 0; k <= n; ++k) r.coeffs_[k] = a.coeffs_[k] + b.coeffs_[k];
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) {
    check_var(a, b);
    int n = std::min(a.order(), b.order());
    Series r(a.var_, n);
    for (int k = 0; k <= n; ++k) r.coeffs_[k] = a.coeffs_[k] - b.coeffs_[k];
    return r;
  }
  friend Series operator*(const Series& a, const Series& b) {
    check_var(a, b);
    int n = std::min(a.order(), b.order());
    Series r(a.var_, n);
    for (int i = 0; i <= n; ++i) {
      if (potts::is_zero(a.coeffs_[i])) continue;
      for (int j = 0; i + j <= n; ++j) {
        if (potts::is_zero(b.coeffs_[j])) continue;
        r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return r;
  }
  friend Series operator*(const Series& a, const C& c) {
    Series r = a;
    for (auto& x : r.coeffs_) x = x * c;
    return r;
  }
  friend Series operator*(const C& c, const Series& a) { return a * c; }
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  friend bool operator==(const Series& a, const Series& b) {
    return a.var_ == b.var_ && a.coeffs_ == b.coeffs_;
  }

  Series pow(unsigned k) const {
    Series r(var_, order());
    r.coeffs_[0] = C(1);
    for (unsigned i = 0; i < k; ++i) r *= *this;
    return r;
  }

  // d/ds loses one order of precision.
  Series derivative() const {
    if (order() < 1) throw SeriesError("derivative of an order-0 series");
    Series r(var_, order() - 1);
    for (int k = 1; k <= order(); ++k) r.coeffs_[k - 1] = coeffs_[k] * C(k);
    return r;
  }
  // Multiplication by s^k gains k orders.
  Series shifted(int k) const {
    Series r(var_, order() + k);
    for (int n = 0; n <= order(); ++n) r.coeffs_[n + k] = coeffs_[n];
    return r;
  }
  // Division by s^k; the dropped coefficients must vanish.
  Series divided_by_var(int k) const {
    if (k > order()) throw SeriesError("division by s^k beyond precision");
    for (int n = 0; n < k; ++n)
      if (!potts::is_zero(coeffs_[n])) throw SeriesError("series not divisible by s^k");
    return Series(var_, std::vector<C>(coeffs_.begin() + k, coeffs_.end()));
  }

  template <class F>
  auto map(F&& f) const -> Series<decltype(f(std::declval<const C&>()))> {
    using D = decltype(f(std::declval<const C&>()));
    std::vector<D> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(f(c));
    return Series<D>(var_, std::move(out));
  }

 private:
  static void check_var(const Series& a, const Series& b) {
    if (a.var_ != b.var_) throw SeriesError("series in different size variables");
  }

  SizeVar var_ = SizeVar::t;
  std::vector<C> coeffs_{C()};
};

using PolySeries = Series<Poly>;

// Coefficient-wise exact division by a nonzero polynomial.
template <class Vars>
Series<MPoly<Vars>> divide_exact(const Series<MPoly<Vars>>& s, const MPoly<Vars>& d) {
  return s.map([&](const MPoly<Vars>& c) { return c.divide_exact(d); });
}

// Reads the powers of ring symbol `v` of `p` as a series in `var`, to `order`.
template <class Vars>
Series<MPoly<Vars>> series_from_poly(const MPoly<Vars>& p, std::size_t v, SizeVar var, int order) {
  auto cs = p.coefficients_in(v);
  Series<MPoly<Vars>> s(var, order);
  for (std::size_t k = 0; k < cs.size() && static_cast<int>(k) <= order; ++k)
    s[static_cast<int>(k)] = cs[k];
  return s;
}

}  // namespace potts
