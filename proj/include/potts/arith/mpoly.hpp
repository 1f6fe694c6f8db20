#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "potts/arith/rational.hpp"

namespace potts {

// Symbol set of the parameter ring: q, b (= beta = nu - 1), w, x, y.
// 12 bits per exponent, q most significant, so integer order on packed
// monomials is lexicographic order q > b > w > x > y.
struct PottsVars {
  static constexpr std::size_t kCount = 5;
  static constexpr unsigned kBits = 12;
  static constexpr std::array<std::string_view, kCount> kNames{"q", "b", "w", "x", "y"};
};

// Symbols used by differential-polynomial fixtures: the parameters, both
// size variables, and placeholders X,Y,Z,T (S, S', S'', S''') and U,V
// (F, F') for a second series.
struct OdeVars {
  static constexpr std::size_t kCount = 10;
  static constexpr unsigned kBits = 6;
  static constexpr std::array<std::string_view, kCount> kNames{"q", "b", "w", "t", "X",
                                                               "Y", "Z", "T", "U", "V"};
};

namespace sym {
inline constexpr std::size_t q = 0;
inline constexpr std::size_t b = 1;
inline constexpr std::size_t w = 2;
inline constexpr std::size_t x = 3;
inline constexpr std::size_t y = 4;
}  // namespace sym

class DivisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Vars>
class MPoly {
 public:
  static constexpr std::size_t kVars = Vars::kCount;
  static constexpr unsigned kBits = Vars::kBits;
  static constexpr std::uint64_t kMask = (std::uint64_t{1} << kBits) - 1;
  static_assert(kVars * kBits <= 64, "packed monomial does not fit in 64 bits");

  using Mono = std::uint64_t;
  using Exponents = std::array<unsigned, kVars>;

  struct Term {
    Mono mono;
    Rational coef;
  };

  MPoly() = default;
  MPoly(const Rational& c) {  // NOLINT: implicit constant embedding
    if (sgn(c) != 0) terms_.push_back({0, c});
  }
  MPoly(long c) : MPoly(Rational(c)) {}  // NOLINT
  MPoly(int c) : MPoly(Rational(c)) {}   // NOLINT

  static MPoly variable(std::size_t v, unsigned power = 1) {
    Exponents e{};
    e[v] = power;
    return monomial(e, Rational(1));
  }
  static MPoly monomial(const Exponents& e, const Rational& c) {
    MPoly p;
    if (sgn(c) != 0) p.terms_.push_back({pack(e), c});
    return p;
  }
  // Terms must be sorted strictly descending with nonzero coefficients.
  static MPoly from_sorted_terms(std::vector<Term> terms) {
    MPoly p;
    p.terms_ = std::move(terms);
    return p;
  }
  static MPoly from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.mono > b.mono; });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coef += t.coef;
      } else {
        if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
    return from_sorted_terms(std::move(out));
  }

  static constexpr unsigned shift(std::size_t v) {
    return static_cast<unsigned>(kBits * (kVars - 1 - v));
  }
  static Mono pack(const Exponents& e) {
    Mono m = 0;
    for (std::size_t v = 0; v < kVars; ++v) {
      if (e[v] > kMask) throw std::overflow_error("exponent exceeds packed field width");
      m |= static_cast<Mono>(e[v]) << shift(v);
    }
    return m;
  }
  static Exponents unpack(Mono m) {
    Exponents e{};
    for (std::size_t v = 0; v < kVars; ++v) e[v] = exponent(m, v);
    return e;
  }
  static unsigned exponent(Mono m, std::size_t v) {
    return static_cast<unsigned>((m >> shift(v)) & kMask);
  }
  static bool divides(Mono d, Mono m) {
    for (std::size_t v = 0; v < kVars; ++v)
      if (exponent(d, v) > exponent(m, v)) return false;
    return true;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == 0); }
  Rational constant_term() const {
    if (!terms_.empty() && terms_.back().mono == 0) return terms_.back().coef;
    return Rational(0);
  }
  const Term& leading() const { return terms_.front(); }

  unsigned degree(std::size_t v) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, exponent(t.mono, v));
    return d;
  }
  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) {
      unsigned s = 0;
      for (std::size_t v = 0; v < kVars; ++v) s += exponent(t.mono, v);
      d = std::max(d, s);
    }
    return d;
  }
  Exponents degrees() const {
    Exponents d{};
    for (const auto& t : terms_)
      for (std::size_t v = 0; v < kVars; ++v) d[v] = std::max(d[v], exponent(t.mono, v));
    return d;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef)
        return false;
    }
    return true;
  }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  MPoly operator-() const {
    MPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) { return merge(a, b, false); }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return merge(a, b, true); }
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }

  friend MPoly operator*(const MPoly& a, const MPoly& b) { return multiply(a, b); }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  friend MPoly operator*(const MPoly& a, const Rational& c) { return a.scaled(c); }
  friend MPoly operator*(const Rational& c, const MPoly& a) { return a.scaled(c); }

  MPoly scaled(const Rational& c) const {
    if (sgn(c) == 0) return {};
    MPoly r = *this;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
  }

  MPoly times_monomial(const Exponents& e, const Rational& c = Rational(1)) const {
    check_degree_sum(degrees(), e);
    Mono m = pack(e);
    MPoly r;
    if (sgn(c) == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono + m, t.coef * c});
    return r;
  }

  MPoly pow(unsigned n) const {
    MPoly result(Rational(1));
    MPoly base = *this;
    while (n > 0) {
      if (n & 1u) result *= base;
      n >>= 1u;
      if (n > 0) base *= base;
    }
    return result;
  }

  MPoly derivative(std::size_t v) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    const Mono unit = Mono{1} << shift(v);
    for (const auto& t : terms_) {
      unsigned e = exponent(t.mono, v);
      if (e == 0) continue;
      out.push_back({t.mono - unit, t.coef * e});
    }
    // Lowering one exponent keeps lexicographic order among survivors.
    return from_sorted_terms(std::move(out));
  }

  // Coefficients of v^0, v^1, ... as polynomials free of v.
  std::vector<MPoly> coefficients_in(std::size_t v) const {
    std::vector<MPoly> out(terms_.empty() ? 0 : degree(v) + 1);
    for (const auto& t : terms_) {
      unsigned e = exponent(t.mono, v);
      out[e].terms_.push_back({t.mono - (static_cast<Mono>(e) << shift(v)), t.coef});
    }
    return out;  // each bucket inherits descending order
  }
  MPoly coefficient_in(std::size_t v, unsigned k) const {
    std::vector<Term> out;
    for (const auto& t : terms_)
      if (exponent(t.mono, v) == k)
        out.push_back({t.mono - (static_cast<Mono>(k) << shift(v)), t.coef});
    return from_sorted_terms(std::move(out));
  }

  static MPoly from_coefficients_in(std::size_t v, const std::vector<MPoly>& coeffs) {
    MPoly r;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k].is_zero()) continue;
      Exponents e{};
      e[v] = static_cast<unsigned>(k);
      r += coeffs[k].times_monomial(e);
    }
    return r;
  }

  // p(..., v := value, ...) by Horner in v.
  MPoly substitute(std::size_t v, const MPoly& value) const {
    auto cs = coefficients_in(v);
    MPoly r;
    for (std::size_t k = cs.size(); k-- > 0;) {
      r = r * value + cs[k];
    }
    return r;
  }
  MPoly evaluate(std::size_t v, const Rational& value) const { return substitute(v, MPoly(value)); }

  // Rename: move exponent of `from` into `to` (which must be absent or is added).
  MPoly rename(std::size_t from, std::size_t to) const {
    if (from == to) return *this;
    return substitute(from, variable(to));
  }
  MPoly swap_vars(std::size_t a, std::size_t b) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Exponents e = unpack(t.mono);
      std::swap(e[a], e[b]);
      out.push_back({pack(e), t.coef});
    }
    return from_terms(std::move(out));
  }

  // Positive rational c with (*this / c) integral and primitive; sign follows the leading term.
  Rational content() const {
    if (terms_.empty()) return Rational(1);
    Integer g = 0;
    Integer l = 1;
    for (const auto& t : terms_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_num_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
    }
    Rational c(g, l);
    c.canonicalize();
    if (sgn(terms_.front().coef) < 0) c = -c;
    return c;
  }

  // Exact division; throws DivisionError if divisor does not divide.
  MPoly divide_exact(const MPoly& d) const {
    auto q = try_divide(d);
    if (!q) throw DivisionError("polynomial division is not exact");
    return std::move(*q);
  }

  std::optional<MPoly> try_divide(const MPoly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    if (terms_.empty()) return MPoly{};
    if (d.terms_.size() == 1) {
      const Term& dt = d.terms_.front();
      std::vector<Term> out;
      out.reserve(terms_.size());
      Rational inv = 1 / dt.coef;
      for (const auto& t : terms_) {
        if (!divides(dt.mono, t.mono)) return std::nullopt;
        out.push_back({t.mono - dt.mono, t.coef * inv});
      }
      return from_sorted_terms(std::move(out));
    }
    // Remainder as an ordered map; the leading term of d must divide the
    // leading term of the remainder at every step.
    std::map<Mono, Rational, std::greater<>> rem;
    for (const auto& t : terms_) rem.emplace(t.mono, t.coef);
    const Term& lt = d.terms_.front();
    Rational inv = 1 / lt.coef;
    std::vector<Term> quot;
    Rational prod;
    while (!rem.empty()) {
      auto it = rem.begin();
      if (!divides(lt.mono, it->first)) return std::nullopt;
      Mono qm = it->first - lt.mono;
      Rational qc = it->second * inv;
      rem.erase(it);
      for (std::size_t k = 1; k < d.terms_.size(); ++k) {
        const Term& dt = d.terms_[k];
        Mono m = qm + dt.mono;
        prod = qc * dt.coef;
        auto [pos, inserted] = rem.try_emplace(m, -prod);
        if (!inserted) {
          pos->second -= prod;
          if (sgn(pos->second) == 0) rem.erase(pos);
        }
      }
      quot.push_back({qm, std::move(qc)});
    }
    return from_sorted_terms(std::move(quot));
  }

 private:
  static void check_degree_sum(const Exponents& a, const Exponents& b) {
    for (std::size_t v = 0; v < kVars; ++v)
      if (a[v] + b[v] > kMask) throw std::overflow_error("exponent overflow in product");
  }

  static MPoly merge(const MPoly& a, const MPoly& b, bool subtract) {
    std::vector<Term> out;
    out.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].mono > b.terms_[j].mono)) {
        out.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].mono > a.terms_[i].mono) {
        out.push_back(b.terms_[j++]);
        if (subtract) out.back().coef = -out.back().coef;
      } else {
        Rational c;
        if (subtract) {
          c = a.terms_[i].coef - b.terms_[j].coef;
        } else {
          c = a.terms_[i].coef + b.terms_[j].coef;
        }
        if (sgn(c) != 0) out.push_back({a.terms_[i].mono, std::move(c)});
        ++i;
        ++j;
      }
    }
    return from_sorted_terms(std::move(out));
  }

  static MPoly multiply(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    check_degree_sum(a.degrees(), b.degrees());
    const MPoly& small = a.size() <= b.size() ? a : b;
    const MPoly& big = a.size() <= b.size() ? b : a;
    if (small.size() == 1) {
      const Term& s = small.terms_.front();
      MPoly r;
      r.terms_.reserve(big.size());
      for (const auto& t : big.terms_) r.terms_.push_back({t.mono + s.mono, t.coef * s.coef});
      return r;
    }
    // Heap merge over rows small[i] * big (each row already descending).
    using Entry = std::pair<Mono, std::size_t>;  // (monomial, row)
    std::vector<std::size_t> col(small.size(), 0);
    std::priority_queue<Entry> heap;
    for (std::size_t i = 0; i < small.size(); ++i)
      heap.emplace(small.terms_[i].mono + big.terms_[0].mono, i);
    std::vector<Term> out;
    out.reserve(big.size() + small.size());
    Rational prod;
    while (!heap.empty()) {
      auto [m, row] = heap.top();
      heap.pop();
      const Rational& sc = small.terms_[row].coef;
      prod = sc * big.terms_[col[row]].coef;
      if (!out.empty() && out.back().mono == m) {
        out.back().coef += prod;
      } else {
        if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
        out.push_back({m, prod});
      }
      if (++col[row] < big.size())
        heap.emplace(small.terms_[row].mono + big.terms_[col[row]].mono, row);
    }
    if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
    return from_sorted_terms(std::move(out));
  }

  std::vector<Term> terms_;  // strictly descending monomials, nonzero coefficients
};

using Poly = MPoly<PottsVars>;
using OdePoly = MPoly<OdeVars>;

template <class Vars>
bool is_zero(const MPoly<Vars>& p) {
  return p.is_zero();
}
inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

// Canonical text: terms in descending lex order, explicit '*', integer or a/b coefficients.
template <class Vars>
std::string to_string(const MPoly<Vars>& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coef;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t v = 0; v < MPoly<Vars>::kVars; ++v) {
      unsigned e = MPoly<Vars>::exponent(t.mono, v);
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += Vars::kNames[v];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      s += c.get_str();
    } else if (c == 1) {
      s += mono;
    } else {
      s += c.get_str() + "*" + mono;
    }
  }
  return s;
}

}  // namespace potts
