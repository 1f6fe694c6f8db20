#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "potts/arith/ratfrac.hpp"

namespace potts {

enum class PivotRule { first_nonzero, last_nonzero, fewest_terms };

template <class Vars>
class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(std::size_t column, Frac<Vars> determinant)
      : std::runtime_error("singular linear system: no pivot in column " + std::to_string(column)),
        column_(column),
        determinant_(std::move(determinant)) {}
  std::size_t column() const { return column_; }
  const Frac<Vars>& determinant() const { return determinant_; }

 private:
  std::size_t column_;
  Frac<Vars> determinant_;
};

template <class Vars>
struct LinearSolution {
  std::vector<Frac<Vars>> x;
  Frac<Vars> determinant;
};

template <class Vars>
using FracMatrix = std::vector<std::vector<Frac<Vars>>>;

namespace detail {

// Multiplies a row of fractions by the product of its distinct denominators.
template <class Vars>
std::pair<std::vector<MPoly<Vars>>, MPoly<Vars>> clear_row(const std::vector<Frac<Vars>>& row) {
  using P = MPoly<Vars>;
  std::vector<P> dens;
  for (const auto& f : row) {
    if (f.is_zero() || f.den().is_constant()) continue;
    bool seen = false;
    for (const auto& d : dens) seen = seen || d == f.den();
    if (!seen) dens.push_back(f.den());
  }
  P multiplier(Rational(1));
  for (const auto& d : dens) multiplier *= d;
  std::vector<P> out;
  out.reserve(row.size());
  for (const auto& f : row) {
    if (f.is_zero()) {
      out.emplace_back();
      continue;
    }
    P v = f.num();
    bool skipped = f.den().is_constant();
    for (const auto& d : dens) {
      if (!skipped && d == f.den()) {
        skipped = true;
        continue;
      }
      v *= d;
    }
    out.push_back(std::move(v));
  }
  return {std::move(out), std::move(multiplier)};
}

}  // namespace detail

// Fraction-free (Bareiss) elimination of [A | rhs] over the polynomial ring,
// followed by fraction-free back substitution. Returns the solution and det(A).
template <class Vars>
LinearSolution<Vars> solve_linear_exact(const FracMatrix<Vars>& a, const std::vector<Frac<Vars>>& rhs,
                                        PivotRule rule = PivotRule::first_nonzero) {
  using P = MPoly<Vars>;
  const std::size_t n = a.size();
  if (rhs.size() != n) throw std::invalid_argument("rhs length does not match matrix");
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("matrix is not square");
  if (n == 0) return {{}, Frac<Vars>(1)};

  std::vector<std::vector<P>> m(n);
  P row_scale(Rational(1));
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<Frac<Vars>> aug = a[r];
    aug.push_back(rhs[r]);
    auto [cleared, mult] = detail::clear_row(aug);
    m[r] = std::move(cleared);
    row_scale *= mult;
  }

  int sign = 1;
  P prev(Rational(1));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    for (std::size_t r = k; r < n; ++r) {
      if (m[r][k].is_zero()) continue;
      if (pivot == n) {
        pivot = r;
        if (rule == PivotRule::first_nonzero) break;
      } else if (rule == PivotRule::last_nonzero ||
                 (rule == PivotRule::fewest_terms && m[r][k].size() < m[pivot][k].size())) {
        pivot = r;
      }
    }
    if (pivot == n) throw SingularSystemError<Vars>(k, Frac<Vars>(0));
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) {
        P v = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = v.divide_exact(prev);
      }
      m[i][k] = P();
    }
    prev = m[k][k];
  }

  const P& d = m[n - 1][n - 1];
  std::vector<P> y(n);
  for (std::size_t i = n; i-- > 0;) {
    P acc = d * m[i][n];
    for (std::size_t j = i + 1; j < n; ++j) acc -= m[i][j] * y[j];
    y[i] = acc.divide_exact(m[i][i]);
  }

  LinearSolution<Vars> out;
  out.x.reserve(n);
  for (auto& yi : y) out.x.emplace_back(std::move(yi), d);
  out.determinant = Frac<Vars>(d.scaled(Rational(sign)), row_scale);
  return out;
}

// Cofactor expansion along the first row; exponential, for small checks only.
template <class Vars>
Frac<Vars> determinant_cofactor(const FracMatrix<Vars>& a) {
  const std::size_t n = a.size();
  if (n == 0) return Frac<Vars>(1);
  if (n == 1) return a[0][0];
  Frac<Vars> det;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c].is_zero()) continue;
    FracMatrix<Vars> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Frac<Vars>> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(std::move(row));
    }
    Frac<Vars> term = a[0][c] * determinant_cofactor(minor);
    det = (c % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace potts
