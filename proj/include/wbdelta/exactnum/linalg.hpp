#pragma once

// Small dense linear algebra over Q: Gaussian elimination, determinants and
// the leading-minor test for negative definiteness.

#include <utility>
#include <vector>

#include "wbdelta/error.hpp"
#include "wbdelta/exactnum/rational.hpp"

namespace wbdelta {

using RationalMatrix = std::vector<std::vector<Rational>>;

inline Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

/// Solves m x = rhs exactly; a singular m is a degenerate configuration.
/// Zero entries are skipped, so banded systems stay cheap.
inline std::vector<Rational> solve_linear(RationalMatrix m, std::vector<Rational> rhs) {
  const std::size_t n = m.size();
  if (rhs.size() != n) throw Error(Errc::domain, "right-hand side has the wrong length");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) throw Error(Errc::degenerate_configuration, "singular linear system");
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c)
        if (m[col][c] != 0) m[r][c] -= factor * m[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t k = n; k-- > 0;) {
    Rational acc = rhs[k];
    for (std::size_t c = k + 1; c < n; ++c)
      if (m[k][c] != 0) acc -= m[k][c] * x[c];
    x[k] = acc / m[k][k];
  }
  return x;
}

/// Leading principal minors, k = 1..n.
inline std::vector<Rational> leading_minors(const RationalMatrix& m) {
  std::vector<Rational> out;
  for (std::size_t k = 1; k <= m.size(); ++k) {
    RationalMatrix sub(k, std::vector<Rational>(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) sub[r][c] = m[r][c];
    out.push_back(determinant(std::move(sub)));
  }
  return out;
}

/// Sylvester: (-1)^k * minor_k > 0 for every k.
inline bool is_negative_definite(const RationalMatrix& m) {
  const auto minors = leading_minors(m);
  for (std::size_t k = 0; k < minors.size(); ++k) {
    const int expected = (k % 2 == 0) ? -1 : 1;
    if (sgn(minors[k]) != expected) return false;
  }
  return true;
}

}  // namespace wbdelta
