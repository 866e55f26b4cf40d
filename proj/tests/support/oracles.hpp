#pragma once

// Independent reference computations used only by the test suites. Nothing
// here calls into the library's algorithms beyond plain data access.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <utility>

#include "wbdelta/exactnum/quad_ext.hpp"

namespace wbdelta::oracle {

/// Rational enclosure [lo, hi] of r + s*sqrt(d) from an integer square root
/// at the given number of bits.
inline std::pair<mpq_class, mpq_class> enclose(const QuadExt& x, unsigned bits) {
  if (x.is_rational()) return {x.rational_part(), x.rational_part()};
  mpz_class scale = 1;
  scale <<= bits;
  mpz_class n = mpz_class(static_cast<long>(x.radicand())) * scale * scale;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  const mpq_class lo_root(root, scale);
  const mpq_class hi_root(root + 1, scale);
  mpq_class a = x.rational_part() + x.radical_part() * lo_root;
  mpq_class b = x.rational_part() + x.radical_part() * hi_root;
  a.canonicalize();
  b.canonicalize();
  if (a > b) std::swap(a, b);
  return {a, b};
}

/// Ordering by interval refinement. Starts at `start_bits`, doubles until the
/// enclosures separate. Equality is only reported when it is structural
/// (identical value representations), which is the only way two quadratic
/// irrationals can coincide.
inline std::optional<std::strong_ordering> interval_compare(const QuadExt& x, const QuadExt& y,
                                                            unsigned start_bits = 256,
                                                            unsigned max_bits = 8192) {
  const bool same_value =
      x.rational_part() == y.rational_part() && x.radical_part() == y.radical_part() &&
      (x.is_rational() || x.radicand() == y.radicand());
  if (same_value) return std::strong_ordering::equal;
  for (unsigned bits = start_bits; bits <= max_bits; bits *= 2) {
    const auto [xl, xh] = enclose(x, bits);
    const auto [yl, yh] = enclose(y, bits);
    if (xh < yl) return std::strong_ordering::less;
    if (yh < xl) return std::strong_ordering::greater;
  }
  return std::nullopt;
}

/// Composite Simpson rule on a uniform grid; exact for cubics on each cell.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int cells) {
  const double h = (hi - lo) / cells;
  double acc = 0.0;
  for (int k = 0; k < cells; ++k) {
    const double a = lo + k * h;
    const double b = a + h;
    acc += (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
  }
  return acc;
}

/// Small random rationals p/q with |p| <= bound, 1 <= q <= bound.
inline mpq_class random_rational(std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, bound);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace wbdelta::oracle
