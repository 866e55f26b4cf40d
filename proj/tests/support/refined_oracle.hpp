#pragma once

// S(W^E; x) without the family machinery: h is evaluated from pointwise
// decompositions at the ends and midpoint of each region and integrated by
// Simpson's rule, which is exact for the quadratic pieces of h.

#include "wbdelta/azflag.hpp"

namespace wbdelta::oracle {

inline Rational h_pointwise(const SurfaceConfig& config, std::int64_t a, std::int64_t b, const FlagPoint& point,
                            const Rational& t) {
  const auto pt = decompose_at(config, a, b, t);
  const Rational pe = intersect_curve(config, pt.positive, curve::E);
  Rational ord = 0;
  for (const auto& [name, mass] : point.local_masses) ord += pt.negative.coefficient(name) * mass;
  return pe * ord + pe * pe / 2;
}

inline Rational refined_s_simpson(std::int64_t a, std::int64_t b, const FlagPoint& point) {
  const SurfaceConfig config = build_wbu_config(a, b);
  const auto regions = closed_form_family(config, a, b).breakpoints();
  Rational total = 0;
  for (std::size_t k = 0; k + 1 < regions.size(); ++k) {
    const Rational lo = regions[k], hi = regions[k + 1];
    const Rational mid = (lo + hi) / 2;
    total += (hi - lo) / 6 *
             (h_pointwise(config, a, b, point, lo) + 4 * h_pointwise(config, a, b, point, mid) +
              h_pointwise(config, a, b, point, hi));
  }
  return 2 * total / kAnticanonicalDegree;
}

}  // namespace wbdelta::oracle
