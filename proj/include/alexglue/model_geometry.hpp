// Copyright 2026 The alexglue Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Trigonometry of the simply connected model surfaces of constant curvature
// kappa: comparison angles and Alexandrov's lemma as a numeric predicate.

#ifndef ALEXGLUE_MODEL_GEOMETRY_HPP
#define ALEXGLUE_MODEL_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "alexglue/errors.hpp"

namespace alexglue::model {

/// Slack allowed on the cosine of a comparison angle before the side
/// lengths are rejected as not forming a triangle. Anything closer is
/// clamped onto the degenerate triangle.
inline constexpr double kCosineClampTolerance = 1e-9;

/// Ties within this many radians count as equalities in the lemma
/// predicates.
inline constexpr double kAngleTieTolerance = 1e-9;

/// Side lengths of a triangle in the model surface S^2_kappa. `a` is the
/// side opposite the evaluated vertex.
struct ComparisonTriangle {
  double kappa = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

namespace detail {

// sn_kappa(x): the normalized generalized sine, continuous in kappa.
inline double generalized_sine(double kappa, double x) {
  if (kappa > 0.0) {
    const double k = std::sqrt(kappa);
    return std::sin(k * x) / k;
  }
  if (kappa < 0.0) {
    const double k = std::sqrt(-kappa);
    return std::sinh(k * x) / k;
  }
  return x;
}

inline std::string describe(const ComparisonTriangle& t) {
  std::ostringstream os;
  os.precision(17);
  os << "(kappa=" << t.kappa << ", a=" << t.a << ", b=" << t.b
     << ", c=" << t.c << ")";
  return os.str();
}

}  // namespace detail

/// Angle at the vertex between sides b and c of the model triangle with
/// sides (a, b, c) in S^2_kappa.
///
/// Uses the half-angle form tan^2(t/2) = sn(p-b) sn(p-c) / (sn(p) sn(p-a)),
/// p the half perimeter, which reduces to the law of cosines at kappa = 0
/// and to the spherical/hyperbolic laws otherwise while staying accurate
/// for thin triangles.
inline double comparison_angle(double kappa, double a, double b, double c) {
  const ComparisonTriangle tri{kappa, a, b, c};
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) &&
        std::isfinite(kappa))) {
    throw Error(ErrorCode::kInvalidTriangle,
                "non-finite input " + detail::describe(tri));
  }
  if (a < 0.0 || b < 0.0 || c < 0.0) {
    throw Error(ErrorCode::kInvalidTriangle,
                "negative side " + detail::describe(tri));
  }
  if (b == 0.0 || c == 0.0) {
    throw Error(ErrorCode::kZeroSide,
                "adjacent side is zero " + detail::describe(tri));
  }
  const double perimeter = a + b + c;
  if (kappa > 0.0) {
    const double limit = 2.0 * std::numbers::pi / std::sqrt(kappa);
    if (perimeter > limit * (1.0 + kCosineClampTolerance)) {
      throw Error(ErrorCode::kInvalidTriangle,
                  "perimeter exceeds 2*pi/sqrt(kappa) " +
                      detail::describe(tri));
    }
  }
  const double half = 0.5 * perimeter;
  const double sb = detail::generalized_sine(kappa, b);
  const double sc = detail::generalized_sine(kappa, c);
  if (!(sb > 0.0 && sc > 0.0)) {
    throw Error(ErrorCode::kInvalidTriangle,
                "adjacent side reaches the antipodal distance " +
                    detail::describe(tri));
  }
  const double denom = sb * sc;
  // sin^2(t/2) and cos^2(t/2); cos(t) = 1 - 2 sin2 = 2 cos2 - 1.
  double sin2 = detail::generalized_sine(kappa, half - b) *
                detail::generalized_sine(kappa, half - c) / denom;
  double cos2 = detail::generalized_sine(kappa, half) *
                detail::generalized_sine(kappa, half - a) / denom;
  if (sin2 < -0.5 * kCosineClampTolerance ||
      cos2 < -0.5 * kCosineClampTolerance) {
    throw Error(ErrorCode::kInvalidTriangle,
                "triangle inequality fails " + detail::describe(tri));
  }
  sin2 = std::max(sin2, 0.0);
  cos2 = std::max(cos2, 0.0);
  const double angle = 2.0 * std::atan2(std::sqrt(sin2), std::sqrt(cos2));
  return std::clamp(angle, 0.0, std::numbers::pi);
}

inline double comparison_angle(const ComparisonTriangle& t) {
  return comparison_angle(t.kappa, t.a, t.b, t.c);
}

/// The two sides of Alexandrov's lemma for points p, q, s and x on a
/// geodesic [q, s], given by their distances; d(x, s) = dqs - dqx.
///
/// first:  angle_q(p; x) >= angle_q(p; s)
/// second: angle_x(p; q) + angle_x(p; s) <= pi
///
/// The lemma says the two are equivalent; callers compare them.
inline std::pair<bool, bool> alexandrov_lemma_predicates(double kappa,
                                                         double dqp,
                                                         double dqs,
                                                         double dqx,
                                                         double dpx,
                                                         double dps) {
  if (!(dqx > 0.0 && dqx < dqs)) {
    throw Error(ErrorCode::kInvalidConfiguration,
                "x must lie strictly inside [q, s]");
  }
  const double dxs = dqs - dqx;
  try {
    const double at_q_px = comparison_angle(kappa, dpx, dqp, dqx);
    const double at_q_ps = comparison_angle(kappa, dps, dqp, dqs);
    const double at_x_pq = comparison_angle(kappa, dqp, dpx, dqx);
    const double at_x_ps = comparison_angle(kappa, dps, dpx, dxs);
    const bool shrinking = at_q_px >= at_q_ps - kAngleTieTolerance;
    const bool supplementary =
        at_x_pq + at_x_ps <= std::numbers::pi + kAngleTieTolerance;
    return {shrinking, supplementary};
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidConfiguration, e.what());
  }
}

}  // namespace alexglue::model

#endif  // ALEXGLUE_MODEL_GEOMETRY_HPP
