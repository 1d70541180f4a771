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

// Reference computations used by the tests. Nothing here calls into the
// library under test.

#ifndef ALEXGLUE_TESTS_TEST_ORACLES_HPP
#define ALEXGLUE_TESTS_TEST_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <tuple>

namespace alexglue::oracle {

using P2 = std::array<double, 2>;
using P3 = std::array<double, 3>;

inline double dist(const P2& a, const P2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

// Solves side(theta) = a for theta in [0, pi], side increasing in theta.
inline double bisect_angle(const std::function<double(double)>& side, double a) {
  double lo = 0.0, hi = std::numbers::pi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (side(mid) < a ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double hyperbolic_angle_by_bisection(double a, double b, double c) {
  return bisect_angle(
      [&](double t) {
        return std::acosh(std::cosh(b) * std::cosh(c) - std::sinh(b) * std::sinh(c) * std::cos(t));
      },
      a);
}

inline double spherical_angle_by_bisection(double a, double b, double c) {
  return bisect_angle(
      [&](double t) {
        const double x = std::cos(b) * std::cos(c) + std::sin(b) * std::sin(c) * std::cos(t);
        return std::acos(std::clamp(x, -1.0, 1.0));
      },
      a);
}

// Side lengths of a random non-degenerate planar triangle with sides in
// roughly [0.01, 2].
template <typename Rng>
std::tuple<double, double, double> random_planar_triangle(Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const P2 x{u(rng), u(rng)}, y{u(rng), u(rng)}, z{u(rng), u(rng)};
    const double a = dist(y, z), b = dist(x, y), c = dist(x, z);
    const double area2 = std::abs((y[0] - x[0]) * (z[1] - x[1]) - (y[1] - x[1]) * (z[0] - x[0]));
    if (std::min({a, b, c}) > 0.01 && area2 > 1e-3) return {a, b, c};
  }
}

struct LemmaDistances {
  double dqp, dqs, dqx, dpx, dps;
};

inline LemmaDistances planar_distances(const P2& q, const P2& s, const P2& p, const P2& x) {
  return {dist(q, p), dist(q, s), dist(q, x), dist(p, x), dist(p, s)};
}

template <typename Rng>
LemmaDistances random_lemma_configuration(Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> t(0.05, 0.95);
  for (;;) {
    const P2 q{u(rng), u(rng)}, s{u(rng), u(rng)}, p{u(rng), u(rng)};
    const double f = t(rng);
    const P2 x{q[0] + f * (s[0] - q[0]), q[1] + f * (s[1] - q[1])};
    const auto d = planar_distances(q, s, p, x);
    if (std::min({d.dqp, d.dqs, d.dpx, d.dps}) > 0.05) return d;
  }
}

// Random configuration realized in the model surface of curvature +1
// (unit sphere, within a small cap) or -1 (hyperboloid model).
template <typename Rng>
LemmaDistances random_model_configuration(Rng& rng, double kappa) {
  std::uniform_real_distribution<double> r(0.1, kappa > 0 ? 0.7 : 1.5);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
  std::uniform_real_distribution<double> t(0.05, 0.95);
  auto point = [&] {
    const double rr = r(rng), th = ang(rng);
    if (kappa > 0) return P3{std::sin(rr) * std::cos(th), std::sin(rr) * std::sin(th), std::cos(rr)};
    return P3{std::sinh(rr) * std::cos(th), std::sinh(rr) * std::sin(th), std::cosh(rr)};
  };
  auto d = [&](const P3& a, const P3& b) {
    if (kappa > 0) return std::acos(std::clamp(a[0] * b[0] + a[1] * b[1] + a[2] * b[2], -1.0, 1.0));
    return std::acosh(std::max(1.0, a[2] * b[2] - a[0] * b[0] - a[1] * b[1]));
  };
  for (;;) {
    const P3 q = point(), s = point(), p = point();
    const double L = d(q, s);
    if (L < 0.1) continue;
    const double f = t(rng);
    const double den = kappa > 0 ? std::sin(L) : std::sinh(L);
    const double wq = (kappa > 0 ? std::sin((1 - f) * L) : std::sinh((1 - f) * L)) / den;
    const double ws = (kappa > 0 ? std::sin(f * L) : std::sinh(f * L)) / den;
    const P3 x{wq * q[0] + ws * s[0], wq * q[1] + ws * s[1], wq * q[2] + ws * s[2]};
    LemmaDistances out{d(q, p), L, f * L, d(p, x), d(p, s)};
    if (std::min({out.dqp, out.dpx, out.dps}) > 0.05) return out;
  }
}

}  // namespace alexglue::oracle

#endif  // ALEXGLUE_TESTS_TEST_ORACLES_HPP
