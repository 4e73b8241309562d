#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "cosym/error.hpp"
#include "cosym/scenario.hpp"

namespace cosym {

enum class HolonomyKind { Trivial, CyclicFinite, InfiniteCyclic };

inline std::string to_string(HolonomyKind k) {
  switch (k) {
    case HolonomyKind::Trivial: return "trivial";
    case HolonomyKind::CyclicFinite: return "cyclic_finite";
    case HolonomyKind::InfiniteCyclic: return "infinite_cyclic";
  }
  return "?";
}

struct HolonomyResult {
  HolonomyKind kind = HolonomyKind::Trivial;
  int order = 1;              // return period when finite, 0 when infinite
  int iterations_used = 0;
  double closest_return = 0.0;
  double generator_angle = 0.0;  // average rotation of the test point per cycle

  std::string describe() const {
    std::ostringstream os;
    switch (kind) {
      case HolonomyKind::Trivial:
        os << "trivial (return map fixes the test point)";
        break;
      case HolonomyKind::CyclicFinite:
        os << "cyclic of order " << order;
        break;
      case HolonomyKind::InfiniteCyclic:
        os << "no return within " << iterations_used
           << " iterations (closest " << closest_return << ")";
        break;
    }
    return os.str();
  }
};

// Transverse holonomy of the central leaf of a suspension: iterate the return
// map on a test point near the fixed origin and look for the first return.
// Order 1 means the map fixes the point (trivial holonomy); a first return at
// step q reads as a cyclic group of order q; no return within the budget is
// reported as infinite cyclic together with the closest approach seen.
inline HolonomyResult mapping_torus_holonomy(const ReturnMapSpec& spec,
                                             const Eigen::Vector2d& test_point,
                                             double tol = 1e-8,
                                             std::int64_t n_max = 10000) {
  if (spec.map(Eigen::Vector2d::Zero()).norm() > tol)
    fail(ErrorCode::OriginNotFixed, "return map must fix the origin");

  HolonomyResult out;
  const double scale = test_point.norm();
  if (scale <= tol)
    fail(ErrorCode::OutOfRange, "test point must sit away from the origin");

  Eigen::Vector2d p = test_point;
  double angle_sum = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 1; i <= n_max; ++i) {
    const Eigen::Vector2d q = spec.map(p);
    angle_sum += std::atan2(p.x() * q.y() - p.y() * q.x(), p.dot(q));
    p = q;
    const double dist = (p - test_point).norm();
    best = std::min(best, dist);
    if (dist <= tol * std::max(1.0, scale)) {
      out.iterations_used = static_cast<int>(i);
      out.closest_return = dist;
      out.generator_angle = angle_sum / static_cast<double>(i);
      out.kind = (i == 1) ? HolonomyKind::Trivial : HolonomyKind::CyclicFinite;
      out.order = static_cast<int>(i);
      return out;
    }
  }
  out.kind = HolonomyKind::InfiniteCyclic;
  out.order = 0;
  out.iterations_used = static_cast<int>(n_max);
  out.closest_return = best;
  out.generator_angle = angle_sum / static_cast<double>(n_max);
  return out;
}

inline HolonomyResult scenario_holonomy(const Scenario& S,
                                        const Eigen::Vector2d& test_point =
                                            Eigen::Vector2d(0.1, 0.0),
                                        double tol = 1e-8,
                                        std::int64_t n_max = 10000) {
  if (!S.holonomy_return)
    fail(ErrorCode::NoFoliation, "scenario carries no transverse return map");
  return mapping_torus_holonomy(*S.holonomy_return, test_point, tol, n_max);
}

}  // namespace cosym
