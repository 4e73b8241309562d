#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cosym/error.hpp"
#include "cosym/subspace.hpp"

namespace cosym {

// A single coordinate box with optional periodic directions and a sampling
// grid.  Periodic axes are identified modulo their range; non-periodic axes
// place grid points strictly inside the bounds (cell centers), so central
// differences never step outside.
struct ChartedManifold {
  int dim = 0;
  Vec lower;
  Vec upper;
  std::vector<bool> periodic;
  std::vector<int> grid_counts;

  void validate() const {
    if (dim < 1) fail(ErrorCode::ShapeMismatch, "dim must be >= 1");
    if (lower.size() != dim || upper.size() != dim ||
        static_cast<int>(periodic.size()) != dim ||
        static_cast<int>(grid_counts.size()) != dim)
      fail(ErrorCode::ShapeMismatch, "chart field sizes must match dim");
    for (int i = 0; i < dim; ++i) {
      if (!(upper(i) > lower(i)))
        fail(ErrorCode::ShapeMismatch, "upper must exceed lower on every axis");
      if (grid_counts[i] < 3)
        fail(ErrorCode::ShapeMismatch, "grid_counts must be >= 3 per axis");
    }
  }

  double range(int axis) const { return upper(axis) - lower(axis); }

  double spacing(int axis) const { return range(axis) / grid_counts[axis]; }

  double min_spacing() const {
    double s = spacing(0);
    for (int i = 1; i < dim; ++i) s = std::min(s, spacing(i));
    return s;
  }

  // Grid coordinate on one axis.  Periodic axes sample lower + j*step
  // (the seam point appears once); non-periodic axes sample cell centers.
  double axis_value(int axis, int j) const {
    const double step = spacing(axis);
    return periodic[axis] ? lower(axis) + j * step
                          : lower(axis) + (j + 0.5) * step;
  }

  std::int64_t grid_size() const {
    std::int64_t n = 1;
    for (int c : grid_counts) n *= c;
    return n;
  }

  void decode(std::int64_t flat, std::vector<int>& idx) const {
    idx.resize(dim);
    for (int i = dim - 1; i >= 0; --i) {
      idx[i] = static_cast<int>(flat % grid_counts[i]);
      flat /= grid_counts[i];
    }
  }

  std::int64_t encode(const std::vector<int>& idx) const {
    std::int64_t flat = 0;
    for (int i = 0; i < dim; ++i) flat = flat * grid_counts[i] + idx[i];
    return flat;
  }

  Vec grid_point(const std::vector<int>& idx) const {
    Vec x(dim);
    for (int i = 0; i < dim; ++i) x(i) = axis_value(i, idx[i]);
    return x;
  }

  Vec grid_point(std::int64_t flat) const {
    std::vector<int> idx;
    decode(flat, idx);
    return grid_point(idx);
  }

  // Maps periodic coordinates back into [lower, upper); leaves the rest alone.
  Vec wrap(Vec x) const {
    for (int i = 0; i < dim; ++i) {
      if (!periodic[i]) continue;
      const double r = range(i);
      double t = std::fmod(x(i) - lower(i), r);
      if (t < 0) t += r;
      x(i) = lower(i) + t;
    }
    return x;
  }

  bool in_bounds(const Vec& x, double slack = 0.0) const {
    for (int i = 0; i < dim; ++i) {
      if (periodic[i]) continue;
      if (x(i) < lower(i) - slack || x(i) > upper(i) + slack) return false;
    }
    return true;
  }

  // Grid neighbors along one axis (wrapping on periodic axes); returns false
  // when the step leaves a non-periodic axis.
  bool neighbor(const std::vector<int>& idx, int axis, int dir,
                std::vector<int>& out) const {
    out = idx;
    int j = idx[axis] + dir;
    if (periodic[axis]) {
      j = (j % grid_counts[axis] + grid_counts[axis]) % grid_counts[axis];
    } else if (j < 0 || j >= grid_counts[axis]) {
      return false;
    }
    out[axis] = j;
    return true;
  }

  // Uniform random point of the box (periodic axes over the full range,
  // non-periodic strictly inside).
  template <typename Rng>
  Vec random_point(Rng& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vec x(dim);
    for (int i = 0; i < dim; ++i) {
      const double t = periodic[i] ? unit(rng) : 0.05 + 0.9 * unit(rng);
      x(i) = lower(i) + t * range(i);
    }
    return x;
  }

  static ChartedManifold box(const Vec& lo, const Vec& hi,
                             const std::vector<bool>& per,
                             const std::vector<int>& counts) {
    ChartedManifold m;
    m.dim = static_cast<int>(lo.size());
    m.lower = lo;
    m.upper = hi;
    m.periodic = per;
    m.grid_counts = counts;
    m.validate();
    return m;
  }
};

using ScalarField = std::function<double(const Vec&)>;
using VectorField = std::function<Vec(const Vec&)>;
using MatrixField = std::function<Mat(const Vec&)>;
using PointMap = std::function<Vec(const Vec&)>;

// The (omega, eta) pair as coefficient fields over a chart.
struct FormPair {
  MatrixField omega_at;  // antisymmetric dim x dim at each point
  VectorField eta_at;    // dim at each point
  bool declared_closed = true;
};

}  // namespace cosym
