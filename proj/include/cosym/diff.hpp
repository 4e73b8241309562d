#pragma once

#include <cmath>
#include <vector>

#include "cosym/chart.hpp"
#include "cosym/error.hpp"

namespace cosym {

// Central difference step per axis: a fixed fraction of the coordinate range.
inline constexpr double kStepFraction = 1e-5;

inline double default_step(const ChartedManifold& M, int axis) {
  return kStepFraction * M.range(axis);
}

// Guard used by grid sweeps: steps must stay well below the grid spacing so a
// stencil never reaches past a neighboring cell.
inline void check_step(const ChartedManifold& M, double h) {
  if (h >= 0.5 * M.min_spacing())
    fail(ErrorCode::StepTooLarge, "difference step exceeds half the grid spacing");
}

template <typename FieldT>
auto partial(const ChartedManifold& M, const FieldT& f, const Vec& x, int axis,
             double h) -> decltype(f(x)) {
  Vec xp = x, xm = x;
  xp(axis) += h;
  xm(axis) -= h;
  return (f(M.wrap(xp)) - f(M.wrap(xm))) / (2.0 * h);
}

template <typename FieldT>
auto partial(const ChartedManifold& M, const FieldT& f, const Vec& x, int axis)
    -> decltype(f(x)) {
  return partial(M, f, x, axis, default_step(M, axis));
}

inline Vec gradient(const ChartedManifold& M, const ScalarField& f, const Vec& x) {
  Vec g(M.dim);
  for (int i = 0; i < M.dim; ++i) g(i) = partial(M, f, x, i);
  return g;
}

// Jacobian of a map into R^out_dim; rows index outputs, columns inputs.
inline Mat jacobian(const ChartedManifold& M, const PointMap& F, const Vec& x) {
  const Vec f0 = F(M.wrap(x));
  Mat J(f0.size(), M.dim);
  for (int i = 0; i < M.dim; ++i) J.col(i) = partial(M, F, x, i);
  return J;
}

// Jacobian without wrapping the stencil points.  For equivariant maps (angle
// shifts, block projections) whose formulas extend smoothly past the seam;
// wrapping the inputs of such a map would put a period-sized jump into the
// stencil at seam points.
inline Mat jacobian_raw(const ChartedManifold& M, const PointMap& F, const Vec& x) {
  const Vec f0 = F(x);
  Mat J(f0.size(), M.dim);
  for (int i = 0; i < M.dim; ++i) {
    const double h = default_step(M, i);
    Vec xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    J.col(i) = (F(xp) - F(xm)) / (2.0 * h);
  }
  return J;
}

// Second derivative matrix by the standard 4-point cross stencil.  The step is
// coarser than the gradient step: second differences divide by h^2, so the
// rounding floor is reached much sooner.
inline Mat hessian(const ChartedManifold& M, const ScalarField& f, const Vec& x,
                   double step_fraction = 1e-3) {
  const int d = M.dim;
  Mat H(d, d);
  std::vector<double> h(d);
  for (int i = 0; i < d; ++i) h[i] = step_fraction * M.range(i);
  const double f0 = f(M.wrap(x));
  for (int i = 0; i < d; ++i) {
    Vec xp = x, xm = x;
    xp(i) += h[i];
    xm(i) -= h[i];
    H(i, i) = (f(M.wrap(xp)) - 2.0 * f0 + f(M.wrap(xm))) / (h[i] * h[i]);
    for (int j = i + 1; j < d; ++j) {
      Vec xpp = x, xpm = x, xmp = x, xmm = x;
      xpp(i) += h[i]; xpp(j) += h[j];
      xpm(i) += h[i]; xpm(j) -= h[j];
      xmp(i) -= h[i]; xmp(j) += h[j];
      xmm(i) -= h[i]; xmm(j) -= h[j];
      H(i, j) = (f(M.wrap(xpp)) - f(M.wrap(xpm)) - f(M.wrap(xmp)) + f(M.wrap(xmm))) /
                (4.0 * h[i] * h[j]);
      H(j, i) = H(i, j);
    }
  }
  return H;
}

// Exterior derivative residual of a 1-form field alpha: the largest
// |d_i alpha_j - d_j alpha_i| over index pairs at x.
inline double one_form_d_residual(const ChartedManifold& M, const VectorField& alpha,
                                  const Vec& x) {
  const int d = M.dim;
  std::vector<Vec> pa(d);
  for (int i = 0; i < d; ++i) pa[i] = partial(M, alpha, x, i);
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      worst = std::max(worst, std::abs(pa[i](j) - pa[j](i)));
  return worst;
}

// Exterior derivative residual of a 2-form field: the largest cyclic sum
// |d_i w_jk + d_j w_ki + d_k w_ij| over index triples at x.
inline double two_form_d_residual(const ChartedManifold& M, const MatrixField& w,
                                  const Vec& x) {
  const int d = M.dim;
  std::vector<Mat> pw(d);
  for (int i = 0; i < d; ++i) pw[i] = partial(M, w, x, i);
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        const double c = pw[i](j, k) + pw[j](k, i) + pw[k](i, j);
        worst = std::max(worst, std::abs(c));
      }
  return worst;
}

// Classical fourth order Runge-Kutta step for a flow along a vector field.
inline Vec rk4_step(const ChartedManifold& M, const VectorField& v, const Vec& x,
                    double dt) {
  const Vec k1 = v(M.wrap(x));
  const Vec k2 = v(M.wrap(x + 0.5 * dt * k1));
  const Vec k3 = v(M.wrap(x + 0.5 * dt * k2));
  const Vec k4 = v(M.wrap(x + dt * k3));
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace cosym
