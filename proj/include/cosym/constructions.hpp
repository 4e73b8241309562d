#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cosym/diff.hpp"
#include "cosym/error.hpp"
#include "cosym/geometry.hpp"
#include "cosym/scenario.hpp"

namespace cosym {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ===========================================================================
// Mapping torus of a symplectic chart
// ===========================================================================

struct MappingTorusSpec {
  std::string name;
  ChartedManifold base;       // even-dimensional symplectic chart
  MatrixField omega_base;     // antisymmetric base.dim x base.dim field
  PointMap phi;               // gluing symplectomorphism of the base
  int theta_count = 6;
  bool check = true;          // verify the gluing map at build time
};

namespace detail {

inline double pullback_residual(const ChartedManifold& base, const MatrixField& w,
                                const PointMap& phi, const Vec& x) {
  const Mat J = jacobian_raw(base, phi, x);
  const Mat lhs = J.transpose() * w(phi(x)) * J;
  return (lhs - w(x)).cwiseAbs().maxCoeff();
}

}  // namespace detail

// Suspension of (base, omega_base) by phi: the product chart with a periodic
// unit last coordinate, omega constant along it, eta the last coordinate form.
// The gluing map must preserve omega; the seam (x, 1-) ~ (phi(x), 0+) is
// checked by pulling the form back across the identification.
inline Scenario mapping_torus(const MappingTorusSpec& spec) {
  spec.base.validate();
  if (spec.base.dim % 2 != 0)
    fail(ErrorCode::OddBaseDim, "mapping torus base must be even-dimensional");
  const int bd = spec.base.dim;
  const int d = bd + 1;

  if (spec.check) {
    const double tol = 1e-8;
    const std::int64_t n = spec.base.grid_size();
    const std::int64_t stride = std::max<std::int64_t>(1, n / 64);
    for (std::int64_t f = 0; f < n; f += stride) {
      const Vec x = spec.base.grid_point(f);
      const double r = detail::pullback_residual(spec.base, spec.omega_base, spec.phi, x);
      if (r > tol) {
        std::ostringstream os;
        os << "pullback residual " << r << " at base grid point " << f;
        fail(ErrorCode::NotSymplectomorphism, os.str());
      }
    }
  }

  Scenario S;
  S.name = spec.name;
  Vec lo(d), hi(d);
  std::vector<bool> per(d);
  std::vector<int> counts(d);
  for (int i = 0; i < bd; ++i) {
    lo(i) = spec.base.lower(i);
    hi(i) = spec.base.upper(i);
    per[i] = spec.base.periodic[i];
    counts[i] = spec.base.grid_counts[i];
  }
  lo(bd) = 0.0;
  hi(bd) = 1.0;
  per[bd] = true;
  counts[bd] = spec.theta_count;
  S.chart = ChartedManifold::box(lo, hi, per, counts);

  const MatrixField wb = spec.omega_base;
  S.forms.omega_at = [wb, bd, d](const Vec& x) {
    Mat W = Mat::Zero(d, d);
    W.topLeftCorner(bd, bd) = wb(x.head(bd));
    return W;
  };
  S.forms.eta_at = [d](const Vec&) {
    Vec e = Vec::Zero(d);
    e(d - 1) = 1.0;
    return e;
  };
  S.foliation = FoliationSpec{0, {}, "kernel"};
  return S;
}

// Consistency of the seam identification (x, 1-) ~ (phi(x), 0+): compare the
// suspension form just below the seam with its pullback from just above.
inline double seam_residual(const Scenario& S, const ChartedManifold& base,
                            const PointMap& phi, const Vec& x_base) {
  const int bd = base.dim;
  const double eps = 0.5 * S.chart.spacing(bd);
  Vec below(bd + 1), above(bd + 1);
  below << x_base, 1.0 - eps;
  const Vec px = phi(x_base);
  above << px, eps;
  const Mat J = jacobian_raw(base, phi, x_base);
  Mat Jext = Mat::Zero(bd + 1, bd + 1);
  Jext.topLeftCorner(bd, bd) = J;
  Jext(bd, bd) = 1.0;
  const Mat lhs = Jext.transpose() * S.forms.omega_at(S.chart.wrap(above)) * Jext;
  return (lhs - S.forms.omega_at(below)).cwiseAbs().maxCoeff();
}

// ===========================================================================
// Product models: k angle factors, n-k planar factors, one transverse circle
// ===========================================================================

namespace detail {

// Planar factor convention: omega = -2 dx^dy per factor and the rotation
// z |-> e^{i a} z make the moment component exactly |z|^2 - 1, since
// i_xi(-2 dx^dy) = 2(x dx + y dy) = d(x^2 + y^2 - 1) for xi = -y d_x + x d_y.
inline constexpr double kPlanarOmega = -2.0;

inline void rotate2(double a, double& x, double& y) {
  const double c = std::cos(a), s = std::sin(a);
  const double nx = c * x - s * y;
  const double ny = s * x + c * y;
  x = nx;
  y = ny;
}

}  // namespace detail

// Chart layout: (alpha_1..alpha_k, x_{k+1}, y_{k+1}, ..., x_n, y_n, theta).
// Forms: omega = -2 sum dx_j ^ dy_j, eta = d theta.  The full torus acts by
// rotating each factor; the first k generators span the degenerate directions
// and the moment map pairs with the remaining n-k generators.
inline Scenario cn_example(int n, int k) {
  if (n < 1 || n > 3) fail(ErrorCode::OutOfRange, "n must lie in 1..3");
  if (k < 0 || k >= n) fail(ErrorCode::OutOfRange, "k must lie in 0..n-1");
  const int m = n - k;           // planar factors
  const int d = k + 2 * m + 1;   // chart dimension

  const int angle_count = 6;
  const int disk_count = (m <= 2) ? 7 : 5;  // odd, so x = y = 0 is a grid point
  const int theta_count = 6;

  Vec lo(d), hi(d);
  std::vector<bool> per(d);
  std::vector<int> counts(d);
  for (int j = 0; j < k; ++j) {
    lo(j) = 0.0; hi(j) = kTwoPi; per[j] = true; counts[j] = angle_count;
  }
  for (int j = 0; j < 2 * m; ++j) {
    lo(k + j) = -2.0; hi(k + j) = 2.0; per[k + j] = false; counts[k + j] = disk_count;
  }
  lo(d - 1) = 0.0; hi(d - 1) = kTwoPi; per[d - 1] = true; counts[d - 1] = theta_count;

  Scenario S;
  {
    std::ostringstream os;
    os << "cn(" << n << "," << k << ")";
    S.name = os.str();
  }
  S.chart = ChartedManifold::box(lo, hi, per, counts);
  S.cn_shape = CnShape{n, k};

  Mat W = Mat::Zero(d, d);
  for (int j = 0; j < m; ++j) {
    W(k + 2 * j, k + 2 * j + 1) = detail::kPlanarOmega;
    W(k + 2 * j + 1, k + 2 * j) = -detail::kPlanarOmega;
  }
  S.forms.omega_at = [W](const Vec&) { return W; };
  Vec e = Vec::Zero(d);
  e(d - 1) = 1.0;
  S.forms.eta_at = [e](const Vec&) { return e; };

  TorusActionSpec act;
  act.rank = n;
  act.act = [n, k, m](const Vec& theta, const Vec& x) {
    Vec y = x;
    for (int j = 0; j < k; ++j) y(j) = x(j) + theta(j);
    for (int j = 0; j < m; ++j)
      detail::rotate2(theta(k + j), y(k + 2 * j), y(k + 2 * j + 1));
    return y;
  };
  for (int j = 0; j < n; ++j) {
    if (j < k) {
      Vec f = Vec::Zero(d);
      f(j) = 1.0;
      act.fundamental_fields.push_back([f](const Vec&) { return f; });
    } else {
      const int ix = k + 2 * (j - k), iy = ix + 1;
      act.fundamental_fields.push_back([ix, iy, d](const Vec& x) {
        Vec f = Vec::Zero(d);
        f(ix) = -x(iy);
        f(iy) = x(ix);
        return f;
      });
    }
  }
  act.moment_map = [k, m](const Vec& x) {
    Vec mu(m);
    for (int j = 0; j < m; ++j) {
      const double xx = x(k + 2 * j), yy = x(k + 2 * j + 1);
      mu(j) = xx * xx + yy * yy - 1.0;
    }
    return mu;
  };
  act.subtorus = Eigen::MatrixXi::Zero(k, n);
  for (int j = 0; j < k; ++j) act.subtorus(j, j) = 1;
  S.action = std::move(act);

  FoliationSpec fol;
  fol.rank = k;
  for (int j = 0; j < k; ++j) {
    Vec f = Vec::Zero(d);
    f(j) = 1.0;
    fol.spanning_fields.push_back([f](const Vec&) { return f; });
  }
  fol.variant = "kernel";
  S.foliation = std::move(fol);

  S.holonomy_return = ReturnMapSpec{
      [](const Eigen::Vector2d& p) { return p; }, "identity"};

  if (k == 0) {
    // Zero level set {|z_j| = 1}; section fixing z_j = (1, 0) with the
    // transverse circle as the quotient coordinate.
    SliceSpec slice;
    Vec slo(1), shi(1);
    slo << 0.0;
    shi << kTwoPi;
    slice.chart = ChartedManifold::box(slo, shi, {true}, {12});
    slice.param = [m, d](const Vec& u) {
      Vec x = Vec::Zero(d);
      for (int j = 0; j < m; ++j) x(2 * j) = 1.0;
      x(d - 1) = u(0);
      return x;
    };
    S.slice = std::move(slice);
  }

  for (int j = 0; j < m; ++j) {
    S.default_clip.push_back(-1.5);
    S.default_clip.push_back(3.5);
  }

  S.notes = "planar factors truncated to the box [-2,2]^2 per factor";
  return S;
}

// ===========================================================================
// Sphere scenarios
// ===========================================================================

// Azimuthal chart of the unit sphere away from the poles, crossed with a
// transverse circle: coordinates (phi, z, theta), omega = dphi ^ dz (the area
// form in cylindrical coordinates), eta = dtheta.  Rotation about the axis is
// generated by d_phi with height moment mu = z.
inline Scenario sphere_mapping_torus() {
  Scenario S;
  S.name = "sphere_s1";
  Vec lo(3), hi(3);
  lo << 0.0, -0.9, 0.0;
  hi << kTwoPi, 0.9, kTwoPi;
  S.chart = ChartedManifold::box(lo, hi, {true, false, true}, {6, 7, 6});

  Mat W = Mat::Zero(3, 3);
  W(0, 1) = 1.0;
  W(1, 0) = -1.0;
  S.forms.omega_at = [W](const Vec&) { return W; };
  Vec e = Vec::Zero(3);
  e(2) = 1.0;
  S.forms.eta_at = [e](const Vec&) { return e; };

  TorusActionSpec act;
  act.rank = 1;
  act.act = [](const Vec& theta, const Vec& x) {
    Vec y = x;
    y(0) += theta(0);
    return y;
  };
  act.fundamental_fields.push_back([](const Vec&) {
    Vec f = Vec::Zero(3);
    f(0) = 1.0;
    return f;
  });
  act.moment_map = [](const Vec& x) {
    Vec mu(1);
    mu(0) = x(1);
    return mu;
  };
  act.subtorus = Eigen::MatrixXi::Zero(0, 1);
  S.action = std::move(act);
  S.foliation = FoliationSpec{0, {}, "kernel"};
  S.default_clip = {-1.1, 1.1};
  S.notes = "azimuthal chart; poles excluded by the height truncation";
  return S;
}

// Tangent-plane chart around one pole (north: s=+1, south: s=-1), crossed with
// the transverse circle: coordinates (u, v, theta), height z = s sqrt(1-u^2-v^2),
// omega = (1/z) du ^ dv (the area form in this chart), mu = z.  The axis
// rotation fixes the pole, so the critical circle {u=v=0} x S^1 lies on the grid.
inline Scenario sphere_polar_chart(bool north) {
  Scenario S;
  S.name = north ? "sphere_polar_north" : "sphere_polar_south";
  const double s = north ? 1.0 : -1.0;
  Vec lo(3), hi(3);
  lo << -0.7, -0.7, 0.0;
  hi << 0.7, 0.7, kTwoPi;
  S.chart = ChartedManifold::box(lo, hi, {false, false, true}, {7, 7, 6});

  auto height = [s](const Vec& x) {
    return s * std::sqrt(1.0 - x(0) * x(0) - x(1) * x(1));
  };
  S.forms.omega_at = [height](const Vec& x) {
    Mat W = Mat::Zero(3, 3);
    const double c = 1.0 / height(x);
    W(0, 1) = c;
    W(1, 0) = -c;
    return W;
  };
  Vec e = Vec::Zero(3);
  e(2) = 1.0;
  S.forms.eta_at = [e](const Vec&) { return e; };

  TorusActionSpec act;
  act.rank = 1;
  act.act = [](const Vec& theta, const Vec& x) {
    Vec y = x;
    detail::rotate2(theta(0), y(0), y(1));
    return y;
  };
  act.fundamental_fields.push_back([](const Vec& x) {
    Vec f = Vec::Zero(3);
    f(0) = -x(1);
    f(1) = x(0);
    return f;
  });
  act.moment_map = [height](const Vec& x) {
    Vec mu(1);
    mu(0) = height(x);
    return mu;
  };
  act.subtorus = Eigen::MatrixXi::Zero(0, 1);
  S.action = std::move(act);
  S.foliation = FoliationSpec{0, {}, "kernel"};
  S.default_clip = {-1.1, 1.1};
  S.notes = "pole chart; the critical circle of the height moment sits at u=v=0";
  return S;
}

// ===========================================================================
// Flat standard scenarios
// ===========================================================================

inline Scenario r3_standard() {
  Scenario S;
  S.name = "r3_standard";
  Vec lo = Vec::Constant(3, -1.0), hi = Vec::Constant(3, 1.0);
  S.chart = ChartedManifold::box(lo, hi, {false, false, false}, {5, 5, 5});
  Mat W = Mat::Zero(3, 3);
  W(0, 1) = 1.0;
  W(1, 0) = -1.0;
  S.forms.omega_at = [W](const Vec&) { return W; };
  Vec e = Vec::Zero(3);
  e(2) = 1.0;
  S.forms.eta_at = [e](const Vec&) { return e; };
  S.foliation = FoliationSpec{0, {}, "kernel"};
  return S;
}

inline Scenario r4_standard() {
  Scenario S;
  S.name = "r4_standard";
  Vec lo = Vec::Constant(4, -1.0), hi = Vec::Constant(4, 1.0);
  S.chart = ChartedManifold::box(lo, hi, {false, false, false, false}, {5, 5, 5, 5});
  Mat W = Mat::Zero(4, 4);
  W(0, 1) = 1.0;
  W(1, 0) = -1.0;
  S.forms.omega_at = [W](const Vec&) { return W; };
  Vec e = Vec::Zero(4);
  e(2) = 1.0;
  S.forms.eta_at = [e](const Vec&) { return e; };
  FoliationSpec fol;
  fol.rank = 1;
  fol.spanning_fields.push_back([](const Vec&) {
    Vec f = Vec::Zero(4);
    f(3) = 1.0;
    return f;
  });
  S.foliation = std::move(fol);
  return S;
}

// ===========================================================================
// Level sets
// ===========================================================================

struct LevelSetParam {
  std::string name;
  ChartedManifold chart;                  // chart of the level-set model
  PointMap param;                         // embedding into the ambient chart
  std::optional<TorusActionSpec> action;  // explicit action on the model, if known
};

// Restriction of an ambient scenario to the zero set of the subtorus-paired
// moment components, via an explicit parametrization.  Forms pull back through
// the parametrization Jacobian; the moment map restricts to the components
// paired with the complementary generators.
inline Scenario level_set_structure(const Scenario& ambient,
                                    const Eigen::MatrixXi& subtorus,
                                    const LevelSetParam& P) {
  if (!ambient.action) fail(ErrorCode::NoAction, "ambient scenario has no torus action");
  if (!ambient.action->has_moment())
    fail(ErrorCode::NoMomentMap, "ambient scenario has no moment map");
  const TorusActionSpec& A = *ambient.action;
  const int n = A.rank;
  const int k = static_cast<int>(subtorus.rows());
  if (subtorus.cols() != n)
    fail(ErrorCode::ShapeMismatch, "subtorus must have one column per generator");
  if (A.subtorus_rank() != 0)
    fail(ErrorCode::ShapeMismatch, "ambient action must carry the full moment map");

  // Desk-scale restriction: rows must be distinct standard basis vectors, so
  // the paired and complementary moment components are plain index sets.
  std::vector<int> level_idx;
  std::vector<bool> taken(n, false);
  for (int r = 0; r < k; ++r) {
    int hit = -1;
    for (int c = 0; c < n; ++c) {
      if (subtorus(r, c) == 1 && hit < 0) hit = c;
      else if (subtorus(r, c) != 0) hit = -2;
    }
    if (hit < 0 || taken[hit])
      fail(ErrorCode::OutOfRange, "subtorus rows must be distinct standard basis vectors");
    taken[hit] = true;
    level_idx.push_back(hit);
  }
  std::vector<int> comp_idx;
  for (int c = 0; c < n; ++c)
    if (!taken[c]) comp_idx.push_back(c);

  P.chart.validate();
  const PointMap param = P.param;
  const PointMap ambient_mu = A.moment_map;
  const ChartedManifold model = P.chart;
  const int d_new = model.dim;

  // Build-time verification on the model grid: the embedding stays in the
  // level set and is an immersion.
  {
    const std::int64_t gn = model.grid_size();
    const std::int64_t stride = std::max<std::int64_t>(1, gn / 256);
    for (std::int64_t f = 0; f < gn; f += stride) {
      const Vec u = model.grid_point(f);
      const Vec mu = ambient_mu(param(u));
      for (int r = 0; r < k; ++r) {
        if (std::abs(mu(level_idx[r])) > 1e-8) {
          std::ostringstream os;
          os << "level residual " << std::abs(mu(level_idx[r]))
             << " at model grid point " << f;
          fail(ErrorCode::NotInLevelSet, os.str());
        }
      }
      const Mat J = jacobian_raw(model, param, u);
      if (numerical_rank(J) < d_new)
        fail(ErrorCode::ParamNotImmersion, "parametrization drops rank on the model grid");
    }
  }

  Scenario S;
  S.name = P.name;
  S.chart = model;
  const MatrixField amb_w = ambient.forms.omega_at;
  const VectorField amb_e = ambient.forms.eta_at;
  S.forms.omega_at = [amb_w, param, model](const Vec& u) {
    const Mat J = jacobian_raw(model, param, u);
    Mat W = J.transpose() * amb_w(param(u)) * J;
    W = 0.5 * (W - W.transpose().eval());  // strip finite-difference asymmetry
    return W;
  };
  S.forms.eta_at = [amb_e, param, model](const Vec& u) {
    const Mat J = jacobian_raw(model, param, u);
    return Vec(J.transpose() * amb_e(param(u)));
  };

  if (P.action) {
    S.action = P.action;
  } else {
    TorusActionSpec act;
    act.rank = n;
    for (int j = 0; j < n; ++j) {
      const VectorField amb_field = A.fundamental_fields[j];
      act.fundamental_fields.push_back([amb_field, param, model](const Vec& u) {
        const Mat J = jacobian_raw(model, param, u);
        return Vec(J.completeOrthogonalDecomposition().solve(amb_field(param(u))));
      });
    }
    act.subtorus = subtorus;
    S.action = std::move(act);
  }
  S.action->subtorus = subtorus;
  S.action->moment_map = [ambient_mu, param, comp_idx](const Vec& u) {
    const Vec mu = ambient_mu(param(u));
    Vec out(comp_idx.size());
    for (size_t j = 0; j < comp_idx.size(); ++j) out(j) = mu(comp_idx[j]);
    return out;
  };
  return S;
}

// ===========================================================================
// Registry
// ===========================================================================

namespace detail {

inline Scenario c2_mapping_torus_id() {
  MappingTorusSpec spec;
  spec.name = "mapping_torus_id";
  Vec lo = Vec::Constant(4, -2.0), hi = Vec::Constant(4, 2.0);
  spec.base = ChartedManifold::box(lo, hi, {false, false, false, false}, {5, 5, 5, 5});
  Mat W = Mat::Zero(4, 4);
  W(0, 1) = kPlanarOmega;
  W(1, 0) = -kPlanarOmega;
  W(2, 3) = kPlanarOmega;
  W(3, 2) = -kPlanarOmega;
  spec.omega_base = [W](const Vec&) { return W; };
  spec.phi = [](const Vec& x) { return x; };
  Scenario S = mapping_torus(spec);

  TorusActionSpec act;
  act.rank = 2;
  act.act = [](const Vec& theta, const Vec& x) {
    Vec y = x;
    rotate2(theta(0), y(0), y(1));
    rotate2(theta(1), y(2), y(3));
    return y;
  };
  act.fundamental_fields.push_back([](const Vec& x) {
    Vec f = Vec::Zero(5);
    f(0) = -x(1);
    f(1) = x(0);
    return f;
  });
  act.fundamental_fields.push_back([](const Vec& x) {
    Vec f = Vec::Zero(5);
    f(2) = -x(3);
    f(3) = x(2);
    return f;
  });
  act.moment_map = [](const Vec& x) {
    Vec mu(2);
    mu(0) = x(0) * x(0) + x(1) * x(1) - 1.0;
    mu(1) = x(2) * x(2) + x(3) * x(3) - 1.0;
    return mu;
  };
  act.subtorus = Eigen::MatrixXi::Zero(0, 2);
  S.action = std::move(act);
  S.holonomy_return = ReturnMapSpec{
      [](const Eigen::Vector2d& p) { return p; }, "identity"};
  S.default_clip = {-1.5, 3.5, -1.5, 3.5};
  return S;
}

inline Scenario planar_rotation_torus(double angle, const std::string& name,
                                      const std::string& desc) {
  MappingTorusSpec spec;
  spec.name = name;
  Vec lo = Vec::Constant(2, -2.0), hi = Vec::Constant(2, 2.0);
  spec.base = ChartedManifold::box(lo, hi, {false, false}, {7, 7});
  Mat W = Mat::Zero(2, 2);
  W(0, 1) = 1.0;
  W(1, 0) = -1.0;
  spec.omega_base = [W](const Vec&) { return W; };
  spec.phi = [angle](const Vec& x) {
    Vec y = x;
    rotate2(angle, y(0), y(1));
    return y;
  };
  Scenario S = mapping_torus(spec);
  S.holonomy_return = ReturnMapSpec{
      [angle](const Eigen::Vector2d& p) {
        Eigen::Vector2d q = p;
        double x = q(0), y = q(1);
        rotate2(angle, x, y);
        q << x, y;
        return q;
      },
      desc};
  return S;
}

// Level-set model of the unit-circle constraint in the first planar factor of
// the trivial suspension of two factors: chart (alpha, x2, y2, theta).
inline Scenario y0_level_set(bool halfturn) {
  const Scenario ambient = c2_mapping_torus_id();
  Eigen::MatrixXi sub(1, 2);
  sub << 1, 0;

  LevelSetParam P;
  P.name = halfturn ? "y0_halfturn" : "y0_id";
  Vec lo(4), hi(4);
  lo << 0.0, -2.0, -2.0, 0.0;
  hi << kTwoPi, 2.0, 2.0, 1.0;
  P.chart = ChartedManifold::box(lo, hi, {true, false, false, true}, {6, 7, 7, 6});
  P.param = [](const Vec& u) {
    Vec x(5);
    x << std::cos(u(0)), std::sin(u(0)), u(1), u(2), u(3);
    return x;
  };

  TorusActionSpec act;
  act.rank = 2;
  act.act = [](const Vec& theta, const Vec& u) {
    Vec v = u;
    v(0) += theta(0);
    rotate2(theta(1), v(1), v(2));
    return v;
  };
  act.fundamental_fields.push_back([](const Vec&) {
    Vec f = Vec::Zero(4);
    f(0) = 1.0;
    return f;
  });
  act.fundamental_fields.push_back([](const Vec& u) {
    Vec f = Vec::Zero(4);
    f(1) = -u(2);
    f(2) = u(1);
    return f;
  });
  act.subtorus = sub;
  P.action = std::move(act);

  Scenario S = level_set_structure(ambient, sub, P);

  FoliationSpec fol;
  fol.rank = 1;
  fol.spanning_fields.push_back([](const Vec&) {
    Vec f = Vec::Zero(4);
    f(0) = 1.0;
    return f;
  });
  S.foliation = std::move(fol);
  if (halfturn) {
    S.holonomy_return = ReturnMapSpec{
        [](const Eigen::Vector2d& p) { return Eigen::Vector2d(-p); },
        "half turn"};
    S.notes =
        "suspension twist (z,1)~(-z,0) realized on a plain periodic chart; the "
        "forms are invariant under the half turn, so only the transversal "
        "return map sees the twist";
  } else {
    S.holonomy_return = ReturnMapSpec{
        [](const Eigen::Vector2d& p) { return p; }, "identity"};
  }
  S.default_clip = {-1.5, 3.5};
  return S;
}

}  // namespace detail

inline constexpr double kGoldenAngle = kTwoPi * 0.6180339887498949;  // 2*pi*(sqrt(5)-1)/2

// Accepted names:
//   r3_standard | r4_standard | mapping_torus_id | mapping_torus_rot(p/q) |
//   mapping_torus_rot(golden) | cn(n,k) | sphere_s1 | sphere_polar_north |
//   sphere_polar_south | y0_id | y0_halfturn
inline Scenario make_scenario(const std::string& name) {
  if (name == "r3_standard") return r3_standard();
  if (name == "r4_standard") return r4_standard();
  if (name == "mapping_torus_id") return detail::c2_mapping_torus_id();
  if (name == "sphere_s1") return sphere_mapping_torus();
  if (name == "sphere_polar_north") return sphere_polar_chart(true);
  if (name == "sphere_polar_south") return sphere_polar_chart(false);
  if (name == "y0_id") return detail::y0_level_set(false);
  if (name == "y0_halfturn") return detail::y0_level_set(true);

  int n = 0, k = 0;
  if (std::sscanf(name.c_str(), "cn(%d,%d)", &n, &k) == 2) {
    std::ostringstream canon;
    canon << "cn(" << n << "," << k << ")";
    if (canon.str() == name) return cn_example(n, k);
  }
  if (name == "mapping_torus_rot(golden)")
    return detail::planar_rotation_torus(kGoldenAngle, name, "golden rotation");
  int p = 0, q = 0;
  if (std::sscanf(name.c_str(), "mapping_torus_rot(%d/%d)", &p, &q) == 2) {
    std::ostringstream canon;
    canon << "mapping_torus_rot(" << p << "/" << q << ")";
    if (canon.str() == name) {
      if (q <= 0) fail(ErrorCode::UnknownScenario, "rotation denominator must be positive");
      std::ostringstream desc;
      desc << "rotation by 2*pi*" << p << "/" << q;
      return detail::planar_rotation_torus(kTwoPi * p / q, name, desc.str());
    }
  }
  fail(ErrorCode::UnknownScenario, name);
}

inline std::vector<std::string> scenario_names() {
  return {
      "r3_standard",
      "r4_standard",
      "mapping_torus_id",
      "mapping_torus_rot(p/q)   (integers p, q > 0; also p/q = golden)",
      "cn(n,k)                  (1 <= n <= 3, 0 <= k < n)",
      "sphere_s1",
      "sphere_polar_north",
      "sphere_polar_south",
      "y0_id",
      "y0_halfturn",
  };
}

}  // namespace cosym
