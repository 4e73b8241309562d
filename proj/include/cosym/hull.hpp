#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "cosym/error.hpp"
#include "cosym/subspace.hpp"

namespace cosym {

// Closed halfspace {x : normal . x <= offset} with |normal| = 1.  Equality
// constraints of lower-dimensional hulls appear as opposing pairs.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
  bool box_artifact = false;
};

struct HullResult {
  int ambient_dim = 0;
  int affine_rank = 0;
  std::vector<Vec> vertices;
  std::vector<Halfspace> halfspaces;

  // Largest halfspace violation of x (0 inside; bounds the distance to the hull).
  double violation(const Vec& x) const {
    double worst = 0.0;
    for (const auto& h : halfspaces)
      worst = std::max(worst, h.normal.dot(x) - h.offset);
    return std::max(0.0, worst);
  }
};

namespace hull_detail {

inline double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                     const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

// Andrew monotone chain; collinear points are dropped, so only extreme points
// survive.  Returns CCW-ordered vertices.
inline std::vector<Eigen::Vector2d> chain2d(std::vector<Eigen::Vector2d> pts,
                                            double eps_area) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) {
                          return a.x() == b.x() && a.y() == b.y();
                        }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n <= 2) return pts;
  std::vector<Eigen::Vector2d> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= eps_area) --k;
    h[k++] = pts[i];
  }
  const int lower = k + 1;
  for (int i = n - 2; i >= 0; --i) {
    while (k >= lower && cross2(h[k - 2], h[k - 1], pts[i]) <= eps_area) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

struct Tri {
  int a, b, c;
  Eigen::Vector3d normal;  // outward unit normal
  double offset;
};

inline Tri make_tri(const std::vector<Eigen::Vector3d>& P, int a, int b, int c,
                    const Eigen::Vector3d& interior) {
  Tri t{a, b, c, {}, 0.0};
  Eigen::Vector3d n = (P[b] - P[a]).cross(P[c] - P[a]);
  const double len = n.norm();
  if (len > 0.0) n /= len;
  if (n.dot(interior - P[a]) > 0.0) {
    std::swap(t.b, t.c);
    n = -n;
  }
  t.normal = n;
  t.offset = n.dot(P[t.a]);
  return t;
}

// Incremental convex hull of a full-dimensional 3D point set.  Points within
// eps_dist of a supporting plane count as on it and are not inserted, which
// keeps grids with many coplanar samples stable.
inline std::vector<Tri> hull3d(const std::vector<Eigen::Vector3d>& P, double eps_dist) {
  const int n = static_cast<int>(P.size());
  // Initial tetrahedron: spread-out seed points.
  int i0 = 0;
  for (int i = 1; i < n; ++i) {
    if (std::make_tuple(P[i].x(), P[i].y(), P[i].z()) <
        std::make_tuple(P[i0].x(), P[i0].y(), P[i0].z()))
      i0 = i;
  }
  int i1 = -1;
  double best = -1.0;
  for (int i = 0; i < n; ++i) {
    const double d = (P[i] - P[i0]).norm();
    if (d > best) { best = d; i1 = i; }
  }
  int i2 = -1;
  best = -1.0;
  const Eigen::Vector3d e01 = (P[i1] - P[i0]).normalized();
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector3d r = (P[i] - P[i0]) - (P[i] - P[i0]).dot(e01) * e01;
    if (r.norm() > best) { best = r.norm(); i2 = i; }
  }
  int i3 = -1;
  best = -1.0;
  const Eigen::Vector3d nrm = (P[i1] - P[i0]).cross(P[i2] - P[i0]).normalized();
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(nrm.dot(P[i] - P[i0]));
    if (d > best) { best = d; i3 = i; }
  }
  const Eigen::Vector3d interior = 0.25 * (P[i0] + P[i1] + P[i2] + P[i3]);

  std::vector<Tri> faces;
  faces.push_back(make_tri(P, i0, i1, i2, interior));
  faces.push_back(make_tri(P, i0, i1, i3, interior));
  faces.push_back(make_tri(P, i0, i2, i3, interior));
  faces.push_back(make_tri(P, i1, i2, i3, interior));

  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::vector<int> visible;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f)
      if (faces[f].normal.dot(P[p]) - faces[f].offset > eps_dist) visible.push_back(f);
    if (visible.empty()) continue;

    // Horizon: directed edges of visible faces whose reversal is not visible.
    std::map<std::pair<int, int>, int> edge_count;
    for (int f : visible) {
      const Tri& t = faces[f];
      const std::array<std::pair<int, int>, 3> es{{{t.a, t.b}, {t.b, t.c}, {t.c, t.a}}};
      for (auto e : es) ++edge_count[e];
    }
    std::vector<std::pair<int, int>> horizon;
    for (const auto& [e, cnt] : edge_count) {
      (void)cnt;
      if (edge_count.find({e.second, e.first}) == edge_count.end()) horizon.push_back(e);
    }
    std::sort(visible.rbegin(), visible.rend());
    for (int f : visible) faces.erase(faces.begin() + f);
    for (auto [u, v] : horizon) faces.push_back(make_tri(P, u, v, p, interior));
  }
  return faces;
}

}  // namespace hull_detail

// Convex hull of a finite point set in ambient dimension 1..3, aware of lower
// affine rank: the hull is computed inside the affine span and equality
// constraints for the span appear as opposing halfspace pairs.
inline HullResult convex_hull(const std::vector<Vec>& points) {
  if (points.empty()) fail(ErrorCode::EmptyImage, "no points to hull");
  const int m = static_cast<int>(points[0].size());
  if (m < 1 || m > 3)
    fail(ErrorCode::OutOfRange, "hull supports ambient dimension 1..3");

  HullResult out;
  out.ambient_dim = m;

  Vec c = Vec::Zero(m);
  for (const auto& p : points) c += p;
  c /= static_cast<double>(points.size());
  Mat centered(m, points.size());
  for (size_t i = 0; i < points.size(); ++i) centered.col(i) = points[i] - c;
  double scale = std::max(1e-30, centered.cwiseAbs().maxCoeff());

  Eigen::JacobiSVD<Mat> svd(centered, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-9 * scale) ++rank;
  out.affine_rank = rank;
  const Mat B = svd.matrixU().leftCols(rank);   // span directions
  const Mat Q = svd.matrixU().rightCols(m - rank);  // normal directions

  // Equality constraints pinning the affine span.
  for (int j = 0; j < m - rank; ++j) {
    const Vec q = Q.col(j);
    out.halfspaces.push_back({q, q.dot(c), false});
    out.halfspaces.push_back({-q, -q.dot(c), false});
  }

  if (rank == 0) {
    out.vertices.push_back(c);
    return out;
  }

  // Span coordinates of the samples.
  Mat Y = B.transpose() * centered;  // rank x N

  if (rank == 1) {
    int imin = 0, imax = 0;
    for (int i = 1; i < Y.cols(); ++i) {
      if (Y(0, i) < Y(0, imin)) imin = i;
      if (Y(0, i) > Y(0, imax)) imax = i;
    }
    out.vertices.push_back(points[imin]);
    if (imax != imin) out.vertices.push_back(points[imax]);
    const Vec b = B.col(0);
    out.halfspaces.push_back({b, Y(0, imax) + b.dot(c), false});
    out.halfspaces.push_back({-b, -(Y(0, imin) + b.dot(c)), false});
    return out;
  }

  if (rank == 2) {
    std::vector<Eigen::Vector2d> pts(Y.cols());
    for (int i = 0; i < Y.cols(); ++i) pts[i] = Y.col(i);
    const auto verts2 = hull_detail::chain2d(pts, 1e-10 * scale * scale);
    for (const auto& v : verts2)
      out.vertices.push_back(c + B * Vec(v));
    const int nv = static_cast<int>(verts2.size());
    for (int i = 0; i < nv; ++i) {
      const Eigen::Vector2d a = verts2[i], b2 = verts2[(i + 1) % nv];
      if (nv == 2 && i == 1) break;  // a segment has one edge
      Eigen::Vector2d edge = b2 - a;
      Eigen::Vector2d n2(edge.y(), -edge.x());  // outward for CCW ordering
      const double len = n2.norm();
      if (len <= 0.0) continue;
      n2 /= len;
      const Vec nn = B * Vec(n2);
      out.halfspaces.push_back({nn, n2.dot(a) + nn.dot(c), false});
      if (nv == 2) {
        // Opposite side of the segment.
        out.halfspaces.push_back({-nn, -(n2.dot(a)) - nn.dot(c) + 0.0, false});
      }
    }
    return out;
  }

  // rank == 3
  std::vector<Eigen::Vector3d> pts(Y.cols());
  for (int i = 0; i < Y.cols(); ++i) pts[i] = Y.col(i);
  const auto faces = hull_detail::hull3d(pts, 1e-9 * scale);

  // Merge coplanar triangles into facet classes.
  struct Facet {
    Eigen::Vector3d normal;
    double offset;
  };
  std::vector<Facet> classes;
  for (const auto& f : faces) {
    bool found = false;
    for (const auto& cl : classes) {
      if (cl.normal.dot(f.normal) > 1.0 - 1e-8 &&
          std::abs(cl.offset - f.offset) <= 1e-8 * scale) {
        found = true;
        break;
      }
    }
    if (!found) classes.push_back({f.normal, f.offset});
  }
  for (const auto& cl : classes) {
    const Vec nn = B * Vec(cl.normal);
    out.halfspaces.push_back({nn, cl.offset + nn.dot(c), false});
  }

  // Vertices: hull points incident to three facets with independent normals.
  std::vector<int> cand;
  for (const auto& f : faces) {
    cand.push_back(f.a);
    cand.push_back(f.b);
    cand.push_back(f.c);
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  for (int i : cand) {
    Mat inc(3, 0);
    for (const auto& cl : classes) {
      if (std::abs(cl.normal.dot(pts[i]) - cl.offset) <= 1e-7 * scale) {
        inc.conservativeResize(3, inc.cols() + 1);
        inc.col(inc.cols() - 1) = cl.normal;
      }
    }
    if (inc.cols() >= 3 && numerical_rank(inc, 1e-6) >= 3)
      out.vertices.push_back(points[i]);
  }
  return out;
}

}  // namespace cosym
