#include "hypvol/geometry.hpp"

#include "hypvol/errors.hpp"
#include "hypvol/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>

namespace hypvol {

// --- containment ---------------------------------------------------------------

bool contains(const PointList& pts, const Point& x) {
  require(!pts.empty(), "contains: empty point list");
  const int d = static_cast<int>(x.size());
  const int n = static_cast<int>(pts.size());
  require(n >= d + 1, "contains: need at least d+1 points");
  const int m = d + 1;
  // rows: Σ λ_i p_i = x, Σ λ_i = 1; columns: λ (n), artificials (m), rhs
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < n; ++j) t(r, j) = r < d ? pts[j](r) : 1.0;
    t(r, n + m) = r < d ? x(r) : 1.0;
    if (t(r, n + m) < 0) t.row(r) *= -1;
    t(r, n + r) = 1.0;
  }
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) basis[r] = n + r;
  // objective row holds reduced costs of min Σ artificials
  for (int r = 0; r < m; ++r) t.row(m) -= t.row(r);
  for (int r = 0; r < m; ++r) t(m, n + r) = 0.0;

  const double eps = 1e-12;
  for (int iter = 0; iter < 50 * (n + m); ++iter) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j)
      if (t(m, j) < -eps) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    double best = 0.0;
    for (int r = 0; r < m; ++r) {
      if (t(r, enter) <= eps) continue;
      double ratio = t(r, n + m) / t(r, enter);
      if (leave < 0 || ratio < best - eps || (std::fabs(ratio - best) <= eps && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded cannot happen for Phase I
    t.row(leave) /= t(leave, enter);
    for (int r = 0; r <= m; ++r)
      if (r != leave && t(r, enter) != 0.0) t.row(r) -= t(r, enter) * t.row(leave);
    basis[leave] = enter;
  }
  return -t(m, n + m) <= kFeasibilityTol;
}

// --- hulls -----------------------------------------------------------------------------

namespace {

double cross2(const Point& o, const Point& a, const Point& b) {
  return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

}  // namespace

std::vector<int> hull_d2(const PointList& pts) {
  const int n = static_cast<int>(pts.size());
  require(n >= 3, "hull_d2: need at least 3 points");
  for (const auto& p : pts) require(p.size() == 2, "hull_d2: points must be planar");
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (pts[a](0) != pts[b](0)) return pts[a](0) < pts[b](0);
    if (pts[a](1) != pts[b](1)) return pts[a](1) < pts[b](1);
    return a < b;
  });
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double tol = 1e-14 * std::max(1.0, scale * scale);
  std::vector<int> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[idx[i]]) <= tol) --k;
    h[k++] = idx[i];
  }
  for (int i = n - 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[idx[i]]) <= tol) --k;
    h[k++] = idx[i];
  }
  h.resize(std::max(k - 1, 0));
  if (h.size() < 3) throw DegenerateHullError("hull_d2: all points collinear");
  return h;
}

namespace {

using V3 = Eigen::Vector3d;
using Face = std::array<int, 3>;

double orient3(const V3& a, const V3& b, const V3& c, const V3& p) { return (b - a).cross(c - a).dot(p - a); }

}  // namespace

std::vector<std::array<int, 3>> hull_d3(const PointList& pts) {
  const int n = static_cast<int>(pts.size());
  require(n >= 4, "hull_d3: need at least 4 points");
  std::vector<V3> p(n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    require(pts[i].size() == 3, "hull_d3: points must be 3-dimensional");
    p[i] = pts[i];
    scale = std::max(scale, p[i].cwiseAbs().maxCoeff());
  }
  scale = std::max(scale, 1e-300);
  const double tol = 1e-12 * scale * scale * scale;

  int i0 = 0, i1 = -1, i2 = -1, i3 = -1;
  for (int i = 1; i < n && i1 < 0; ++i)
    if ((p[i] - p[i0]).norm() > 1e-12 * scale) i1 = i;
  if (i1 < 0) throw DegenerateHullError("hull_d3: all points coincide");
  for (int i = 1; i < n && i2 < 0; ++i)
    if ((p[i1] - p[i0]).cross(p[i] - p[i0]).norm() > 1e-12 * scale * scale) i2 = i;
  if (i2 < 0) throw DegenerateHullError("hull_d3: all points collinear");
  for (int i = 1; i < n && i3 < 0; ++i)
    if (std::fabs(orient3(p[i0], p[i1], p[i2], p[i])) > tol) i3 = i;
  if (i3 < 0) throw DegenerateHullError("hull_d3: all points coplanar");

  std::vector<Face> faces;
  auto add_face = [&](int a, int b, int c, const V3& inside) {
    if (orient3(p[a], p[b], p[c], inside) > 0) std::swap(b, c);
    faces.push_back({a, b, c});
  };
  V3 centroid = (p[i0] + p[i1] + p[i2] + p[i3]) / 4;
  add_face(i0, i1, i2, centroid);
  add_face(i0, i1, i3, centroid);
  add_face(i0, i2, i3, centroid);
  add_face(i1, i2, i3, centroid);

  for (int q = 0; q < n; ++q) {
    if (q == i0 || q == i1 || q == i2 || q == i3) continue;
    std::vector<char> visible(faces.size(), 0);
    bool any = false;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      const auto& F = faces[f];
      if (orient3(p[F[0]], p[F[1]], p[F[2]], p[q]) > tol) {
        visible[f] = 1;
        any = true;
      }
    }
    if (!any) continue;
    std::map<std::pair<int, int>, int> edge_owner;  // directed edge -> visible?
    for (std::size_t f = 0; f < faces.size(); ++f) {
      const auto& F = faces[f];
      for (int e = 0; e < 3; ++e) edge_owner[{F[e], F[(e + 1) % 3]}] = visible[f];
    }
    std::vector<Face> next;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      const auto& F = faces[f];
      if (!visible[f]) {
        next.push_back(F);
        continue;
      }
      for (int e = 0; e < 3; ++e) {
        int a = F[e], b = F[(e + 1) % 3];
        auto it = edge_owner.find({b, a});
        if (it != edge_owner.end() && !it->second) next.push_back({a, b, q});
      }
    }
    faces = std::move(next);
  }
  std::sort(faces.begin(), faces.end());
  return faces;
}

// --- hyperbolic measures -----------------------------------------------------------------

double hyp_area_polygon_d2(const PointList& cycle) {
  const int n = static_cast<int>(cycle.size());
  require(n >= 3, "hyp_area_polygon_d2: need at least 3 vertices");
  double orientation = 0.0;
  for (int i = 0; i < n; ++i) {
    require(cycle[i].size() == 2, "hyp_area_polygon_d2: planar vertices expected");
    require(cycle[i].squaredNorm() <= 1 + 1e-12, "hyp_area_polygon_d2: vertex outside the disk");
    double c = cross2(cycle[i], cycle[(i + 1) % n], cycle[(i + 2) % n]);
    if (c != 0.0) {
      if (orientation == 0.0) orientation = c;
      require(c * orientation > 0, "hyp_area_polygon_d2: cycle is not convex");
    }
  }
  double angle_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const Point& x = cycle[i];
    double r2 = x.squaredNorm();
    if (std::sqrt(r2) >= 1 - kIdealTol) continue;
    Point u = cycle[(i + n - 1) % n] - x;
    Point w = cycle[(i + 1) % n] - x;
    auto g = [&](const Point& a, const Point& b) { return (1 - r2) * a.dot(b) + x.dot(a) * x.dot(b); };
    double c = g(u, w) / std::sqrt(g(u, u) * g(w, w));
    angle_sum += std::acos(std::clamp(c, -1.0, 1.0));
  }
  return (n - 2) * std::numbers::pi - angle_sum;
}

double ideal_tetra_volume(const Eigen::Vector3d& v1, const Eigen::Vector3d& v2, const Eigen::Vector3d& v3,
                          const Eigen::Vector3d& v4) {
  const std::array<V3, 4> v = {v1, v2, v3, v4};
  for (int i = 0; i < 4; ++i) {
    require(std::fabs(v[i].norm() - 1) <= 1e-9, "ideal_tetra_volume: vertices must be unit vectors");
    for (int j = 0; j < i; ++j) require((v[i] - v[j]).norm() > 1e-12, "ideal_tetra_volume: coincident vertices");
  }
  // projection pole as far as possible from every vertex
  std::vector<V3> candidates = {V3::UnitX(), -V3::UnitX(), V3::UnitY(), -V3::UnitY(), V3::UnitZ(), -V3::UnitZ()};
  V3 s = v1 + v2 + v3 + v4;
  if (s.norm() > 1e-3) candidates.push_back(-s.normalized());
  V3 pole = candidates[0];
  double best = -1;
  for (const auto& c : candidates) {
    double m = 2;
    for (const auto& x : v) m = std::min(m, 1 - x.dot(c));
    if (m > best) {
      best = m;
      pole = c;
    }
  }
  V3 e1 = pole.unitOrthogonal();
  V3 e2 = pole.cross(e1);
  std::array<std::complex<double>, 4> w;
  for (int i = 0; i < 4; ++i) w[i] = std::complex<double>(v[i].dot(e1), v[i].dot(e2)) / (1 - v[i].dot(pole));
  std::complex<double> z = (w[0] - w[2]) * (w[1] - w[3]) / ((w[1] - w[2]) * (w[0] - w[3]));
  if (std::fabs(z.imag()) <= 1e-14 * std::abs(z)) return 0.0;
  double vol = lobachevsky(std::arg(z)) + lobachevsky(std::arg(1.0 / (1.0 - z))) + lobachevsky(std::arg(1.0 - 1.0 / z));
  return std::fabs(vol);
}

double simplex_volume(const PointList& vertices) {
  const int m = static_cast<int>(vertices.size());
  require(m >= 2, "simplex_volume: need at least 2 vertices");
  const int d = static_cast<int>(vertices[0].size());
  require(m == d + 1, "simplex_volume: need d+1 vertices");
  Eigen::MatrixXd e(d, d);
  for (int j = 0; j < d; ++j) e.col(j) = vertices[j + 1] - vertices[0];
  double f = 1;
  for (int k = 2; k <= d; ++k) f *= k;
  return std::fabs(e.determinant()) / f;
}

}  // namespace hypvol
