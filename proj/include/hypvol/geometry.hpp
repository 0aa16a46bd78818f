#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace hypvol {

using Point = Eigen::VectorXd;
using PointList = std::vector<Point>;

constexpr double kFeasibilityTol = 1e-10;
constexpr double kIdealTol = 1e-12;

/// Whether x lies in the convex hull of pts (Phase-I simplex with Bland's rule).
bool contains(const PointList& pts, const Point& x);

/// Counterclockwise hull cycle as indices into pts.
std::vector<int> hull_d2(const PointList& pts);

/// Outward-oriented triangular facets as index triples.
std::vector<std::array<int, 3>> hull_d3(const PointList& pts);

/// Hyperbolic area of a convex polygon in the Klein disk via Gauss–Bonnet.
double hyp_area_polygon_d2(const PointList& cycle);

/// Volume of the ideal tetrahedron with the given vertices on the unit sphere.
double ideal_tetra_volume(const Eigen::Vector3d& v1, const Eigen::Vector3d& v2, const Eigen::Vector3d& v3,
                          const Eigen::Vector3d& v4);

/// Euclidean volume of the simplex spanned by d+1 points in R^d.
double simplex_volume(const PointList& vertices);

}  // namespace hypvol
