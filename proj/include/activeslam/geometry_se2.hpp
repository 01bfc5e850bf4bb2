// Copyright 2026 The activeslam Authors
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

// Planar rigid-body primitives and the convex field-of-view polygon.

#ifndef ACTIVESLAM_GEOMETRY_SE2_HPP_
#define ACTIVESLAM_GEOMETRY_SE2_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace activeslam {

/// Wraps an angle into the half-open interval [-pi, pi).
inline double wrap_angle(double theta) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double r = theta - kTwoPi * std::floor((theta + std::numbers::pi) / kTwoPi);
  // floor() can land one ulp on the wrong side of the interval ends
  if (r >= std::numbers::pi) r -= kTwoPi;
  if (r < -std::numbers::pi) r += kTwoPi;
  return r;
}

inline Eigen::Matrix2d rotation_matrix(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  return r;
}

/// dR/dtheta.
inline Eigen::Matrix2d rotation_matrix_derivative(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix2d r;
  r << -s, -c, c, -s;
  return r;
}

/// Heading angle with its rotation matrix view.
class Rotation2 {
 public:
  Rotation2() = default;
  explicit Rotation2(double theta) : theta_(wrap_angle(theta)) {}

  double angle() const { return theta_; }
  Eigen::Matrix2d matrix() const { return rotation_matrix(theta_); }

 private:
  double theta_ = 0.0;
};

/// Planar pose stored in (p, theta) coordinates, theta in [-pi, pi).
struct Pose2 {
  Eigen::Vector2d p = Eigen::Vector2d::Zero();
  double theta = 0.0;

  Pose2() = default;
  Pose2(const Eigen::Vector2d& position, double heading)
      : p(position), theta(wrap_angle(heading)) {}
  Pose2(double x, double y, double heading)
      : p(x, y), theta(wrap_angle(heading)) {}

  /// Stacked vector [px, py, theta].
  Eigen::Vector3d vector() const { return {p.x(), p.y(), theta}; }
  static Pose2 from_vector(const Eigen::Vector3d& x) {
    return Pose2(x.head<2>(), x.z());
  }

  /// Homogeneous SE(2) matrix [[R, p], [0, 1]].
  Eigen::Matrix3d matrix() const {
    Eigen::Matrix3d t = Eigen::Matrix3d::Identity();
    t.topLeftCorner<2, 2>() = rotation_matrix(theta);
    t.topRightCorner<2, 1>() = p;
    return t;
  }
};

/// Pose difference a - b with the heading component wrapped.
inline Eigen::Vector3d pose_error(const Pose2& a, const Pose2& b) {
  return {a.p.x() - b.p.x(), a.p.y() - b.p.y(), wrap_angle(a.theta - b.theta)};
}

/// Signed distance to a polygon boundary together with its gradient.
struct SignedDistance {
  double distance = 0.0;
  Eigen::Vector2d gradient = Eigen::Vector2d::Zero();
  // Nearest-edge choice was ambiguous between edges with distinct gradients.
  bool kink = false;
};

/// Convex polygon in the robot body frame. Vertices are stored
/// counterclockwise; clockwise input is reversed on construction.
class FovPolygon {
 public:
  explicit FovPolygon(std::vector<Eigen::Vector2d> vertices)
      : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) {
      throw std::invalid_argument("FovPolygon: needs at least 3 vertices");
    }
    for (const auto& v : vertices_) {
      if (!v.allFinite()) {
        throw std::invalid_argument("FovPolygon: non-finite vertex");
      }
    }
    double area2 = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      const auto& a = vertices_[i];
      const auto& b = vertices_[(i + 1) % vertices_.size()];
      area2 += a.x() * b.y() - b.x() * a.y();
    }
    if (!(std::abs(area2) > 1e-12)) {
      throw std::invalid_argument("FovPolygon: polygon has empty interior");
    }
    if (area2 < 0.0) std::reverse(vertices_.begin(), vertices_.end());
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Eigen::Vector2d e0 = vertices_[(i + 1) % n] - vertices_[i];
      const Eigen::Vector2d e1 = vertices_[(i + 2) % n] - vertices_[(i + 1) % n];
      if (e0.norm() == 0.0) {
        throw std::invalid_argument("FovPolygon: repeated vertex");
      }
      if (cross(e0, e1) < -1e-12 * e0.norm() * e1.norm()) {
        throw std::invalid_argument("FovPolygon: polygon is not convex");
      }
    }
  }

  /// Isosceles triangle with its apex at the origin, opening along +x.
  static FovPolygon triangle(double height, double apex_angle_rad) {
    const double half_width = height * std::tan(0.5 * apex_angle_rad);
    return FovPolygon({Eigen::Vector2d(0.0, 0.0),
                       Eigen::Vector2d(height, -half_width),
                       Eigen::Vector2d(height, half_width)});
  }

  const std::vector<Eigen::Vector2d>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  /// Closed containment test (boundary counts as inside).
  bool contains(const Eigen::Vector2d& q) const {
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Eigen::Vector2d& a = vertices_[i];
      const Eigen::Vector2d& b = vertices_[(i + 1) % n];
      if (cross(b - a, q - a) < 0.0) return false;
    }
    return true;
  }

  bool operator==(const FovPolygon& other) const {
    return vertices_ == other.vertices_;
  }

 private:
  static double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return a.x() * b.y() - a.y() * b.x();
  }

  std::vector<Eigen::Vector2d> vertices_;
};

/// Signed distance with gradient: negative inside, positive outside, edge
/// exact. Ties between nearest edges go to the lowest edge index.
inline SignedDistance signed_distance_with_gradient(const Eigen::Vector2d& q,
                                                    const FovPolygon& fov) {
  const auto& v = fov.vertices();
  const std::size_t n = v.size();
  const bool inside = fov.contains(q);

  double best = std::numeric_limits<double>::infinity();
  Eigen::Vector2d best_point = v[0];
  std::size_t best_edge = 0;
  std::vector<std::pair<double, Eigen::Vector2d>> per_edge;
  per_edge.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = v[i];
    const Eigen::Vector2d ab = v[(i + 1) % n] - a;
    const double t = std::clamp((q - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
    const Eigen::Vector2d c = a + t * ab;
    const double dist = (q - c).norm();
    per_edge.emplace_back(dist, c);
    if (dist < best) {
      best = dist;
      best_point = c;
      best_edge = i;
    }
  }

  SignedDistance out;
  out.distance = inside ? -best : best;
  auto gradient_for = [&](std::size_t edge, const Eigen::Vector2d& c) {
    const Eigen::Vector2d diff = q - c;
    const double norm = diff.norm();
    if (norm > 0.0) {
      return Eigen::Vector2d(inside ? Eigen::Vector2d(-diff / norm)
                                    : Eigen::Vector2d(diff / norm));
    }
    // on the boundary: outward normal of the edge
    const Eigen::Vector2d ab = v[(edge + 1) % n] - v[edge];
    return Eigen::Vector2d(Eigen::Vector2d(ab.y(), -ab.x()).normalized());
  };
  out.gradient = gradient_for(best_edge, best_point);

  const double tie_tol = 1e-9 * std::max(1.0, best);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == best_edge || per_edge[i].first - best > tie_tol) continue;
    const Eigen::Vector2d g = gradient_for(i, per_edge[i].second);
    if ((g - out.gradient).norm() > 1e-9) {
      out.kink = true;
      break;
    }
  }
  return out;
}

inline double signed_distance(const Eigen::Vector2d& q, const FovPolygon& fov) {
  return signed_distance_with_gradient(q, fov).distance;
}

}  // namespace activeslam

#endif  // ACTIVESLAM_GEOMETRY_SE2_HPP_
