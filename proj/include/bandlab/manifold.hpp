#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bandlab/errors.hpp"

namespace bandlab {

// Chart coordinates of a point. Layout per manifold kind:
//   circle   x[0] in [0,1)                       (R/Z, circumference 1)
//   torus2   x[0], x[1] in [0,1)                 (flat unit torus)
//   sphere2  x[0] = colatitude in [0,pi], x[1] = azimuth in [0,2pi)
//   product  factor A coords followed by factor B coords
struct Point {
  std::vector<double> x;

  Point() = default;
  explicit Point(std::vector<double> coords) : x(std::move(coords)) {}
  Point(std::initializer_list<double> coords) : x(coords) {}
  Point(double a, double b) : x{a, b} {}
  explicit Point(double a) : x{a} {}
};

enum class ManifoldKind { circle, torus2, sphere2, product };

// A compact manifold with closed-form Laplacian eigendata. All catalogue
// members are homogeneous, so ball volumes do not depend on the center.
// Immutable after construction; cheap to copy.
class SpectralManifold {
 public:
  static SpectralManifold circle();
  static SpectralManifold torus2();
  static SpectralManifold sphere2();
  static SpectralManifold product(const SpectralManifold& a, const SpectralManifold& b);

  // Grammar: "circle", "torus2", "sphere2", "product(<spec>,<spec>)".
  static SpectralManifold parse(const std::string& text);

  ManifoldKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  double volume() const { return volume_; }
  int chart_dimension() const { return chart_dimension_; }
  std::string name() const;

  const SpectralManifold& factor_a() const { return *a_; }
  const SpectralManifold& factor_b() const { return *b_; }

  double distance(const Point& z, const Point& w) const;
  // Wraps periodic coordinates into their canonical ranges.
  Point canonical(const Point& z) const;
  double diameter() const;

  // Largest r for which ball_volume's closed form (or product quadrature)
  // is valid: 1/2 on circle/torus2, pi on sphere2, min of factors on
  // products.
  double max_ball_radius() const;
  double ball_volume(double r) const;
  // d/dr of ball_volume: the area of the geodesic sphere of radius r.
  double radial_density(double r) const;

  // A deterministic near-uniform sample (lattice / Fibonacci spiral),
  // used for candidate sets and probe grids. phase in [0,1) rotates the
  // construction without changing its cardinality or uniformity.
  std::vector<Point> uniform_points(int n, double phase = 0.0) const;
  // Low-discrepancy sequence (Halton-based), for probe centers.
  std::vector<Point> low_discrepancy_points(int n) const;

 private:
  SpectralManifold(ManifoldKind kind, int dim, double vol, int chart_dim)
      : kind_(kind), dimension_(dim), volume_(vol), chart_dimension_(chart_dim) {}

  ManifoldKind kind_;
  int dimension_;
  double volume_;
  int chart_dimension_;
  std::shared_ptr<const SpectralManifold> a_, b_;
};

// Free-function forms mirroring the operation names used throughout.
inline double geodesic_distance(const SpectralManifold& m, const Point& z, const Point& w) {
  return m.distance(z, w);
}
inline double ball_volume(const SpectralManifold& m, const Point& /*center*/, double r) {
  return m.ball_volume(r);  // homogeneous: center-independent
}

// Canonical probe center for scans: torus/circle origin, sphere north pole.
Point default_center(const SpectralManifold& m);

}  // namespace bandlab
