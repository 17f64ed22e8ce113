#pragma once

#include <vector>

#include "bandlab/manifold.hpp"

namespace bandlab {

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached; thread-safe after first use for a given n.
const GaussLegendre& gauss_legendre(int n);

struct QuadratureRule {
  std::vector<Point> nodes;
  std::vector<double> weights;
  // Frequency up to which products of two eigenfunctions integrate
  // exactly (global rules), or 0 for estimated-accuracy ball rules.
  double exactness = 0.0;

  double weight_sum() const;
};

// Rule exact (to roundoff) for products of two eigenfunctions with
// frequency <= max_frequency.
QuadratureRule global_quadrature(const SpectralManifold& m, double max_frequency);

// Polar rule over the geodesic ball B(center, r). Weight sum matches
// ball_volume within 1e-8 at the default resolution; resolution doubles
// once automatically if the check fails.
QuadratureRule ball_quadrature(const SpectralManifold& m, const Point& center, double r,
                               int radial = 64, int angular = 128);

}  // namespace bandlab
