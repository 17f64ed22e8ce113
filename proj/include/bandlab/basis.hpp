#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "bandlab/manifold.hpp"

namespace bandlab {

// One real eigenfunction of the Laplacian, lambda = frequency (so the
// eigenvalue is -lambda^2). Descriptor layout:
//   circle   a: 0 const, 1 cos, 2 sin;  b: integer frequency n
//   torus2   a: 0 const, 1 cos, 2 sin;  b,c: lattice vector (half-lattice
//            representative, b > 0 or (b == 0 && c > 0))
//   sphere2  a: degree l;  b: order m in [-l, l] (real harmonics)
//   product  a,b: indices into the factor bases
struct Mode {
  double frequency = 0.0;
  int a = 0, b = 0, c = 0;
};

// All eigenfunctions with frequency <= L, ordered by (frequency, descriptor).
class EigenBasis {
 public:
  EigenBasis(const SpectralManifold& m, double bandwidth);

  const SpectralManifold& manifold() const { return manifold_; }
  double bandwidth() const { return bandwidth_; }
  int size() const { return static_cast<int>(modes_.size()); }
  const std::vector<Mode>& modes() const { return modes_; }
  double frequency(int i) const { return modes_[static_cast<std::size_t>(i)].frequency; }

  double evaluate(int i, const Point& z) const;
  // Values of every basis function at z, in basis order.
  Eigen::VectorXd evaluate_all(const Point& z) const;
  // Rows = points, columns = basis functions.
  Eigen::MatrixXd evaluate_matrix(const std::vector<Point>& pts) const;

 private:
  SpectralManifold manifold_;
  double bandwidth_;
  std::vector<Mode> modes_;
  std::shared_ptr<const EigenBasis> basis_a_, basis_b_;  // product factors
  int sphere_lmax_ = -1;
};

// Dimension of E_L without materializing the basis.
int eigenspace_dimension(const SpectralManifold& m, double bandwidth);

// Gram matrix of the basis under the given rule; identity when the rule
// is exact for the basis products.
Eigen::MatrixXd basis_gram(const EigenBasis& basis, const struct QuadratureRule& rule);

// Stable normalized associated Legendre values: all degrees l in [m, lmax]
// at x = cos(theta), including the sqrt((2l+1)(l-m)!/(4pi (l+m)!)) factor.
void normalized_legendre(int lmax, int m, double x, std::vector<double>& out);

}  // namespace bandlab
