#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "bandlab/basis.hpp"
#include "bandlab/families.hpp"
#include "bandlab/sampling.hpp"

namespace bandlab {

// Greedy-plus-exchange maximizer of |det(phi_i(x_j))| over a candidate set.
struct FeketeResult {
  double bandwidth = 0.0;
  std::vector<Point> nodes;  // k_L of them
  double log_abs_det = 0.0;
  double separation = 0.0;    // L * min pairwise node distance
  double lagrange_sup = 0.0;  // max |l_i| over the candidate probe set
  std::string candidate_descriptor;
  int exchange_swaps = 0;
};

struct FeketeOptions {
  int candidate_count = 0;   // 0 = default 4 k_L
  int exchange_rounds = 16;  // maximum full passes
  unsigned seed = 42;        // phases the deterministic candidate set
  std::vector<Point> candidates;  // explicit candidate set override
};

FeketeResult approximate_fekete(const SpectralManifold& m, double bandwidth,
                                const FeketeOptions& options = {});

// Lagrange functions of a node set: l_i(z) = (V^{-T} phi(z))_i.
class LagrangeEvaluator {
 public:
  LagrangeEvaluator(const SpectralManifold& m, double bandwidth, const std::vector<Point>& nodes);

  double operator()(int i, const Point& z) const;
  Eigen::VectorXd all(const Point& z) const;
  const EigenBasis& basis() const { return basis_; }

 private:
  EigenBasis basis_;
  Eigen::MatrixXd inverse_transpose_;  // V^{-T}
};

double lagrange_eval(const SpectralManifold& m, const FeketeResult& fekete, int i, const Point& z);

// Normalized smooth-cutoff kernel p(z, w) = B_{L eps / C}(z, w) / B(z, z),
// a weight in E_{L eps / C} with p(z, z) = 1.
class WeightedKernel {
 public:
  WeightedKernel(const SpectralManifold& m, double bandwidth, double eps, double c_prod,
                 double cutoff_eps = 0.5);

  double operator()(const Point& z, const Point& w) const;
  double reduced_bandwidth() const { return basis_.bandwidth(); }
  const EigenBasis& basis() const { return basis_; }

 private:
  EigenBasis basis_;
  Eigen::VectorXd weights_;
};

double weighted_kernel(const SpectralManifold& m, double bandwidth, double eps, double c_prod,
                       const Point& z, const Point& w);

// Z_eps(L) = Z([(1+eps) L]) evaluated as a sampling family at bandwidth L
// (frame bounds), and Z_{-eps}(L) = Z([(1-eps) L]) as an interpolation
// family at bandwidth L (Riesz bounds).
struct DilatedCheck {
  std::vector<FrameBoundsEntry> mz_side;
  std::vector<RieszBoundsEntry> interpolation_side;
};

DilatedCheck dilated_family_check(const SpectralManifold& m, const TriangularFamily& fekete_family,
                                  const std::vector<double>& bandwidths, double eps);

struct EquidistLevel {
  double bandwidth = 0.0;
  double cap_discrepancy = 0.0;            // sup over the cap panel of |mu_L(B) - sigma(B)|
  double mass_error = 0.0;                 // |mu_L(M) - 1|
  std::vector<double> moment_errors;       // |mu_L(f) - sigma(f)| per panel function
};

struct EquidistReport {
  std::vector<EquidistLevel> levels;
};

struct CapPanel {
  std::vector<Point> centers;
  std::vector<double> radii;
};

CapPanel default_cap_panel(const SpectralManifold& m);

// Default function panel: the first nonconstant eigenfunctions of a fixed
// low bandwidth, whose volume means vanish exactly.
EquidistReport equidistribution_test(const SpectralManifold& m, const TriangularFamily& family,
                                     const std::vector<double>& bandwidths,
                                     const CapPanel& caps = {}, int moment_functions = 8);

// Smallest grid constant C with E_L . E_{eps L} contained in E_{L(1+C eps)}
// up to relative residual energy 1e-10; infinity if no grid value works.
struct ProductPropertyResult {
  double constant = 0.0;
  double residual_at_constant = 0.0;
  std::vector<std::pair<double, double>> residual_per_constant;
};

ProductPropertyResult product_property_check(const SpectralManifold& m, double bandwidth,
                                             double eps, const std::vector<double>& c_grid = {},
                                             unsigned seed = 42);

}  // namespace bandlab
