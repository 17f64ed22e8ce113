#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "bandlab/basis.hpp"
#include "bandlab/families.hpp"
#include "bandlab/quadrature.hpp"

namespace bandlab {

// Matrix of the classical concentration operator over B(center, r) in the
// eigenbasis: d_{ij} = int_B phi_i phi_j.
Eigen::MatrixXd classical_matrix(const EigenBasis& basis, const Point& center, double r);

// Modified operator: beta_eps(lambda_i/L) d_{ij} beta_eps(lambda_j/L).
// eps = 0 reduces to the classical matrix.
Eigen::MatrixXd modified_matrix(const EigenBasis& basis, double eps, const Point& center,
                                double r);

struct ConcentrationSpectrum {
  double bandwidth = 0.0;
  double eps = 0.0;
  double radius = 0.0;
  Eigen::VectorXd eigenvalues;  // sorted descending, raw values
  double trace = 0.0;           // T1 = sum lambda_j
  double trace_sq = 0.0;        // T2 = sum lambda_j^2

  int count_above(double gamma) const;   // #{lambda_j > gamma}
  int count_at_least(double delta) const;  // #{lambda_j >= delta}
};

// Eigendecomposition with the [0,1] integrity check (tolerance 1e-8).
ConcentrationSpectrum spectrum(const Eigen::MatrixXd& matrix);

struct TraceIdentities {
  double t1_matrix = 0.0;
  double t1_kernel = 0.0;
  double t2_matrix = 0.0;
  double t2_kernel = 0.0;
};

// T1 and T2 computed both from the assembled matrix and from kernel-side
// quadrature (int_A Btilde(z,z) dV and the double integral of |Btilde|^2).
TraceIdentities trace_identities(const EigenBasis& basis, double eps, const Point& center,
                                 double r);

struct PlateauCell {
  double bandwidth = 0.0;
  double radius_scale = 0.0;  // R, ball radius R / L
  double t1 = 0.0, t2 = 0.0;
  double trace_ratio = 0.0;   // T1 / (k_L vol(B) / vol(M))
  std::vector<int> counts;    // #{lambda^L_j > gamma} per threshold
  // with a family supplied:
  int family_outer = -1;      // N_L(t) = #(Z(L) cap B(xi, (R+t)/L))
  int family_inner = -1;      // n_L(t) = #(Z(L) cap B(xi, (R-t)/L))
  std::vector<int> dilated_counts;  // #{lambda^{L(1+rho)}_j >= delta} per threshold
};

struct PlateauOptions {
  double annulus_width = 0.0;  // t; 0 = default 3 / separation constant
  double dilation = 0.2;       // rho
  std::optional<Point> center; // default: default_center(m)
};

struct PlateauReport {
  double eps = 0.0;
  double annulus_width = 0.0;
  double dilation = 0.0;
  std::vector<double> thresholds;
  std::vector<PlateauCell> cells;  // ordered by (L, R)
  // mean of (T1 - T2) / R^{m-1} per bandwidth, with its min/max spread
  std::vector<std::pair<double, double>> growth_per_bandwidth;  // (L, mean)
  double growth_spread = 0.0;
};

PlateauReport plateau_scan(const SpectralManifold& m, const TriangularFamily* family,
                           const std::vector<double>& bandwidths,
                           const std::vector<double>& radius_scales, double eps,
                           const std::vector<double>& thresholds,
                           const PlateauOptions& options = {});

}  // namespace bandlab
