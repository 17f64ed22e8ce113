#pragma once

#include <Eigen/Core>
#include <vector>

#include "bandlab/basis.hpp"
#include "bandlab/families.hpp"

namespace bandlab {

// Extreme eigenvalues of the normalized sampling form
// (1/k_L) sum_j |f(z_j)|^2 over ||f||_2^2 = 1, f in E_L.
struct FrameBoundsEntry {
  double bandwidth = 0.0;
  int dimension = 0;  // k_L
  int m_points = 0;
  double lower = 0.0;  // A(L)
  double upper = 0.0;  // B(L)

  double condition() const { return lower > 0.0 ? upper / lower : kSeparationInfinite; }
};

// Extreme eigenvalues of the normalized-kernel Gram
// G~_{jk} = K_L(z_j, z_k) / sqrt(K_L(z_j,z_j) K_L(z_k,z_k)).
struct RieszBoundsEntry {
  double bandwidth = 0.0;
  int m_points = 0;
  double lower = 0.0;  // a(L)
  double upper = 0.0;  // b(L)
};

// f = sum_j c_j K_L(., z_j) matching prescribed node values.
struct Interpolant {
  Eigen::VectorXd coefficients;
  double residual = 0.0;  // max |f(z_j) - values_j|
  double norm_sq = 0.0;   // c^T G c
  bool degenerate = false;
};

FrameBoundsEntry frame_bounds(const EigenBasis& basis, const std::vector<Point>& pts);
RieszBoundsEntry riesz_bounds(const EigenBasis& basis, const std::vector<Point>& pts);

// The optimal Plancherel-Polya constant at level L: the upper frame bound.
double plancherel_polya_bound(const EigenBasis& basis, const std::vector<Point>& pts);

// Solves the kernel Gram system G c = values; numerically singular
// systems fall back to a truncated spectral pseudo-inverse (relative
// cutoff 1e-10) and report the achieved residual instead of throwing.
Interpolant min_norm_interpolant(const EigenBasis& basis, const std::vector<Point>& pts,
                                 const Eigen::VectorXd& values);

// Per-level frame/Riesz bounds over a whole family.
struct FamilyBounds {
  std::vector<FrameBoundsEntry> frame;
  std::vector<RieszBoundsEntry> riesz;
  // Largest ratio of B/A across levels, +inf if any A = 0.
  double frame_spread() const;
  bool empirically_mz(double spread_factor = 10.0) const;
};

FamilyBounds family_bounds(const SpectralManifold& m, const TriangularFamily& family,
                           bool with_riesz = true);

}  // namespace bandlab
