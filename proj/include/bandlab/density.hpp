#pragma once

#include <vector>

#include "bandlab/families.hpp"

namespace bandlab {

// Normalized count / normalized volume at scale R/L around xi:
// (#(Z(L) cap closed B(xi, R/L)) / k_L) / (vol(B) / vol(M)).
double local_ratio(const SpectralManifold& m, const TriangularFamily& family, double bandwidth,
                   const Point& xi, double radius_scale);

struct DensityCell {
  double bandwidth = 0.0;
  double radius_scale = 0.0;
  double min_ratio = 0.0;  // over probe centers
  double max_ratio = 0.0;
};

struct DensityReport {
  std::vector<double> bandwidths;
  std::vector<double> radius_scales;
  std::vector<DensityCell> grid;  // ordered by (L, R)
  // Finite surrogates of the Beurling-Landau limits: extrema over the two
  // largest R of extrema over the two largest L of extrema over centers.
  double lower_estimate = 0.0;  // D-
  double upper_estimate = 0.0;  // D+
  // Same surrogate taken R-first; identical for pure min/min and max/max
  // aggregation, recorded for transparency.
  double lower_estimate_r_first = 0.0;
  double upper_estimate_r_first = 0.0;
};

// Probe centers: the level's own points subsampled to <= 64, plus 64
// low-discrepancy points; pass extra_centers to extend the panel.
DensityReport density_estimate(const SpectralManifold& m, const TriangularFamily& family,
                               const std::vector<double>& bandwidths,
                               const std::vector<double>& radius_scales,
                               const std::vector<Point>& extra_centers = {});

}  // namespace bandlab
