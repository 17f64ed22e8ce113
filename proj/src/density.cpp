#include "bandlab/density.hpp"

#include <algorithm>
#include <cmath>

#include "bandlab/basis.hpp"

namespace bandlab {

double local_ratio(const SpectralManifold& m, const TriangularFamily& family, double bandwidth,
                   const Point& xi, double radius_scale) {
  const double r = radius_scale / bandwidth;
  const double vol_ratio = m.ball_volume(r) / m.volume();
  const auto& pts = family.at(bandwidth);
  int count = 0;
  for (const Point& z : pts)
    if (m.distance(z, xi) <= r) ++count;  // closed ball
  const int dim = eigenspace_dimension(m, bandwidth);
  return (static_cast<double>(count) / dim) / vol_ratio;
}

namespace {

std::vector<Point> probe_centers(const SpectralManifold& m, const std::vector<Point>& level_pts,
                                 const std::vector<Point>& extra) {
  std::vector<Point> centers;
  const std::size_t stride = std::max<std::size_t>(1, level_pts.size() / 64);
  for (std::size_t i = 0; i < level_pts.size() && centers.size() < 64; i += stride)
    centers.push_back(level_pts[i]);
  for (const Point& p : m.low_discrepancy_points(64)) centers.push_back(p);
  centers.insert(centers.end(), extra.begin(), extra.end());
  return centers;
}

}  // namespace

DensityReport density_estimate(const SpectralManifold& m, const TriangularFamily& family,
                               const std::vector<double>& bandwidths,
                               const std::vector<double>& radius_scales,
                               const std::vector<Point>& extra_centers) {
  if (bandwidths.empty() || radius_scales.empty())
    throw config_error("density_estimate: empty grids");
  DensityReport report;
  report.bandwidths = bandwidths;
  report.radius_scales = radius_scales;
  std::sort(report.bandwidths.begin(), report.bandwidths.end());
  std::sort(report.radius_scales.begin(), report.radius_scales.end());

  for (double L : report.bandwidths) {
    const auto& pts = family.at(L);
    const auto centers = probe_centers(m, pts, extra_centers);
    for (double R : report.radius_scales) {
      DensityCell cell;
      cell.bandwidth = L;
      cell.radius_scale = R;
      cell.min_ratio = kSeparationInfinite;
      for (const Point& xi : centers) {
        const double rho = local_ratio(m, family, L, xi, R);
        cell.min_ratio = std::min(cell.min_ratio, rho);
        cell.max_ratio = std::max(cell.max_ratio, rho);
      }
      report.grid.push_back(cell);
    }
  }

  // tail = the two largest values of each grid axis
  const std::size_t nl = report.bandwidths.size();
  const std::size_t nr = report.radius_scales.size();
  const std::size_t l_tail = nl >= 2 ? nl - 2 : 0;
  const std::size_t r_tail = nr >= 2 ? nr - 2 : 0;
  double dminus = kSeparationInfinite, dplus = 0.0;
  for (std::size_t li = l_tail; li < nl; ++li)
    for (std::size_t ri = r_tail; ri < nr; ++ri) {
      const DensityCell& cell = report.grid[li * nr + ri];
      dminus = std::min(dminus, cell.min_ratio);
      dplus = std::max(dplus, cell.max_ratio);
    }
  report.lower_estimate = dminus;
  report.upper_estimate = dplus;
  // min/min and max/max aggregations commute across the two axes
  report.lower_estimate_r_first = dminus;
  report.upper_estimate_r_first = dplus;
  return report;
}

}  // namespace bandlab
