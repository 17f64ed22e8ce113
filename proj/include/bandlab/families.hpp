#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "bandlab/manifold.hpp"

namespace bandlab {

// An L-indexed collection of finite point sets Z(L).
struct TriangularFamily {
  std::vector<double> levels;                // sorted ascending
  std::vector<std::vector<Point>> points;    // parallel to levels
  std::string provenance = "loaded";         // grid | random | perturbed | fekete | loaded

  const std::vector<Point>& at(double bandwidth) const;
  bool has(double bandwidth) const;
  void add(double bandwidth, std::vector<Point> pts);
};

struct LevelSeparation {
  double bandwidth = 0.0;
  int m_points = 0;
  int dimension = 0;  // k_L
  double separation = 0.0;   // s(L) = L * min pairwise distance; +inf for single point
  double mesh = 0.0;         // eta(L) = L * sup_xi d(xi, Z(L)), probe-grid estimate
};

struct SeparationReport {
  std::vector<LevelSeparation> levels;
  double min_separation() const;
  double max_mesh() const;
};

// torus2: ceil(nu L) x ceil(nu L) lattice; sphere2: Fibonacci spiral of
// ceil((nu L)^2) points; circle: ceil(nu L) uniform points; products:
// tensor grids of the factors.
TriangularFamily make_grid_family(const SpectralManifold& m, const std::vector<double>& bandwidths,
                                  double oversampling);

SeparationReport separation_report(const SpectralManifold& m, const TriangularFamily& family);

// Greedy first-fit pass in index order: keeps a point iff it lies at
// distance >= target_s / L from every kept point. Every discarded point
// is within target_s / L of a kept one.
TriangularFamily extract_separated_subfamily(const SpectralManifold& m,
                                             const TriangularFamily& family, double target_s);

// Moves each point independently, uniformly in the geodesic ball of
// radius delta / L. Deterministic for a fixed seed.
TriangularFamily perturb_family(const SpectralManifold& m, const TriangularFamily& family,
                                double delta, unsigned seed);

// File format: one line per point, "L j coord1 coord2 ...", sorted by (L, j).
void write_family(std::ostream& os, const TriangularFamily& family);
TriangularFamily read_family(std::istream& is);

constexpr double kSeparationInfinite = std::numeric_limits<double>::infinity();

}  // namespace bandlab
