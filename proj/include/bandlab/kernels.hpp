#pragma once

#include <Eigen/Core>
#include <vector>

#include "bandlab/basis.hpp"
#include "bandlab/quadrature.hpp"

namespace bandlab {

// C-infinity cutoff: 1 on [0, 1-eps], 0 on [1, inf), strictly decreasing
// in between. Realized as s((1-x)/eps) with the exp(-1/t) smoothstep.
double smooth_cutoff(double eps, double x);

enum class SpectralFilter { sharp, bochner_riesz, smooth, smooth_squared };

// Which spectral multiplier h(lambda/L) defines a kernel
// sum_i h(lambda_i/L) phi_i(z) phi_i(w).
struct KernelSpec {
  SpectralFilter filter = SpectralFilter::sharp;
  int order = 0;      // Bochner-Riesz exponent N
  double eps = 0.0;   // smooth cutoff width

  static KernelSpec sharp() { return {SpectralFilter::sharp, 0, 0.0}; }
  static KernelSpec bochner_riesz(int n) { return {SpectralFilter::bochner_riesz, n, 0.0}; }
  static KernelSpec smooth(double eps) { return {SpectralFilter::smooth, 0, eps}; }
  static KernelSpec smooth_squared(double eps) { return {SpectralFilter::smooth_squared, 0, eps}; }

  double weight(double x) const;
};

// Multiplier values h(lambda_i / L) for every basis mode.
Eigen::VectorXd filter_weights(const EigenBasis& basis, const KernelSpec& spec);

double kernel_value(const EigenBasis& basis, const KernelSpec& spec, const Point& z,
                    const Point& w);

// <f, K_L(z, .)> by quadrature for f given by basis coefficients; equals
// the direct evaluation of f at z when the rule is exact.
double reproduce(const EigenBasis& basis, const QuadratureRule& rule,
                 const Eigen::VectorXd& coefficients, const Point& z);

// Fit of |kernel(z,w)| (1 + L d)^N / L^m over a deterministic probe set.
struct DecayFit {
  int order = 0;
  double fitted_constant = 0.0;                    // max over bandwidths
  std::vector<std::pair<double, double>> per_bandwidth;  // (L, C_N(L))
};

DecayFit decay_fit(const SpectralManifold& m, const KernelSpec& spec,
                   const std::vector<double>& bandwidths, int order);

// Probe pairs used by decay_fit, exposed for the CLI's kernel CSV.
std::vector<std::pair<Point, Point>> decay_probe_pairs(const SpectralManifold& m);

// max over random f in E_L of ||grad f||_inf / (L ||f||_inf), gradients by
// central differences in the chart. Supports circle, torus2, sphere2.
double bernstein_ratio(const SpectralManifold& m, double bandwidth, int trials,
                       unsigned seed = 42);

}  // namespace bandlab
