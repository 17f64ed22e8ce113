#include "bandlab/concentration.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "bandlab/kernels.hpp"

namespace bandlab {

namespace {

constexpr double kEigenTol = 1e-8;

Eigen::VectorXd cutoff_weights(const EigenBasis& basis, double eps) {
  Eigen::VectorXd beta(basis.size());
  for (int i = 0; i < basis.size(); ++i)
    beta[i] = eps == 0.0 ? 1.0 : smooth_cutoff(eps, basis.frequency(i) / basis.bandwidth());
  return beta;
}

}  // namespace

Eigen::MatrixXd classical_matrix(const EigenBasis& basis, const Point& center, double r) {
  const QuadratureRule rule = ball_quadrature(basis.manifold(), center, r);
  const Eigen::MatrixXd phi = basis.evaluate_matrix(rule.nodes);
  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(),
                                            static_cast<Eigen::Index>(rule.weights.size()));
  const Eigen::MatrixXd sphi = w.array().sqrt().matrix().asDiagonal() * phi;
  Eigen::MatrixXd d(basis.size(), basis.size());
  d.setZero();
  d.selfadjointView<Eigen::Lower>().rankUpdate(sphi.transpose(), 1.0);
  d.triangularView<Eigen::StrictlyUpper>() = d.transpose();
  return d;
}

Eigen::MatrixXd modified_matrix(const EigenBasis& basis, double eps, const Point& center,
                                double r) {
  const Eigen::VectorXd beta = cutoff_weights(basis, eps);
  const Eigen::MatrixXd d = classical_matrix(basis, center, r);
  return beta.asDiagonal() * d * beta.asDiagonal();
}

int ConcentrationSpectrum::count_above(double gamma) const {
  int n = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues[i] > gamma) ++n;
  return n;
}

int ConcentrationSpectrum::count_at_least(double delta) const {
  int n = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues[i] >= delta) ++n;
  return n;
}

ConcentrationSpectrum spectrum(const Eigen::MatrixXd& matrix) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix, Eigen::EigenvaluesOnly);
  ConcentrationSpectrum out;
  out.eigenvalues = es.eigenvalues().reverse();
  const double lo = out.eigenvalues.minCoeff();
  const double hi = out.eigenvalues.maxCoeff();
  if (lo < -kEigenTol || hi > 1.0 + kEigenTol)
    throw numerical_integrity_error("concentration eigenvalue outside [0,1]: [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
  out.trace = out.eigenvalues.sum();
  out.trace_sq = out.eigenvalues.squaredNorm();
  return out;
}

TraceIdentities trace_identities(const EigenBasis& basis, double eps, const Point& center,
                                 double r) {
  TraceIdentities out;
  const Eigen::MatrixXd t = modified_matrix(basis, eps, center, r);
  out.t1_matrix = t.trace();
  out.t2_matrix = t.squaredNorm();  // tr(T T) = ||T||_F^2 for symmetric T

  // kernel side: Btilde has multiplier alpha = beta^2
  const Eigen::VectorXd beta = cutoff_weights(basis, eps);
  const Eigen::VectorXd alpha = beta.array().square();

  const QuadratureRule diag_rule = ball_quadrature(basis.manifold(), center, r);
  double t1 = 0.0;
  for (std::size_t q = 0; q < diag_rule.nodes.size(); ++q) {
    const Eigen::VectorXd v = basis.evaluate_all(diag_rule.nodes[q]);
    t1 += diag_rule.weights[q] * v.dot(alpha.asDiagonal() * v);
  }
  out.t1_kernel = t1;

  // double integral of |Btilde(z,w)|^2 over A x A at reduced resolution
  const QuadratureRule rule = ball_quadrature(basis.manifold(), center, r, 32, 64);
  const Eigen::MatrixXd phi = basis.evaluate_matrix(rule.nodes);
  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(),
                                            static_cast<Eigen::Index>(rule.weights.size()));
  const Eigen::MatrixXd a =
      w.array().sqrt().matrix().asDiagonal() * phi * alpha.array().sqrt().matrix().asDiagonal();
  out.t2_kernel = (a.transpose() * a).squaredNorm();
  return out;
}

PlateauReport plateau_scan(const SpectralManifold& m, const TriangularFamily* family,
                           const std::vector<double>& bandwidths,
                           const std::vector<double>& radius_scales, double eps,
                           const std::vector<double>& thresholds,
                           const PlateauOptions& options) {
  PlateauReport report;
  report.eps = eps;
  report.dilation = options.dilation;
  report.thresholds = thresholds;
  const Point xi = options.center ? *options.center : default_center(m);

  double t_width = options.annulus_width;
  if (t_width <= 0.0 && family != nullptr) {
    const SeparationReport sep = separation_report(m, *family);
    const double s = sep.min_separation();
    t_width = (s > 0.0 && std::isfinite(s)) ? 3.0 / s : 3.0;
  }
  report.annulus_width = t_width;

  for (double L : bandwidths) {
    const EigenBasis basis(m, L);
    double growth_acc = 0.0, growth_min = kSeparationInfinite, growth_max = 0.0;
    for (double R : radius_scales) {
      const double r = R / L;
      PlateauCell cell;
      cell.bandwidth = L;
      cell.radius_scale = R;
      const ConcentrationSpectrum sp = spectrum(modified_matrix(basis, eps, xi, r));
      cell.t1 = sp.trace;
      cell.t2 = sp.trace_sq;
      cell.trace_ratio = sp.trace / (basis.size() * m.ball_volume(r) / m.volume());
      for (double g : thresholds) cell.counts.push_back(sp.count_above(g));

      if (family != nullptr && family->has(L)) {
        const auto& pts = family->at(L);
        const double r_out = (R + t_width) / L;
        const double r_in = (R - t_width) / L;
        int outer = 0, inner = 0;
        for (const Point& z : pts) {
          const double d = m.distance(z, xi);
          if (d <= r_out) ++outer;
          if (r_in > 0.0 && d <= r_in) ++inner;
        }
        cell.family_outer = outer;
        cell.family_inner = r_in > 0.0 ? inner : 0;
        const EigenBasis dilated(m, L * (1.0 + options.dilation));
        const ConcentrationSpectrum spd = spectrum(modified_matrix(dilated, eps, xi, r));
        for (double g : thresholds) cell.dilated_counts.push_back(spd.count_at_least(g));
      }

      const double growth =
          (cell.t1 - cell.t2) / std::pow(R, static_cast<double>(m.dimension() - 1));
      growth_acc += growth;
      growth_min = std::min(growth_min, growth);
      growth_max = std::max(growth_max, growth);
      report.cells.push_back(std::move(cell));
    }
    report.growth_per_bandwidth.emplace_back(L, growth_acc / radius_scales.size());
    if (growth_min > 0.0)
      report.growth_spread = std::max(report.growth_spread, growth_max / growth_min);
  }
  return report;
}

}  // namespace bandlab
