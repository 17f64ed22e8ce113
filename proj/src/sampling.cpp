#include "bandlab/sampling.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace bandlab {

FrameBoundsEntry frame_bounds(const EigenBasis& basis, const std::vector<Point>& pts) {
  FrameBoundsEntry entry;
  entry.bandwidth = basis.bandwidth();
  entry.dimension = basis.size();
  entry.m_points = static_cast<int>(pts.size());
  const Eigen::MatrixXd phi = basis.evaluate_matrix(pts);  // m x k
  Eigen::MatrixXd gram(basis.size(), basis.size());
  gram.setZero();
  gram.selfadjointView<Eigen::Lower>().rankUpdate(phi.transpose(), 1.0 / basis.size());
  gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  entry.lower = std::max(0.0, es.eigenvalues().minCoeff());
  entry.upper = es.eigenvalues().maxCoeff();
  return entry;
}

namespace {

// Kernel Gram G_{jk} = K_L(z_j, z_k), exactly symmetric.
Eigen::MatrixXd kernel_gram(const EigenBasis& basis, const std::vector<Point>& pts) {
  const Eigen::MatrixXd phi = basis.evaluate_matrix(pts);
  Eigen::MatrixXd g(phi.rows(), phi.rows());
  g.setZero();
  g.selfadjointView<Eigen::Lower>().rankUpdate(phi, 1.0);
  g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
  return g;
}

}  // namespace

RieszBoundsEntry riesz_bounds(const EigenBasis& basis, const std::vector<Point>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (basis.manifold().distance(pts[i], pts[j]) == 0.0)
        throw singular_configuration_error("riesz_bounds: duplicate points in the family");
  RieszBoundsEntry entry;
  entry.bandwidth = basis.bandwidth();
  entry.m_points = static_cast<int>(pts.size());
  Eigen::MatrixXd g = kernel_gram(basis, pts);
  Eigen::VectorXd d = g.diagonal().array().sqrt().inverse();
  g = d.asDiagonal() * g * d.asDiagonal();
  g.diagonal().setOnes();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  entry.lower = std::max(0.0, es.eigenvalues().minCoeff());
  entry.upper = es.eigenvalues().maxCoeff();
  return entry;
}

double plancherel_polya_bound(const EigenBasis& basis, const std::vector<Point>& pts) {
  return frame_bounds(basis, pts).upper;
}

Interpolant min_norm_interpolant(const EigenBasis& basis, const std::vector<Point>& pts,
                                 const Eigen::VectorXd& values) {
  if (static_cast<std::size_t>(values.size()) != pts.size())
    throw config_error("min_norm_interpolant: values/points size mismatch");
  const Eigen::MatrixXd g = kernel_gram(basis, pts);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double cutoff = 1e-10 * std::max(ev.maxCoeff(), 0.0);

  Interpolant out;
  out.degenerate = ev.minCoeff() <= cutoff;
  Eigen::VectorXd y = es.eigenvectors().transpose() * values;
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = ev[i] > cutoff ? y[i] / ev[i] : 0.0;
  out.coefficients = es.eigenvectors() * y;
  out.residual = (g * out.coefficients - values).cwiseAbs().maxCoeff();
  out.norm_sq = out.coefficients.dot(g * out.coefficients);
  return out;
}

double FamilyBounds::frame_spread() const {
  double lo = kSeparationInfinite, hi = 0.0;
  for (const auto& e : frame) {
    if (e.lower <= 0.0) return kSeparationInfinite;
    lo = std::min(lo, e.condition());
    hi = std::max(hi, e.condition());
  }
  return frame.empty() ? kSeparationInfinite : hi / lo;
}

bool FamilyBounds::empirically_mz(double spread_factor) const {
  if (frame.empty()) return false;
  for (const auto& e : frame)
    if (e.lower <= 0.0) return false;
  return frame_spread() <= spread_factor;
}

FamilyBounds family_bounds(const SpectralManifold& m, const TriangularFamily& family,
                           bool with_riesz) {
  FamilyBounds out;
  for (std::size_t li = 0; li < family.levels.size(); ++li) {
    const EigenBasis basis(m, family.levels[li]);
    out.frame.push_back(frame_bounds(basis, family.points[li]));
    if (with_riesz) out.riesz.push_back(riesz_bounds(basis, family.points[li]));
  }
  return out;
}

}  // namespace bandlab
