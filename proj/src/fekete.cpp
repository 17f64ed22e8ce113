#include "bandlab/fekete.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>

#include "bandlab/kernels.hpp"
#include "bandlab/quadrature.hpp"
#include "bandlab/rng.hpp"

namespace bandlab {

namespace {

// Near-uniform deterministic candidate sets: seeded-jittered lattices.
// Aligned lattices are avoided on flat manifolds because their Fekete
// subsets degenerate to exact sublattices whose low-frequency moments
// vanish identically, masking the equidistribution trend; the jitter
// (bounded by a third of the spacing) keeps uniformity and separation
// while breaking the arithmetic alignment.
std::vector<Point> candidate_points(const SpectralManifold& m, int n, Rng& rng) {
  constexpr double kJitter = 0.35;
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(std::max(n, 0)));
  switch (m.kind()) {
    case ManifoldKind::circle: {
      for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5 + kJitter * rng.uniform(-1.0, 1.0)) / n;
        pts.push_back(m.canonical(Point{x}));
      }
      break;
    }
    case ManifoldKind::torus2: {
      const int g = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
      for (int i = 0; i < g && static_cast<int>(pts.size()) < n; ++i)
        for (int j = 0; j < g && static_cast<int>(pts.size()) < n; ++j)
          pts.push_back(m.canonical(Point{(i + 0.5 + kJitter * rng.uniform(-1.0, 1.0)) / g,
                                          (j + 0.5 + kJitter * rng.uniform(-1.0, 1.0)) / g}));
      break;
    }
    case ManifoldKind::sphere2:
      // the Fibonacci spiral is already free of lattice alignments
      return m.uniform_points(n, rng.uniform());
    case ManifoldKind::product: {
      const int na = std::max(2, static_cast<int>(std::round(std::pow(
                                     n, static_cast<double>(m.factor_a().dimension()) /
                                            m.dimension()))));
      const int nb = std::max(2, (n + na - 1) / na);
      const auto pa = candidate_points(m.factor_a(), na, rng);
      const auto pb = candidate_points(m.factor_b(), nb, rng);
      for (const auto& qa : pa)
        for (const auto& qb : pb) {
          if (static_cast<int>(pts.size()) >= n) break;
          Point p = qa;
          p.x.insert(p.x.end(), qb.x.begin(), qb.x.end());
          pts.push_back(std::move(p));
        }
      break;
    }
  }
  return pts;
}

}  // namespace

FeketeResult approximate_fekete(const SpectralManifold& m, double bandwidth,
                                const FeketeOptions& options) {
  const EigenBasis basis(m, bandwidth);
  const int k = basis.size();

  std::vector<Point> candidates = options.candidates;
  std::string descriptor;
  if (candidates.empty()) {
    const int n = std::max(options.candidate_count, 4 * k);
    Rng rng(options.seed);
    candidates = candidate_points(m, n, rng);
    descriptor = "jittered(" + std::to_string(candidates.size()) + ",seed=" +
                 std::to_string(options.seed) + ")";
  } else {
    descriptor = "explicit(" + std::to_string(candidates.size()) + ")";
  }
  const int n = static_cast<int>(candidates.size());
  if (n < k)
    throw enlarge_candidates_error("candidate set smaller than the space dimension");

  const Eigen::MatrixXd phi = basis.evaluate_matrix(candidates);  // n x k

  // Stage 1: row selection by column-pivoted QR of phi^T.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(phi.transpose());
  std::vector<int> selected(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) selected[static_cast<std::size_t>(i)] = qr.colsPermutation().indices()[i];
  if (qr.rank() < k)
    throw enlarge_candidates_error(
        "greedy start is rank-deficient (rank " + std::to_string(qr.rank()) + " of " +
        std::to_string(k) + "); enlarge the candidate set");

  Eigen::MatrixXd v(k, k);  // rows = phi(x_j)
  for (int j = 0; j < k; ++j) v.row(j) = phi.row(selected[static_cast<std::size_t>(j)]);

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(v);
  double log_det = 0.0;
  for (int i = 0; i < k; ++i) log_det += std::log(std::fabs(lu.matrixLU()(i, i)));
  Eigen::MatrixXd vinv = lu.inverse();
  Eigen::MatrixXd lag = phi * vinv;  // lag(c, j) = l_j(candidate c)

  // Stage 2: exchange. Replacing node j by candidate c scales |det| by
  // |lag(c, j)| (rank-one update); accept the best candidate per node.
  int swaps = 0;
  constexpr double kGainTol = 1e-10;
  for (int round = 0; round < options.exchange_rounds; ++round) {
    bool changed = false;
    for (int j = 0; j < k; ++j) {
      int best_c = -1;
      double best_abs = 1.0;
      for (int c = 0; c < n; ++c) {
        const double a = std::fabs(lag(c, j));
        if (a > best_abs) {
          best_abs = a;
          best_c = c;
        }
      }
      if (best_c < 0 || std::log(best_abs) <= kGainTol) continue;
      // Sherman-Morrison update of V^{-1} through the Lagrange matrix;
      // copies first, the update reads its own row and column.
      const double pivot = lag(best_c, j);
      const Eigen::VectorXd col_j = lag.col(j);
      Eigen::RowVectorXd row_update = lag.row(best_c);
      row_update(j) -= 1.0;
      lag.noalias() -= col_j * (row_update / pivot);
      v.row(j) = phi.row(best_c);
      selected[static_cast<std::size_t>(j)] = best_c;
      log_det += std::log(best_abs);
      ++swaps;
      changed = true;
      if (swaps % 32 == 0) {  // refresh against drift
        vinv = v.partialPivLu().inverse();
        lag = phi * vinv;
      }
    }
    if (!changed) break;
  }

  FeketeResult result;
  result.bandwidth = bandwidth;
  result.nodes.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) result.nodes.push_back(candidates[static_cast<std::size_t>(selected[static_cast<std::size_t>(j)])]);
  result.log_abs_det = log_det;
  result.candidate_descriptor = descriptor;
  result.exchange_swaps = swaps;

  double dmin = kSeparationInfinite;
  for (std::size_t i = 0; i < result.nodes.size(); ++i)
    for (std::size_t j = i + 1; j < result.nodes.size(); ++j)
      dmin = std::min(dmin, m.distance(result.nodes[i], result.nodes[j]));
  result.separation = result.nodes.size() > 1 ? bandwidth * dmin : kSeparationInfinite;

  lag = phi * v.partialPivLu().inverse();
  result.lagrange_sup = lag.cwiseAbs().maxCoeff();
  return result;
}

LagrangeEvaluator::LagrangeEvaluator(const SpectralManifold& m, double bandwidth,
                                     const std::vector<Point>& nodes)
    : basis_(m, bandwidth) {
  if (static_cast<int>(nodes.size()) != basis_.size())
    throw config_error("Lagrange functions need exactly k_L nodes");
  const Eigen::MatrixXd v = basis_.evaluate_matrix(nodes);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(v);
  if (!lu.isInvertible())
    throw singular_configuration_error("Lagrange evaluation: singular Vandermonde");
  inverse_transpose_ = lu.inverse().transpose();
}

double LagrangeEvaluator::operator()(int i, const Point& z) const {
  return inverse_transpose_.row(i).dot(basis_.evaluate_all(z));
}

Eigen::VectorXd LagrangeEvaluator::all(const Point& z) const {
  return inverse_transpose_ * basis_.evaluate_all(z);
}

double lagrange_eval(const SpectralManifold& m, const FeketeResult& fekete, int i,
                     const Point& z) {
  return LagrangeEvaluator(m, fekete.bandwidth, fekete.nodes)(i, z);
}

WeightedKernel::WeightedKernel(const SpectralManifold& m, double bandwidth, double eps,
                               double c_prod, double cutoff_eps)
    : basis_(m, [&] {
        const double reduced = bandwidth * eps / c_prod;
        if (reduced < 1.0)
          throw bandwidth_too_small_error("weighted kernel bandwidth L*eps/C = " +
                                          std::to_string(reduced) + " < 1");
        return reduced;
      }()) {
  weights_ = filter_weights(basis_, KernelSpec::smooth(cutoff_eps));
}

double WeightedKernel::operator()(const Point& z, const Point& w) const {
  const Eigen::VectorXd vz = basis_.evaluate_all(z);
  const Eigen::VectorXd vw = basis_.evaluate_all(w);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < basis_.size(); ++i) {
    num += weights_[i] * vz[i] * vw[i];
    den += weights_[i] * vz[i] * vz[i];
  }
  return num / den;
}

double weighted_kernel(const SpectralManifold& m, double bandwidth, double eps, double c_prod,
                       const Point& z, const Point& w) {
  return WeightedKernel(m, bandwidth, eps, c_prod)(z, w);
}

DilatedCheck dilated_family_check(const SpectralManifold& m, const TriangularFamily& fekete_family,
                                  const std::vector<double>& bandwidths, double eps) {
  DilatedCheck out;
  for (double L : bandwidths) {
    const double up = std::floor((1.0 + eps) * L);
    const double down = std::floor((1.0 - eps) * L);
    const EigenBasis basis(m, L);
    out.mz_side.push_back(frame_bounds(basis, fekete_family.at(up)));
    out.interpolation_side.push_back(riesz_bounds(basis, fekete_family.at(down)));
  }
  return out;
}

CapPanel default_cap_panel(const SpectralManifold& m) {
  CapPanel panel;
  panel.centers = m.low_discrepancy_points(16);
  const double rmax = m.max_ball_radius();
  panel.radii = {0.1 * rmax, 0.2 * rmax, 0.4 * rmax, 0.8 * rmax};
  return panel;
}

EquidistReport equidistribution_test(const SpectralManifold& m, const TriangularFamily& family,
                                     const std::vector<double>& bandwidths, const CapPanel& caps,
                                     int moment_functions) {
  const CapPanel panel = caps.centers.empty() ? default_cap_panel(m) : caps;

  // Fixed low-bandwidth panel functions, independent of L: nonconstant
  // eigenfunctions have exact volume mean zero.
  double panel_bandwidth = 8.0;
  std::unique_ptr<EigenBasis> panel_basis;
  for (;;) {
    panel_basis = std::make_unique<EigenBasis>(m, panel_bandwidth);
    if (panel_basis->size() > 1) break;
    panel_bandwidth *= 2.0;
  }
  const int nf = std::min(moment_functions, panel_basis->size() - 1);

  EquidistReport report;
  for (double L : bandwidths) {
    const auto& pts = family.at(L);
    const int k = eigenspace_dimension(m, L);
    EquidistLevel level;
    level.bandwidth = L;
    level.mass_error = std::fabs(static_cast<double>(pts.size()) / k - 1.0);

    for (const Point& xi : panel.centers)
      for (double r : panel.radii) {
        int count = 0;
        for (const Point& z : pts)
          if (m.distance(z, xi) <= r) ++count;
        const double mu = static_cast<double>(count) / k;
        const double sigma = m.ball_volume(r) / m.volume();
        level.cap_discrepancy = std::max(level.cap_discrepancy, std::fabs(mu - sigma));
      }

    for (int f = 1; f <= nf; ++f) {
      double mean = 0.0;
      for (const Point& z : pts) mean += panel_basis->evaluate(f, z);
      level.moment_errors.push_back(std::fabs(mean / k));
    }
    report.levels.push_back(std::move(level));
  }
  return report;
}

ProductPropertyResult product_property_check(const SpectralManifold& m, double bandwidth,
                                             double eps, const std::vector<double>& c_grid,
                                             unsigned seed) {
  std::vector<double> grid = c_grid;
  if (grid.empty())
    for (int i = 0; i <= 80; ++i) grid.push_back(i / 16.0);
  std::sort(grid.begin(), grid.end());

  const EigenBasis basis_f(m, bandwidth);
  const EigenBasis basis_g(m, std::max(1.0, eps * bandwidth));
  const EigenBasis expansion(m, 3.0 * bandwidth);
  const QuadratureRule rule = global_quadrature(m, 2.5 * bandwidth);

  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(),
                                            static_cast<Eigen::Index>(rule.weights.size()));
  const Eigen::MatrixXd phi_exp = expansion.evaluate_matrix(rule.nodes);
  const Eigen::MatrixXd phi_f = basis_f.evaluate_matrix(rule.nodes);
  const Eigen::MatrixXd phi_g = basis_g.evaluate_matrix(rule.nodes);

  Rng rng(seed);
  const int trials = 3;
  // worst-case residual energy beyond each candidate bandwidth, over trials
  std::vector<double> residual(grid.size(), 0.0);
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd cf(basis_f.size()), cg(basis_g.size());
    for (int i = 0; i < cf.size(); ++i) cf[i] = rng.normal();
    for (int i = 0; i < cg.size(); ++i) cg[i] = rng.normal();
    const Eigen::VectorXd h = (phi_f * cf).cwiseProduct(phi_g * cg);
    const Eigen::VectorXd coeff = phi_exp.transpose() * (w.asDiagonal() * h);
    const double total = coeff.squaredNorm();
    for (std::size_t ci = 0; ci < grid.size(); ++ci) {
      const double limit = bandwidth * (1.0 + grid[ci] * eps);
      double outside = 0.0;
      for (int i = 0; i < expansion.size(); ++i)
        if (expansion.frequency(i) > limit) outside += coeff[i] * coeff[i];
      residual[ci] = std::max(residual[ci], outside / total);
    }
  }

  ProductPropertyResult out;
  out.constant = kSeparationInfinite;
  for (std::size_t ci = 0; ci < grid.size(); ++ci) {
    out.residual_per_constant.emplace_back(grid[ci], residual[ci]);
    if (out.constant == kSeparationInfinite && residual[ci] < 1e-10) {
      out.constant = grid[ci];
      out.residual_at_constant = residual[ci];
    }
  }
  return out;
}

}  // namespace bandlab
