#include "bandlab/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "bandlab/rng.hpp"

namespace bandlab {

namespace {

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// Smoothstep: 0 for t <= 0, 1 for t >= 1, C-infinity monotone in between.
double smoothstep(double t) {
  const double a = bump(t);
  const double b = bump(1.0 - t);
  return a / (a + b);
}

}  // namespace

double smooth_cutoff(double eps, double x) {
  if (x >= 1.0) return 0.0;
  if (x <= 1.0 - eps) return 1.0;
  return smoothstep((1.0 - x) / eps);
}

double KernelSpec::weight(double x) const {
  switch (filter) {
    case SpectralFilter::sharp:
      return x <= 1.0 ? 1.0 : 0.0;
    case SpectralFilter::bochner_riesz:
      return x <= 1.0 ? std::pow(1.0 - x, order) : 0.0;
    case SpectralFilter::smooth:
      return smooth_cutoff(eps, x);
    case SpectralFilter::smooth_squared: {
      const double b = smooth_cutoff(eps, x);
      return b * b;
    }
  }
  return 0.0;
}

Eigen::VectorXd filter_weights(const EigenBasis& basis, const KernelSpec& spec) {
  Eigen::VectorXd h(basis.size());
  for (int i = 0; i < basis.size(); ++i) h[i] = spec.weight(basis.frequency(i) / basis.bandwidth());
  return h;
}

double kernel_value(const EigenBasis& basis, const KernelSpec& spec, const Point& z,
                    const Point& w) {
  const Eigen::VectorXd h = filter_weights(basis, spec);
  const Eigen::VectorXd vz = basis.evaluate_all(z);
  const Eigen::VectorXd vw = basis.evaluate_all(w);
  // fixed summation order and commutative per-term products, so
  // kernel_value(z, w) == kernel_value(w, z) exactly
  double acc = 0.0;
  for (int i = 0; i < basis.size(); ++i) acc += h[i] * (vz[i] * vw[i]);
  return acc;
}

double reproduce(const EigenBasis& basis, const QuadratureRule& rule,
                 const Eigen::VectorXd& coefficients, const Point& z) {
  const Eigen::VectorXd kz = basis.evaluate_all(z);  // sharp filter: K_L(z,.)
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const Eigen::VectorXd vq = basis.evaluate_all(rule.nodes[q]);
    acc += rule.weights[q] * coefficients.dot(vq) * kz.dot(vq);
  }
  return acc;
}

std::vector<std::pair<Point, Point>> decay_probe_pairs(const SpectralManifold& m) {
  std::vector<std::pair<Point, Point>> pairs;
  const double diam = m.diameter();
  // dense enough in distance to resolve kernel oscillations up to L ~ 100
  const int n_dist = 256;
  std::vector<double> dists{0.0};
  for (int j = 1; j <= n_dist; ++j)
    dists.push_back(diam * std::pow(static_cast<double>(j) / n_dist, 1.5));

  switch (m.kind()) {
    case ManifoldKind::circle: {
      for (double base : {0.0, 0.37}) {
        const Point z{base};
        for (double d : dists) pairs.emplace_back(z, m.canonical(Point{base + d}));
      }
      break;
    }
    case ManifoldKind::torus2: {
      // directions chosen away from lattice resonances (the exact corner
      // and half-period offsets carry structured cancellations)
      const double dirs[4][2] = {{1, 0}, {0, 1}, {std::cos(1.0), std::sin(1.0)},
                                 {std::cos(2.4), std::sin(2.4)}};
      for (double base : {0.0, 0.31}) {
        const Point z{base, base * 0.7};
        for (const auto& dir : dirs)
          for (double d : dists) {
            const double dd = 0.97 * d;
            pairs.emplace_back(z, m.canonical(Point{z.x[0] + dd * dir[0], z.x[1] + dd * dir[1]}));
          }
      }
      break;
    }
    case ManifoldKind::sphere2: {
      // zonal kernels: sweep colatitude from two base azimuths
      for (double phi : {0.0, 1.1}) {
        const Point z{0.0, 0.0};
        for (double d : dists) pairs.emplace_back(z, Point{d, phi});
      }
      break;
    }
    case ManifoldKind::product: {
      const auto pa = decay_probe_pairs(m.factor_a());
      const auto pb = decay_probe_pairs(m.factor_b());
      // diagonal pairing keeps the probe count linear
      const std::size_t n = std::min(pa.size(), pb.size());
      for (std::size_t i = 0; i < n; ++i) {
        Point z = pa[i].first, w = pa[i].second;
        z.x.insert(z.x.end(), pb[i].first.x.begin(), pb[i].first.x.end());
        w.x.insert(w.x.end(), pb[i].second.x.begin(), pb[i].second.x.end());
        pairs.emplace_back(std::move(z), std::move(w));
      }
      break;
    }
  }
  return pairs;
}

DecayFit decay_fit(const SpectralManifold& m, const KernelSpec& spec,
                   const std::vector<double>& bandwidths, int order) {
  DecayFit fit;
  fit.order = order;
  const auto pairs = decay_probe_pairs(m);
  for (double L : bandwidths) {
    const EigenBasis basis(m, L);
    const Eigen::VectorXd h = filter_weights(basis, spec);
    double cmax = 0.0;
    for (const auto& [z, w] : pairs) {
      const Eigen::VectorXd vz = basis.evaluate_all(z);
      const Eigen::VectorXd vw = basis.evaluate_all(w);
      double k = 0.0;
      for (int i = 0; i < basis.size(); ++i) k += h[i] * vz[i] * vw[i];
      const double d = m.distance(z, w);
      const double ratio = std::fabs(k) * std::pow(1.0 + L * d, order) / std::pow(L, m.dimension());
      cmax = std::max(cmax, ratio);
    }
    fit.per_bandwidth.emplace_back(L, cmax);
    fit.fitted_constant = std::max(fit.fitted_constant, cmax);
  }
  return fit;
}

namespace {

// Chart gradient norm by central differences; on the sphere the azimuthal
// derivative carries the 1/sin(theta) metric factor.
double gradient_norm(const SpectralManifold& m, const EigenBasis& basis,
                     const Eigen::VectorXd& coeff, const Point& z, double step) {
  double acc = 0.0;
  for (int d = 0; d < m.chart_dimension(); ++d) {
    Point zp = z, zm = z;
    zp.x[static_cast<std::size_t>(d)] += step;
    zm.x[static_cast<std::size_t>(d)] -= step;
    double g = (coeff.dot(basis.evaluate_all(zp)) - coeff.dot(basis.evaluate_all(zm))) / (2.0 * step);
    if (m.kind() == ManifoldKind::sphere2 && d == 1) g /= std::sin(z.x[0]);
    acc += g * g;
  }
  return std::sqrt(acc);
}

std::vector<Point> bernstein_probe_grid(const SpectralManifold& m, double L) {
  switch (m.kind()) {
    case ManifoldKind::circle: {
      const int n = std::max(24, static_cast<int>(std::ceil(1.5 * L)));
      return m.uniform_points(n);
    }
    case ManifoldKind::torus2: {
      const int g = std::max(16, static_cast<int>(std::ceil(1.5 * L)));
      return m.uniform_points(g * g);
    }
    case ManifoldKind::sphere2: {
      const int n = std::max(256, static_cast<int>(std::ceil(2.0 * L * L)));
      auto pts = m.uniform_points(n);
      // keep clear of the poles where the chart degenerates
      std::erase_if(pts, [](const Point& p) { return std::sin(p.x[0]) < 0.05; });
      return pts;
    }
    default:
      throw unimplemented_manifold_error("bernstein_ratio: unsupported manifold " + m.name());
  }
}

}  // namespace

double bernstein_ratio(const SpectralManifold& m, double bandwidth, int trials, unsigned seed) {
  const EigenBasis basis(m, bandwidth);
  const auto grid = bernstein_probe_grid(m, bandwidth);
  const double step = 1e-5;
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd coeff(basis.size());
    for (int i = 0; i < basis.size(); ++i) coeff[i] = rng.normal();
    double sup_f = 0.0, sup_g = 0.0;
    for (const Point& z : grid) {
      sup_f = std::max(sup_f, std::fabs(coeff.dot(basis.evaluate_all(z))));
      sup_g = std::max(sup_g, gradient_norm(m, basis, coeff, z, step));
    }
    if (sup_f > 0.0) worst = std::max(worst, sup_g / (bandwidth * sup_f));
  }
  return worst;
}

}  // namespace bandlab
