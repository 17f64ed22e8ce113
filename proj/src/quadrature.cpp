#include "bandlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

namespace bandlab {

namespace {

GaussLegendre compute_gauss_legendre(int n) {
  GaussLegendre rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n with the usual Chebyshev-based initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

std::mutex gl_mutex;
std::map<int, GaussLegendre> gl_cache;

// One azimuthal ring of the geodesic sphere of radius rho around center,
// with weights summing to the manifold's radial density at rho.
struct SliceNode {
  Point point;
  double weight;
};

std::vector<SliceNode> radial_slice(const SpectralManifold& m, const Point& center, double rho,
                                    int angular) {
  std::vector<SliceNode> out;
  switch (m.kind()) {
    case ManifoldKind::circle: {
      out.push_back({m.canonical(Point{center.x[0] + rho}), 1.0});
      out.push_back({m.canonical(Point{center.x[0] - rho}), 1.0});
      break;
    }
    case ManifoldKind::torus2: {
      const double w = 2.0 * M_PI * rho / angular;
      for (int j = 0; j < angular; ++j) {
        const double alpha = 2.0 * M_PI * (j + 0.5) / angular;
        out.push_back({m.canonical(Point{center.x[0] + rho * std::cos(alpha),
                                         center.x[1] + rho * std::sin(alpha)}),
                       w});
      }
      break;
    }
    case ManifoldKind::sphere2: {
      const double th0 = center.x[0], ph0 = center.x[1];
      const double ct = std::cos(th0), st = std::sin(th0);
      const double cp = std::cos(ph0), sp = std::sin(ph0);
      const double w = 2.0 * M_PI * std::sin(rho) / angular;
      for (int j = 0; j < angular; ++j) {
        const double alpha = 2.0 * M_PI * (j + 0.5) / angular;
        // local polar coordinates at the north pole, rotated to center
        const double lx = std::sin(rho) * std::cos(alpha);
        const double ly = std::sin(rho) * std::sin(alpha);
        const double lz = std::cos(rho);
        const double rx = ct * lx + st * lz;  // R_y(th0)
        const double ry = ly;
        const double rz = -st * lx + ct * lz;
        const double fx = cp * rx - sp * ry;  // R_z(ph0)
        const double fy = sp * rx + cp * ry;
        const double theta = std::acos(std::clamp(rz, -1.0, 1.0));
        double phi = std::atan2(fy, fx);
        if (phi < 0) phi += 2.0 * M_PI;
        out.push_back({Point{theta, phi}, w});
      }
      break;
    }
    case ManifoldKind::product: {
      const auto& A = m.factor_a();
      const auto& B = m.factor_b();
      const int na = A.chart_dimension();
      const Point ca(std::vector<double>(center.x.begin(), center.x.begin() + na));
      const Point cb(std::vector<double>(center.x.begin() + na, center.x.end()));
      const int nt = std::max(12, angular / 8);
      const auto& gl = gauss_legendre(nt);
      const int sub_angular = std::max(8, angular / 4);
      for (int q = 0; q < nt; ++q) {
        const double t = 0.5 * M_PI * 0.5 * (gl.nodes[static_cast<std::size_t>(q)] + 1.0);
        const double wt = rho * 0.5 * M_PI * 0.5 * gl.weights[static_cast<std::size_t>(q)];
        const auto sa = radial_slice(A, ca, rho * std::sin(t), sub_angular);
        const auto sb = radial_slice(B, cb, rho * std::cos(t), sub_angular);
        for (const auto& pa : sa)
          for (const auto& pb : sb) {
            Point p = pa.point;
            p.x.insert(p.x.end(), pb.point.x.begin(), pb.point.x.end());
            out.push_back({std::move(p), wt * pa.weight * pb.weight});
          }
      }
      break;
    }
  }
  return out;
}

QuadratureRule ball_quadrature_attempt(const SpectralManifold& m, const Point& center, double r,
                                       int radial, int angular) {
  QuadratureRule rule;
  const auto& gl = gauss_legendre(radial);
  for (int q = 0; q < radial; ++q) {
    const double rho = r * 0.5 * (gl.nodes[static_cast<std::size_t>(q)] + 1.0);
    const double wr = r * 0.5 * gl.weights[static_cast<std::size_t>(q)];
    for (auto& sn : radial_slice(m, center, rho, angular)) {
      rule.nodes.push_back(std::move(sn.point));
      rule.weights.push_back(wr * sn.weight);
    }
  }
  return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  std::lock_guard<std::mutex> lock(gl_mutex);
  auto it = gl_cache.find(n);
  if (it == gl_cache.end()) it = gl_cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

double QuadratureRule::weight_sum() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

QuadratureRule global_quadrature(const SpectralManifold& m, double max_frequency) {
  QuadratureRule rule;
  rule.exactness = max_frequency;
  switch (m.kind()) {
    case ManifoldKind::circle: {
      const int kmax = static_cast<int>(std::floor(max_frequency / (2.0 * M_PI) + 1e-12));
      const int n = 2 * kmax + 1;
      for (int i = 0; i < n; ++i) {
        rule.nodes.emplace_back(Point{static_cast<double>(i) / n});
        rule.weights.push_back(1.0 / n);
      }
      break;
    }
    case ManifoldKind::torus2: {
      const int kmax = static_cast<int>(std::floor(max_frequency / (2.0 * M_PI) + 1e-12));
      const int n = 2 * kmax + 1;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          rule.nodes.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
          rule.weights.push_back(1.0 / (static_cast<double>(n) * n));
        }
      break;
    }
    case ManifoldKind::sphere2: {
      int lmax = 0;
      while ((lmax + 1.0) * (lmax + 2.0) <= max_frequency * max_frequency) ++lmax;
      const int ntheta = lmax + 1;
      const int nphi = 2 * lmax + 2;
      const auto& gl = gauss_legendre(ntheta);
      for (int i = 0; i < ntheta; ++i) {
        const double theta = std::acos(gl.nodes[static_cast<std::size_t>(i)]);
        const double wt = gl.weights[static_cast<std::size_t>(i)] * (2.0 * M_PI / nphi);
        for (int j = 0; j < nphi; ++j) {
          rule.nodes.emplace_back(theta, 2.0 * M_PI * j / nphi);
          rule.weights.push_back(wt);
        }
      }
      break;
    }
    case ManifoldKind::product: {
      const auto ra = global_quadrature(m.factor_a(), max_frequency);
      const auto rb = global_quadrature(m.factor_b(), max_frequency);
      for (std::size_t i = 0; i < ra.nodes.size(); ++i)
        for (std::size_t j = 0; j < rb.nodes.size(); ++j) {
          Point p = ra.nodes[i];
          p.x.insert(p.x.end(), rb.nodes[j].x.begin(), rb.nodes[j].x.end());
          rule.nodes.push_back(std::move(p));
          rule.weights.push_back(ra.weights[i] * rb.weights[j]);
        }
      break;
    }
  }
  return rule;
}

QuadratureRule ball_quadrature(const SpectralManifold& m, const Point& center, double r,
                               int radial, int angular) {
  const double vol = m.ball_volume(r);  // validates the radius
  QuadratureRule rule = ball_quadrature_attempt(m, center, r, radial, angular);
  if (std::fabs(rule.weight_sum() - vol) > 1e-8 * std::max(1.0, vol))
    rule = ball_quadrature_attempt(m, center, r, 2 * radial, 2 * angular);
  return rule;
}

}  // namespace bandlab
