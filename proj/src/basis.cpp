#include "bandlab/basis.hpp"

#include <algorithm>
#include <cmath>

#include "bandlab/quadrature.hpp"

namespace bandlab {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

int circle_max_index(double bandwidth) {
  return static_cast<int>(std::floor(bandwidth / (2.0 * M_PI) + 1e-12));
}

int sphere_max_degree(double bandwidth) {
  int l = 0;
  while ((l + 1.0) * (l + 2.0) <= bandwidth * bandwidth) ++l;
  return l;
}

bool mode_less(const Mode& u, const Mode& v) {
  if (u.frequency != v.frequency) return u.frequency < v.frequency;
  if (u.a != v.a) return u.a < v.a;
  if (u.b != v.b) return u.b < v.b;
  return u.c < v.c;
}

}  // namespace

void normalized_legendre(int lmax, int m, double x, std::vector<double>& out) {
  out.assign(static_cast<std::size_t>(lmax - m + 1), 0.0);
  const double omx2 = (1.0 - x) * (1.0 + x);
  double pmm = 1.0 / std::sqrt(4.0 * M_PI);
  for (int i = 1; i <= m; ++i) pmm *= std::sqrt(omx2 * (2.0 * i + 1.0) / (2.0 * i));
  out[0] = pmm;
  if (lmax == m) return;
  double pm1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
  out[1] = pm1;
  double afac_prev = std::sqrt(2.0 * m + 3.0);
  for (int l = m + 2; l <= lmax; ++l) {
    const double afac = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
    const double pl = afac * (x * pm1 - pmm / afac_prev);
    out[static_cast<std::size_t>(l - m)] = pl;
    pmm = pm1;
    pm1 = pl;
    afac_prev = afac;
  }
}

EigenBasis::EigenBasis(const SpectralManifold& m, double bandwidth)
    : manifold_(m), bandwidth_(bandwidth) {
  if (!(bandwidth >= 1.0)) throw bandwidth_too_small_error("bandwidth must be >= 1");
  switch (m.kind()) {
    case ManifoldKind::circle: {
      modes_.push_back({0.0, 0, 0, 0});
      for (int n = 1; n <= circle_max_index(bandwidth); ++n) {
        const double f = 2.0 * M_PI * n;
        modes_.push_back({f, 1, n, 0});
        modes_.push_back({f, 2, n, 0});
      }
      break;
    }
    case ManifoldKind::torus2: {
      modes_.push_back({0.0, 0, 0, 0});
      const double r2 = bandwidth * bandwidth / (4.0 * M_PI * M_PI);
      const int kmax = static_cast<int>(std::floor(std::sqrt(r2))) + 1;
      for (int b = 0; b <= kmax; ++b)
        for (int c = -kmax; c <= kmax; ++c) {
          if (b == 0 && c <= 0) continue;  // half-lattice representatives
          const int n = b * b + c * c;
          if (n > r2) continue;
          const double f = 2.0 * M_PI * std::sqrt(static_cast<double>(n));
          modes_.push_back({f, 1, b, c});
          modes_.push_back({f, 2, b, c});
        }
      break;
    }
    case ManifoldKind::sphere2: {
      sphere_lmax_ = sphere_max_degree(bandwidth);
      for (int l = 0; l <= sphere_lmax_; ++l) {
        const double f = std::sqrt(static_cast<double>(l) * (l + 1.0));
        for (int mm = -l; mm <= l; ++mm) modes_.push_back({f, l, mm, 0});
      }
      break;
    }
    case ManifoldKind::product: {
      basis_a_ = std::make_shared<EigenBasis>(m.factor_a(), bandwidth);
      basis_b_ = std::make_shared<EigenBasis>(m.factor_b(), bandwidth);
      const double l2 = bandwidth * bandwidth;
      for (int ia = 0; ia < basis_a_->size(); ++ia)
        for (int ib = 0; ib < basis_b_->size(); ++ib) {
          const double fa = basis_a_->frequency(ia);
          const double fb = basis_b_->frequency(ib);
          const double f2 = fa * fa + fb * fb;
          if (f2 > l2) continue;
          modes_.push_back({std::sqrt(f2), ia, ib, 0});
        }
      break;
    }
  }
  std::stable_sort(modes_.begin(), modes_.end(), mode_less);
}

double EigenBasis::evaluate(int i, const Point& z) const {
  const Mode& md = modes_[static_cast<std::size_t>(i)];
  switch (manifold_.kind()) {
    case ManifoldKind::circle: {
      if (md.a == 0) return 1.0;
      const double arg = 2.0 * M_PI * md.b * z.x[0];
      return md.a == 1 ? kSqrt2 * std::cos(arg) : kSqrt2 * std::sin(arg);
    }
    case ManifoldKind::torus2: {
      if (md.a == 0) return 1.0;
      const double arg = 2.0 * M_PI * (md.b * z.x[0] + md.c * z.x[1]);
      return md.a == 1 ? kSqrt2 * std::cos(arg) : kSqrt2 * std::sin(arg);
    }
    case ManifoldKind::sphere2: {
      const int l = md.a, mm = md.b;
      const int am = std::abs(mm);
      std::vector<double> leg;
      normalized_legendre(l, am, std::cos(z.x[0]), leg);
      const double p = leg.back();
      if (mm == 0) return p;
      return mm > 0 ? kSqrt2 * p * std::cos(am * z.x[1]) : kSqrt2 * p * std::sin(am * z.x[1]);
    }
    case ManifoldKind::product: {
      const int na = manifold_.factor_a().chart_dimension();
      const Point za(std::vector<double>(z.x.begin(), z.x.begin() + na));
      const Point zb(std::vector<double>(z.x.begin() + na, z.x.end()));
      return basis_a_->evaluate(md.a, za) * basis_b_->evaluate(md.b, zb);
    }
  }
  return 0.0;
}

Eigen::VectorXd EigenBasis::evaluate_all(const Point& z) const {
  Eigen::VectorXd v(size());
  switch (manifold_.kind()) {
    case ManifoldKind::circle:
    case ManifoldKind::torus2: {
      for (int i = 0; i < size(); ++i) v[i] = evaluate(i, z);
      break;
    }
    case ManifoldKind::sphere2: {
      // One Legendre sweep per order m; positions follow the (l, m)
      // ordering, i.e. mode (l, m) sits at l^2 + l + m.
      const double x = std::cos(z.x[0]);
      std::vector<double> leg;
      for (int mm = 0; mm <= sphere_lmax_; ++mm) {
        normalized_legendre(sphere_lmax_, mm, x, leg);
        const double c = std::cos(mm * z.x[1]);
        const double s = std::sin(mm * z.x[1]);
        for (int l = mm; l <= sphere_lmax_; ++l) {
          const double p = leg[static_cast<std::size_t>(l - mm)];
          if (mm == 0) {
            v[l * l + l] = p;
          } else {
            v[l * l + l + mm] = kSqrt2 * p * c;
            v[l * l + l - mm] = kSqrt2 * p * s;
          }
        }
      }
      break;
    }
    case ManifoldKind::product: {
      const int na = manifold_.factor_a().chart_dimension();
      const Point za(std::vector<double>(z.x.begin(), z.x.begin() + na));
      const Point zb(std::vector<double>(z.x.begin() + na, z.x.end()));
      const Eigen::VectorXd va = basis_a_->evaluate_all(za);
      const Eigen::VectorXd vb = basis_b_->evaluate_all(zb);
      for (int i = 0; i < size(); ++i) {
        const Mode& md = modes_[static_cast<std::size_t>(i)];
        v[i] = va[md.a] * vb[md.b];
      }
      break;
    }
  }
  return v;
}

Eigen::MatrixXd EigenBasis::evaluate_matrix(const std::vector<Point>& pts) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(pts.size()), size());
  for (std::size_t j = 0; j < pts.size(); ++j) out.row(static_cast<Eigen::Index>(j)) = evaluate_all(pts[j]).transpose();
  return out;
}

int eigenspace_dimension(const SpectralManifold& m, double bandwidth) {
  if (!(bandwidth >= 1.0)) throw bandwidth_too_small_error("bandwidth must be >= 1");
  switch (m.kind()) {
    case ManifoldKind::circle:
      return 1 + 2 * circle_max_index(bandwidth);
    case ManifoldKind::torus2: {
      const double r2 = bandwidth * bandwidth / (4.0 * M_PI * M_PI);
      const int kmax = static_cast<int>(std::floor(std::sqrt(r2))) + 1;
      int count = 0;
      for (int b = -kmax; b <= kmax; ++b)
        for (int c = -kmax; c <= kmax; ++c)
          if (b * b + c * c <= r2) ++count;
      return count;
    }
    case ManifoldKind::sphere2: {
      const int l = sphere_max_degree(bandwidth);
      return (l + 1) * (l + 1);
    }
    case ManifoldKind::product:
      return EigenBasis(m, bandwidth).size();
  }
  return 0;
}

Eigen::MatrixXd basis_gram(const EigenBasis& basis, const QuadratureRule& rule) {
  const Eigen::MatrixXd phi = basis.evaluate_matrix(rule.nodes);
  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(),
                                            static_cast<Eigen::Index>(rule.weights.size()));
  return phi.transpose() * w.asDiagonal() * phi;
}

}  // namespace bandlab
