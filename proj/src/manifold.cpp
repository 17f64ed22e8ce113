#include "bandlab/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bandlab/quadrature.hpp"

namespace bandlab {

namespace {

double wrap_unit(double t) {
  t -= std::floor(t);
  if (t >= 1.0) t -= 1.0;  // guard against floor rounding at 1.0
  return t;
}

// Distance on R/Z.
double circle_dist(double a, double b) {
  double d = std::fabs(a - b);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

void sphere_to_xyz(double theta, double phi, double out[3]) {
  const double s = std::sin(theta);
  out[0] = s * std::cos(phi);
  out[1] = s * std::sin(phi);
  out[2] = std::cos(theta);
}

double halton(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

}  // namespace

SpectralManifold SpectralManifold::circle() {
  return SpectralManifold(ManifoldKind::circle, 1, 1.0, 1);
}

SpectralManifold SpectralManifold::torus2() {
  return SpectralManifold(ManifoldKind::torus2, 2, 1.0, 2);
}

SpectralManifold SpectralManifold::sphere2() {
  return SpectralManifold(ManifoldKind::sphere2, 2, 4.0 * M_PI, 2);
}

SpectralManifold SpectralManifold::product(const SpectralManifold& a, const SpectralManifold& b) {
  SpectralManifold m(ManifoldKind::product, a.dimension() + b.dimension(),
                     a.volume() * b.volume(), a.chart_dimension() + b.chart_dimension());
  m.a_ = std::make_shared<SpectralManifold>(a);
  m.b_ = std::make_shared<SpectralManifold>(b);
  return m;
}

SpectralManifold SpectralManifold::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s == "circle") return circle();
  if (s == "torus2") return torus2();
  if (s == "sphere2") return sphere2();
  if (s.rfind("product(", 0) == 0 && s.back() == ')') {
    const std::string inner = s.substr(8, s.size() - 9);
    // split at the top-level comma
    int depth = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0)
        return product(parse(inner.substr(0, i)), parse(inner.substr(i + 1)));
    }
  }
  throw unimplemented_manifold_error("unknown manifold: \"" + text + "\"");
}

std::string SpectralManifold::name() const {
  switch (kind_) {
    case ManifoldKind::circle: return "circle";
    case ManifoldKind::torus2: return "torus2";
    case ManifoldKind::sphere2: return "sphere2";
    case ManifoldKind::product: return "product(" + a_->name() + "," + b_->name() + ")";
  }
  return "?";
}

double SpectralManifold::distance(const Point& z, const Point& w) const {
  switch (kind_) {
    case ManifoldKind::circle:
      return circle_dist(z.x[0], w.x[0]);
    case ManifoldKind::torus2: {
      const double dx = circle_dist(z.x[0], w.x[0]);
      const double dy = circle_dist(z.x[1], w.x[1]);
      return std::hypot(dx, dy);
    }
    case ManifoldKind::sphere2: {
      double p[3], q[3];
      sphere_to_xyz(z.x[0], z.x[1], p);
      sphere_to_xyz(w.x[0], w.x[1], q);
      const double dot = p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
      return std::acos(std::clamp(dot, -1.0, 1.0));
    }
    case ManifoldKind::product: {
      const int na = a_->chart_dimension();
      Point za(std::vector<double>(z.x.begin(), z.x.begin() + na));
      Point wa(std::vector<double>(w.x.begin(), w.x.begin() + na));
      Point zb(std::vector<double>(z.x.begin() + na, z.x.end()));
      Point wb(std::vector<double>(w.x.begin() + na, w.x.end()));
      return std::hypot(a_->distance(za, wa), b_->distance(zb, wb));
    }
  }
  return 0.0;
}

Point SpectralManifold::canonical(const Point& z) const {
  Point p = z;
  switch (kind_) {
    case ManifoldKind::circle:
      p.x[0] = wrap_unit(p.x[0]);
      break;
    case ManifoldKind::torus2:
      p.x[0] = wrap_unit(p.x[0]);
      p.x[1] = wrap_unit(p.x[1]);
      break;
    case ManifoldKind::sphere2: {
      // Reflect colatitude into [0,pi], shifting azimuth by pi when the
      // pole is crossed; then wrap azimuth.
      double th = p.x[0], ph = p.x[1];
      th = std::fmod(th, 2.0 * M_PI);
      if (th < 0) th += 2.0 * M_PI;
      if (th > M_PI) {
        th = 2.0 * M_PI - th;
        ph += M_PI;
      }
      ph = std::fmod(ph, 2.0 * M_PI);
      if (ph < 0) ph += 2.0 * M_PI;
      p.x[0] = th;
      p.x[1] = ph;
      break;
    }
    case ManifoldKind::product: {
      const int na = a_->chart_dimension();
      Point pa(std::vector<double>(p.x.begin(), p.x.begin() + na));
      Point pb(std::vector<double>(p.x.begin() + na, p.x.end()));
      pa = a_->canonical(pa);
      pb = b_->canonical(pb);
      p.x = pa.x;
      p.x.insert(p.x.end(), pb.x.begin(), pb.x.end());
      break;
    }
  }
  return p;
}

double SpectralManifold::diameter() const {
  switch (kind_) {
    case ManifoldKind::circle: return 0.5;
    case ManifoldKind::torus2: return std::sqrt(0.5);
    case ManifoldKind::sphere2: return M_PI;
    case ManifoldKind::product:
      return std::hypot(a_->diameter(), b_->diameter());
  }
  return 0.0;
}

double SpectralManifold::max_ball_radius() const {
  switch (kind_) {
    case ManifoldKind::circle: return 0.5;
    case ManifoldKind::torus2: return 0.5;
    case ManifoldKind::sphere2: return M_PI;
    case ManifoldKind::product:
      return std::min(a_->max_ball_radius(), b_->max_ball_radius());
  }
  return 0.0;
}

double SpectralManifold::radial_density(double r) const {
  switch (kind_) {
    case ManifoldKind::circle: return 2.0;
    case ManifoldKind::torus2: return 2.0 * M_PI * r;
    case ManifoldKind::sphere2: return 2.0 * M_PI * std::sin(r);
    case ManifoldKind::product: {
      // The sphere of radius r in A x B splits as d_A = r sin(t),
      // d_B = r cos(t); its area is r * int_0^{pi/2} dens_A dens_B dt.
      const auto& gl = gauss_legendre(48);
      double acc = 0.0;
      for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const double t = 0.5 * M_PI * (0.5 * (gl.nodes[q] + 1.0));
        acc += 0.5 * M_PI * 0.5 * gl.weights[q] *
               a_->radial_density(r * std::sin(t)) * b_->radial_density(r * std::cos(t));
      }
      return r * acc;
    }
  }
  return 0.0;
}

double SpectralManifold::ball_volume(double r) const {
  if (!(r > 0.0)) throw radius_too_large_error("ball radius must be positive");
  if (r > max_ball_radius() + 1e-15)
    throw radius_too_large_error("ball radius " + std::to_string(r) +
                                 " exceeds admissible maximum " +
                                 std::to_string(max_ball_radius()) + " on " + name());
  switch (kind_) {
    case ManifoldKind::circle: return 2.0 * r;
    case ManifoldKind::torus2: return M_PI * r * r;
    case ManifoldKind::sphere2: return 2.0 * M_PI * (1.0 - std::cos(r));
    case ManifoldKind::product: {
      const auto& gl = gauss_legendre(96);
      double acc = 0.0;
      for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const double rho = r * 0.5 * (gl.nodes[q] + 1.0);
        acc += r * 0.5 * gl.weights[q] * radial_density(rho);
      }
      return acc;
    }
  }
  return 0.0;
}

std::vector<Point> SpectralManifold::uniform_points(int n, double phase) const {
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(std::max(n, 0)));
  switch (kind_) {
    case ManifoldKind::circle: {
      for (int i = 0; i < n; ++i) pts.emplace_back(Point{wrap_unit((i + phase) / n)});
      break;
    }
    case ManifoldKind::torus2: {
      const int g = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
      for (int i = 0; i < g && static_cast<int>(pts.size()) < n; ++i)
        for (int j = 0; j < g && static_cast<int>(pts.size()) < n; ++j)
          pts.emplace_back(wrap_unit((i + phase) / g), wrap_unit((j + phase * 0.618) / g));
      break;
    }
    case ManifoldKind::sphere2: {
      // Fibonacci spiral.
      const double golden = M_PI * (3.0 - std::sqrt(5.0));
      for (int i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / n;
        const double theta = std::acos(std::clamp(z, -1.0, 1.0));
        double phi = std::fmod(golden * i + 2.0 * M_PI * phase, 2.0 * M_PI);
        if (phi < 0) phi += 2.0 * M_PI;
        pts.emplace_back(theta, phi);
      }
      break;
    }
    case ManifoldKind::product: {
      const int na = std::max(1, static_cast<int>(std::round(
                                     std::pow(n, static_cast<double>(a_->dimension()) / dimension()))));
      const int nb = std::max(1, (n + na - 1) / na);
      const auto pa = a_->uniform_points(na, phase);
      const auto pb = b_->uniform_points(nb, phase);
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

std::vector<Point> SpectralManifold::low_discrepancy_points(int n) const {
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(std::max(n, 0)));
  static const int bases[] = {2, 3, 5, 7, 11, 13};
  for (int i = 0; i < n; ++i) {
    std::vector<double> u(static_cast<std::size_t>(chart_dimension()));
    for (int d = 0; d < chart_dimension(); ++d)
      u[static_cast<std::size_t>(d)] = halton(static_cast<std::uint64_t>(i + 1), bases[d % 6]);
    // map unit-cube samples to the chart
    std::vector<double> coords;
    coords.reserve(u.size());
    std::size_t off = 0;
    // walk the (possibly nested) factor structure
    std::vector<const SpectralManifold*> stack{this};
    std::vector<const SpectralManifold*> leaves;
    while (!stack.empty()) {
      const SpectralManifold* m = stack.back();
      stack.pop_back();
      if (m->kind() == ManifoldKind::product) {
        stack.push_back(&m->factor_b());
        stack.push_back(&m->factor_a());
      } else {
        leaves.push_back(m);
      }
    }
    for (const SpectralManifold* m : leaves) {
      switch (m->kind()) {
        case ManifoldKind::circle:
          coords.push_back(u[off]);
          off += 1;
          break;
        case ManifoldKind::torus2:
          coords.push_back(u[off]);
          coords.push_back(u[off + 1]);
          off += 2;
          break;
        case ManifoldKind::sphere2:
          // area-uniform: cos(theta) uniform in [-1,1]
          coords.push_back(std::acos(std::clamp(1.0 - 2.0 * u[off], -1.0, 1.0)));
          coords.push_back(2.0 * M_PI * u[off + 1]);
          off += 2;
          break;
        case ManifoldKind::product:
          break;
      }
    }
    pts.emplace_back(std::move(coords));
  }
  return pts;
}

Point default_center(const SpectralManifold& m) {
  switch (m.kind()) {
    case ManifoldKind::circle: return Point{0.0};
    case ManifoldKind::torus2: return Point{0.0, 0.0};
    case ManifoldKind::sphere2: return Point{0.0, 0.0};  // north pole
    case ManifoldKind::product: {
      Point pa = default_center(m.factor_a());
      Point pb = default_center(m.factor_b());
      pa.x.insert(pa.x.end(), pb.x.begin(), pb.x.end());
      return pa;
    }
  }
  return Point{};
}

}  // namespace bandlab
