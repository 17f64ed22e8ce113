#include "bandlab/families.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "bandlab/basis.hpp"
#include "bandlab/rng.hpp"

namespace bandlab {

const std::vector<Point>& TriangularFamily::at(double bandwidth) const {
  for (std::size_t i = 0; i < levels.size(); ++i)
    if (levels[i] == bandwidth) return points[i];
  throw missing_level_error("family has no level L = " + std::to_string(bandwidth));
}

bool TriangularFamily::has(double bandwidth) const {
  return std::find(levels.begin(), levels.end(), bandwidth) != levels.end();
}

void TriangularFamily::add(double bandwidth, std::vector<Point> pts) {
  const auto it = std::lower_bound(levels.begin(), levels.end(), bandwidth);
  const auto idx = static_cast<std::size_t>(it - levels.begin());
  levels.insert(it, bandwidth);
  points.insert(points.begin() + static_cast<std::ptrdiff_t>(idx), std::move(pts));
}

double SeparationReport::min_separation() const {
  double s = kSeparationInfinite;
  for (const auto& lv : levels) s = std::min(s, lv.separation);
  return s;
}

double SeparationReport::max_mesh() const {
  double e = 0.0;
  for (const auto& lv : levels) e = std::max(e, lv.mesh);
  return e;
}

TriangularFamily make_grid_family(const SpectralManifold& m, const std::vector<double>& bandwidths,
                                  double oversampling) {
  if (!(oversampling > 0.0)) throw config_error("oversampling must be positive");
  TriangularFamily family;
  family.provenance = "grid";
  for (double L : bandwidths) {
    std::vector<Point> pts;
    switch (m.kind()) {
      case ManifoldKind::circle: {
        const int n = static_cast<int>(std::ceil(oversampling * L));
        for (int i = 0; i < n; ++i) pts.emplace_back(Point{static_cast<double>(i) / n});
        break;
      }
      case ManifoldKind::torus2: {
        const int n = static_cast<int>(std::ceil(oversampling * L));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            pts.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
        break;
      }
      case ManifoldKind::sphere2: {
        const int n = static_cast<int>(std::ceil(oversampling * L * oversampling * L));
        pts = m.uniform_points(n);
        break;
      }
      case ManifoldKind::product: {
        const auto fa = make_grid_family(m.factor_a(), {L}, oversampling);
        const auto fb = make_grid_family(m.factor_b(), {L}, oversampling);
        for (const auto& pa : fa.points[0])
          for (const auto& pb : fb.points[0]) {
            Point p = pa;
            p.x.insert(p.x.end(), pb.x.begin(), pb.x.end());
            pts.push_back(std::move(p));
          }
        break;
      }
    }
    family.add(L, std::move(pts));
  }
  return family;
}

namespace {

std::vector<Point> mesh_probe_grid(const SpectralManifold& m, double L) {
  // at least 4x denser than 1/L
  switch (m.kind()) {
    case ManifoldKind::circle:
      return m.uniform_points(static_cast<int>(std::ceil(4.0 * L)) + 1);
    case ManifoldKind::torus2: {
      const int g = static_cast<int>(std::ceil(4.0 * L)) + 1;
      return m.uniform_points(g * g);
    }
    case ManifoldKind::sphere2: {
      // Fibonacci spacing ~ sqrt(4 pi / n); choose n so spacing <= 1/(4L)
      const int n = static_cast<int>(std::ceil(4.0 * M_PI * 16.0 * L * L)) + 1;
      return m.uniform_points(n);
    }
    case ManifoldKind::product: {
      const int per_leaf = static_cast<int>(std::ceil(4.0 * L));
      return m.uniform_points(static_cast<int>(
          std::pow(static_cast<double>(per_leaf), m.dimension())));
    }
  }
  return {};
}

}  // namespace

SeparationReport separation_report(const SpectralManifold& m, const TriangularFamily& family) {
  SeparationReport report;
  for (std::size_t li = 0; li < family.levels.size(); ++li) {
    const double L = family.levels[li];
    const auto& pts = family.points[li];
    if (pts.empty()) throw config_error("separation_report: empty level");
    LevelSeparation lv;
    lv.bandwidth = L;
    lv.m_points = static_cast<int>(pts.size());
    lv.dimension = eigenspace_dimension(m, L);
    if (pts.size() < 2) {
      lv.separation = kSeparationInfinite;
    } else {
      double dmin = kSeparationInfinite;
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
          dmin = std::min(dmin, m.distance(pts[i], pts[j]));
      lv.separation = L * dmin;
    }
    double mesh = 0.0;
    for (const Point& xi : mesh_probe_grid(m, L)) {
      double dnear = kSeparationInfinite;
      for (const Point& z : pts) dnear = std::min(dnear, m.distance(xi, z));
      mesh = std::max(mesh, dnear);
    }
    lv.mesh = L * mesh;
    report.levels.push_back(lv);
  }
  return report;
}

TriangularFamily extract_separated_subfamily(const SpectralManifold& m,
                                             const TriangularFamily& family, double target_s) {
  if (!(target_s > 0.0)) throw config_error("target separation must be positive");
  TriangularFamily out;
  out.provenance = family.provenance;
  for (std::size_t li = 0; li < family.levels.size(); ++li) {
    const double L = family.levels[li];
    // relative fuzz so exactly-critical spacings (lattice at target_s)
    // count as separated
    const double dmin = (target_s / L) * (1.0 - 1e-12);
    std::vector<Point> kept;
    for (const Point& z : family.points[li]) {
      bool ok = true;
      for (const Point& k : kept)
        if (m.distance(z, k) < dmin) {
          ok = false;
          break;
        }
      if (ok) kept.push_back(z);
    }
    out.add(L, std::move(kept));
  }
  return out;
}

namespace {

// Uniform sample from the geodesic ball B(center, r).
Point sample_ball(const SpectralManifold& m, const Point& center, double r, Rng& rng) {
  switch (m.kind()) {
    case ManifoldKind::circle:
      return m.canonical(Point{center.x[0] + rng.uniform(-r, r)});
    case ManifoldKind::torus2: {
      const double rho = r * std::sqrt(rng.uniform());
      const double alpha = rng.uniform(0.0, 2.0 * M_PI);
      return m.canonical(
          Point{center.x[0] + rho * std::cos(alpha), center.x[1] + rho * std::sin(alpha)});
    }
    case ManifoldKind::sphere2: {
      // area-uniform cap sample, rotated to the center
      const double c = rng.uniform(std::cos(r), 1.0);
      const double rho = std::acos(std::clamp(c, -1.0, 1.0));
      const double alpha = rng.uniform(0.0, 2.0 * M_PI);
      const double th0 = center.x[0], ph0 = center.x[1];
      const double ct = std::cos(th0), st = std::sin(th0);
      const double cp = std::cos(ph0), sp = std::sin(ph0);
      const double lx = std::sin(rho) * std::cos(alpha);
      const double ly = std::sin(rho) * std::sin(alpha);
      const double lz = std::cos(rho);
      const double rx = ct * lx + st * lz;
      const double ry = ly;
      const double rz = -st * lx + ct * lz;
      const double fx = cp * rx - sp * ry;
      const double fy = sp * rx + cp * ry;
      double phi = std::atan2(fy, fx);
      if (phi < 0) phi += 2.0 * M_PI;
      return Point{std::acos(std::clamp(rz, -1.0, 1.0)), phi};
    }
    case ManifoldKind::product: {
      // rejection from the product of factor balls
      const auto& A = m.factor_a();
      const auto& B = m.factor_b();
      const int na = A.chart_dimension();
      const Point ca(std::vector<double>(center.x.begin(), center.x.begin() + na));
      const Point cb(std::vector<double>(center.x.begin() + na, center.x.end()));
      for (int it = 0; it < 10000; ++it) {
        Point pa = sample_ball(A, ca, r, rng);
        Point pb = sample_ball(B, cb, r, rng);
        const double da = A.distance(pa, ca);
        const double db = B.distance(pb, cb);
        if (da * da + db * db <= r * r) {
          pa.x.insert(pa.x.end(), pb.x.begin(), pb.x.end());
          return pa;
        }
      }
      return center;  // unreachable in practice
    }
  }
  return center;
}

}  // namespace

TriangularFamily perturb_family(const SpectralManifold& m, const TriangularFamily& family,
                                double delta, unsigned seed) {
  if (delta < 0.0) throw config_error("perturbation radius must be nonnegative");
  TriangularFamily out;
  out.provenance = "perturbed";
  Rng rng(seed);
  for (std::size_t li = 0; li < family.levels.size(); ++li) {
    const double L = family.levels[li];
    std::vector<Point> pts;
    pts.reserve(family.points[li].size());
    for (const Point& z : family.points[li])
      pts.push_back(delta == 0.0 ? z : sample_ball(m, z, delta / L, rng));
    out.add(L, std::move(pts));
  }
  return out;
}

void write_family(std::ostream& os, const TriangularFamily& family) {
  char buf[64];
  for (std::size_t li = 0; li < family.levels.size(); ++li) {
    for (std::size_t j = 0; j < family.points[li].size(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", family.levels[li]);
      os << buf << ' ' << j;
      for (double c : family.points[li][j].x) {
        std::snprintf(buf, sizeof(buf), "%.17g", c);
        os << ' ' << buf;
      }
      os << '\n';
    }
  }
}

TriangularFamily read_family(std::istream& is) {
  TriangularFamily family;
  family.provenance = "loaded";
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double L = 0.0;
    long j = 0;
    if (!(ls >> L >> j)) throw config_error("family file: malformed line: " + line);
    std::vector<double> coords;
    double c = 0.0;
    while (ls >> c) coords.push_back(c);
    if (coords.empty()) throw config_error("family file: point without coordinates: " + line);
    if (!family.has(L)) family.add(L, {});
    for (std::size_t li = 0; li < family.levels.size(); ++li)
      if (family.levels[li] == L) family.points[li].emplace_back(std::move(coords));
  }
  return family;
}

}  // namespace bandlab
