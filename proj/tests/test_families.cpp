#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bandlab/families.hpp"

using namespace bandlab;

TEST_CASE("grid family sizes and separation") {
  const SpectralManifold torus = SpectralManifold::torus2();
  const TriangularFamily coarse = make_grid_family(torus, {10.0}, 0.5);
  CHECK(coarse.points[0].size() == 25);
  const SeparationReport rc = separation_report(torus, coarse);
  CHECK(rc.levels[0].separation == doctest::Approx(2.0).epsilon(1e-12));

  const TriangularFamily unit = make_grid_family(torus, {10.0}, 1.0);
  CHECK(unit.points[0].size() == 100);
  const SeparationReport ru = separation_report(torus, unit);
  CHECK(ru.levels[0].separation == doctest::Approx(1.0).epsilon(1e-12));
  // mesh norm of the unit lattice: farthest point is the cell center
  CHECK(ru.levels[0].mesh == doctest::Approx(10.0 * std::sqrt(2.0) / 20.0).epsilon(0.05));

  const SpectralManifold sphere = SpectralManifold::sphere2();
  const TriangularFamily fs = make_grid_family(sphere, {10.0}, 1.0);
  CHECK(fs.points[0].size() == 100);
  CHECK(separation_report(sphere, fs).levels[0].separation > 0.0);
}

TEST_CASE("separation report degenerate cases") {
  const SpectralManifold torus = SpectralManifold::torus2();
  TriangularFamily f;
  f.add(10.0, {Point{0.1, 0.1}, Point{0.5, 0.5}, Point{0.1, 0.1}});
  CHECK(separation_report(torus, f).levels[0].separation == 0.0);

  TriangularFamily single;
  single.add(10.0, {Point{0.3, 0.3}});
  CHECK(std::isinf(separation_report(torus, single).levels[0].separation));
}

TEST_CASE("extract separated subfamily") {
  const SpectralManifold torus = SpectralManifold::torus2();

  // already separated: extraction is the identity
  const TriangularFamily unit = make_grid_family(torus, {10.0}, 1.0);
  const TriangularFamily same = extract_separated_subfamily(torus, unit, 1.0);
  REQUIRE(same.points[0].size() == unit.points[0].size());
  for (std::size_t i = 0; i < same.points[0].size(); ++i)
    CHECK(torus.distance(same.points[0][i], unit.points[0][i]) == 0.0);

  // coincident pair: exactly one survives
  TriangularFamily dup;
  dup.add(10.0, {Point{0.2, 0.2}, Point{0.2, 0.2}});
  CHECK(extract_separated_subfamily(torus, dup, 0.5).points[0].size() == 1);

  // dense lattice thinned to separation 1 with bounded mesh growth
  const TriangularFamily dense = make_grid_family(torus, {10.0, 20.0}, 2.0);
  const SeparationReport before = separation_report(torus, dense);
  CHECK(before.levels[0].separation == doctest::Approx(0.5).epsilon(1e-12));
  const TriangularFamily thin = extract_separated_subfamily(torus, dense, 1.0);
  const SeparationReport after = separation_report(torus, thin);
  for (std::size_t li = 0; li < after.levels.size(); ++li) {
    CHECK(after.levels[li].separation >= 1.0 - 1e-12);
    CHECK(after.levels[li].mesh <= 3.0 * before.levels[li].mesh);
  }

  // maximality: every discarded point is within target_s / L of a kept one
  for (std::size_t li = 0; li < dense.levels.size(); ++li) {
    const double L = dense.levels[li];
    for (const Point& z : dense.points[li]) {
      double dmin = kSeparationInfinite;
      for (const Point& k : thin.points[li]) dmin = std::min(dmin, torus.distance(z, k));
      CHECK(dmin <= 1.0 / L + 1e-12);
    }
  }
}

TEST_CASE("perturb family") {
  const SpectralManifold torus = SpectralManifold::torus2();
  const TriangularFamily unit = make_grid_family(torus, {10.0, 20.0}, 1.0);

  const TriangularFamily same = perturb_family(torus, unit, 0.0, 1);
  for (std::size_t li = 0; li < unit.levels.size(); ++li)
    for (std::size_t j = 0; j < unit.points[li].size(); ++j)
      CHECK(torus.distance(same.points[li][j], unit.points[li][j]) == 0.0);

  const TriangularFamily p1 = perturb_family(torus, unit, 0.1, 7);
  const TriangularFamily p2 = perturb_family(torus, unit, 0.1, 7);
  for (std::size_t li = 0; li < p1.levels.size(); ++li)
    for (std::size_t j = 0; j < p1.points[li].size(); ++j) {
      CHECK(p1.points[li][j].x[0] == p2.points[li][j].x[0]);
      CHECK(p1.points[li][j].x[1] == p2.points[li][j].x[1]);
    }

  // displacement bound and the triangle-inequality separation bound
  const SeparationReport rep = separation_report(torus, p1);
  for (std::size_t li = 0; li < unit.levels.size(); ++li) {
    const double L = unit.levels[li];
    for (std::size_t j = 0; j < unit.points[li].size(); ++j)
      CHECK(torus.distance(p1.points[li][j], unit.points[li][j]) <= 0.1 / L + 1e-12);
    CHECK(rep.levels[li].separation >= 1.0 - 0.2 - 1e-12);
  }

  // different seed gives a different family
  const TriangularFamily p3 = perturb_family(torus, unit, 0.1, 8);
  bool any_moved = false;
  for (std::size_t j = 0; j < p1.points[0].size(); ++j)
    if (torus.distance(p1.points[0][j], p3.points[0][j]) > 0.0) any_moved = true;
  CHECK(any_moved);
}

TEST_CASE("perturbation on the sphere stays inside the geodesic ball") {
  const SpectralManifold sphere = SpectralManifold::sphere2();
  const TriangularFamily base = make_grid_family(sphere, {10.0}, 1.0);
  const TriangularFamily moved = perturb_family(sphere, base, 0.5, 3);
  for (std::size_t j = 0; j < base.points[0].size(); ++j)
    CHECK(sphere.distance(base.points[0][j], moved.points[0][j]) <= 0.05 + 1e-12);
}

TEST_CASE("family file round trip") {
  const SpectralManifold torus = SpectralManifold::torus2();
  TriangularFamily f = make_grid_family(torus, {7.0, 13.0}, 0.5);
  f = perturb_family(torus, f, 0.3, 99);
  std::ostringstream os;
  write_family(os, f);
  std::istringstream is(os.str());
  const TriangularFamily g = read_family(is);
  REQUIRE(g.levels == f.levels);
  for (std::size_t li = 0; li < f.levels.size(); ++li) {
    REQUIRE(g.points[li].size() == f.points[li].size());
    for (std::size_t j = 0; j < f.points[li].size(); ++j)
      for (std::size_t d = 0; d < 2; ++d)
        CHECK(g.points[li][j].x[d] == f.points[li][j].x[d]);  // %.17g round trip is exact
  }
  std::istringstream bad("1.0 not-a-number\n");
  CHECK_THROWS_AS(read_family(bad), config_error);
}

TEST_CASE("missing level lookup") {
  TriangularFamily f;
  f.add(10.0, {Point{0.0, 0.0}});
  CHECK_THROWS_AS(f.at(20.0), missing_level_error);
  CHECK(f.has(10.0));
}
