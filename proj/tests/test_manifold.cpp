#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "bandlab/basis.hpp"
#include "bandlab/quadrature.hpp"
#include "oracles.hpp"

using namespace bandlab;

TEST_CASE("eigenbasis counts match exhaustive enumeration") {
  const SpectralManifold torus = SpectralManifold::torus2();
  CHECK(EigenBasis(torus, 7).size() == 5);
  CHECK(EigenBasis(torus, 13).size() == 13);
  for (double L : {7.0, 13.0, 25.0, 40.0, 60.0}) {
    CHECK(EigenBasis(torus, L).size() == oracles::torus_lattice_count(L));
    CHECK(eigenspace_dimension(torus, L) == oracles::torus_lattice_count(L));
  }

  const SpectralManifold sphere = SpectralManifold::sphere2();
  CHECK(EigenBasis(sphere, 2).size() == 4);  // l in {0, 1}
  for (double L : {2.0, 10.0, 25.0, 40.0})
    CHECK(EigenBasis(sphere, L).size() == oracles::sphere_harmonic_count(L));

  const SpectralManifold circle = SpectralManifold::circle();
  for (double L : {1.0, 7.0, 20.0})
    CHECK(EigenBasis(circle, L).size() == oracles::circle_mode_count(L));

  CHECK_THROWS_AS(EigenBasis(torus, 0.5), bandwidth_too_small_error);
}

TEST_CASE("eigenbasis ordering and frequency bounds") {
  for (const auto& m : {SpectralManifold::torus2(), SpectralManifold::sphere2(),
                        SpectralManifold::product(SpectralManifold::torus2(),
                                                  SpectralManifold::circle())}) {
    const EigenBasis basis(m, 15);
    for (int i = 0; i < basis.size(); ++i) {
      CHECK(basis.frequency(i) <= 15.0);
      if (i > 0) CHECK(basis.frequency(i) >= basis.frequency(i - 1));
    }
  }
}

TEST_CASE("mode evaluation closed forms") {
  const SpectralManifold torus = SpectralManifold::torus2();
  const EigenBasis basis(torus, 7);
  CHECK(basis.evaluate(0, Point{0.33, 0.71}) == 1.0);  // constant, vol = 1
  // first cosine mode at the origin
  bool found = false;
  for (int i = 0; i < basis.size(); ++i) {
    const Mode& md = basis.modes()[static_cast<std::size_t>(i)];
    if (md.a == 1 && md.b == 1 && md.c == 0) {
      CHECK(basis.evaluate(i, Point{0.0, 0.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
      found = true;
    }
  }
  CHECK(found);

  const SpectralManifold sphere = SpectralManifold::sphere2();
  const EigenBasis sb(sphere, 2);
  CHECK(sb.evaluate(0, Point{1.0, 2.0}) ==
        doctest::Approx(1.0 / std::sqrt(4.0 * M_PI)).epsilon(1e-14));
}

TEST_CASE("geodesic distances") {
  const SpectralManifold torus = SpectralManifold::torus2();
  CHECK(torus.distance(Point{0.1, 0.1}, Point{0.9, 0.1}) == doctest::Approx(0.2).epsilon(1e-13));
  const SpectralManifold sphere = SpectralManifold::sphere2();
  CHECK(sphere.distance(Point{0.0, 0.0}, Point{M_PI, 0.0}) == doctest::Approx(M_PI));
  for (const auto& m : {torus, sphere}) {
    const auto pts = m.uniform_points(7);
    for (const auto& p : pts) CHECK(m.distance(p, p) == 0.0);
  }
}

TEST_CASE("distance is a metric on sampled triples") {
  const auto product = SpectralManifold::product(SpectralManifold::torus2(),
                                                 SpectralManifold::circle());
  for (const auto& m : {SpectralManifold::torus2(), SpectralManifold::sphere2(), product}) {
    const auto pts = m.low_discrepancy_points(12);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < pts.size(); ++j) {
        CHECK(m.distance(pts[i], pts[j]) == doctest::Approx(m.distance(pts[j], pts[i])).epsilon(1e-14));
        for (std::size_t k = 0; k < pts.size(); ++k)
          CHECK(m.distance(pts[i], pts[k]) <=
                m.distance(pts[i], pts[j]) + m.distance(pts[j], pts[k]) + 1e-12);
      }
  }
}

TEST_CASE("ball volumes") {
  const SpectralManifold torus = SpectralManifold::torus2();
  CHECK(torus.ball_volume(0.25) == doctest::Approx(M_PI / 16.0).epsilon(1e-14));
  CHECK_THROWS_AS(torus.ball_volume(0.6), radius_too_large_error);

  const SpectralManifold sphere = SpectralManifold::sphere2();
  CHECK(sphere.ball_volume(M_PI / 2.0) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  CHECK(sphere.ball_volume(M_PI) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
  CHECK_THROWS_AS(sphere.ball_volume(3.5), radius_too_large_error);

  // product volume quadrature vs closed form: ball in torus2 x circle is a
  // solid of revolution, vol = int 2 pi a * 2 sqrt(r^2-a^2)' ... use the
  // 3-ball analogue: circle x circle x circle has vol(B_r) = (4/3) pi r^3 * 2
  // No closed form here; check consistency against a fine Riemann sum instead.
  const auto prod = SpectralManifold::product(SpectralManifold::torus2(),
                                              SpectralManifold::circle());
  const double r = 0.3;
  // Riemann sum over the flat chart [0,1)^3 around center (0,0,0)
  const int n = 220;
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double x = (i + 0.5) / n - 0.5, y = (j + 0.5) / n - 0.5, z = (k + 0.5) / n - 0.5;
        if (x * x + y * y + z * z <= r * r) acc += 1.0 / (static_cast<double>(n) * n * n);
      }
  CHECK(prod.ball_volume(r) == doctest::Approx(4.0 / 3.0 * M_PI * r * r * r).epsilon(1e-6));
  CHECK(prod.ball_volume(r) == doctest::Approx(acc).epsilon(2e-2));
}

TEST_CASE("volume comparison with the flat disc") {
  // cap(r) / (pi r^2) = 1 - r^2/12 + ...
  const SpectralManifold sphere = SpectralManifold::sphere2();
  for (double r : {0.1, 0.2, 0.35, 0.5}) {
    const double q = sphere.ball_volume(r) / (M_PI * r * r);
    CHECK(std::fabs(q - 1.0) <= r * r / 10.0);
  }
}

TEST_CASE("global quadrature orthonormality") {
  for (const auto& m : {SpectralManifold::torus2(), SpectralManifold::sphere2(),
                        SpectralManifold::circle(),
                        SpectralManifold::product(SpectralManifold::circle(),
                                                  SpectralManifold::circle())}) {
    const double L = m.kind() == ManifoldKind::sphere2 ? 10.0 : 13.0;
    const EigenBasis basis(m, L);
    const QuadratureRule rule = global_quadrature(m, L);
    const Eigen::MatrixXd gram = basis_gram(basis, rule);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(basis.size(), basis.size());
    CHECK((gram - id).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("sphere quadrature integrates the constant") {
  const SpectralManifold sphere = SpectralManifold::sphere2();
  const QuadratureRule rule = global_quadrature(sphere, 10);
  CHECK(rule.weight_sum() == doctest::Approx(4.0 * M_PI).epsilon(1e-13));
}

TEST_CASE("torus rule is exact on products of cosines") {
  const SpectralManifold torus = SpectralManifold::torus2();
  const QuadratureRule rule = global_quadrature(torus, 7);
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double v = std::sqrt(2.0) * std::cos(2.0 * M_PI * rule.nodes[q].x[0]);
    acc += rule.weights[q] * v * v;
  }
  CHECK(acc == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("ball quadrature weight sums") {
  const SpectralManifold torus = SpectralManifold::torus2();
  const QuadratureRule tq = ball_quadrature(torus, Point{0.3, 0.4}, 0.25);
  CHECK(std::fabs(tq.weight_sum() - M_PI / 16.0) <= 1e-8);

  const SpectralManifold sphere = SpectralManifold::sphere2();
  const QuadratureRule sq = ball_quadrature(sphere, Point{0.7, 1.3}, 0.5);
  CHECK(std::fabs(sq.weight_sum() - 2.0 * M_PI * (1.0 - std::cos(0.5))) <= 1e-8);
  // constant integrand: sum w * 1 equals the cap area (same check), and
  // the constant mode integrates to vol(B)/sqrt(vol(M)) etc.
  const EigenBasis basis(torus, 7);
  double acc = 0.0;
  for (std::size_t q = 0; q < tq.nodes.size(); ++q)
    acc += tq.weights[q];  // phi_1 = 1 on the unit torus
  CHECK(acc == doctest::Approx(M_PI * 0.25 * 0.25).epsilon(1e-9));

  CHECK_THROWS_AS(ball_quadrature(torus, Point{0.0, 0.0}, 0.7), radius_too_large_error);
}

TEST_CASE("ball quadrature on a product manifold") {
  const auto prod = SpectralManifold::product(SpectralManifold::torus2(),
                                              SpectralManifold::circle());
  const Point c{0.1, 0.2, 0.3};
  const double r = 0.3;
  const QuadratureRule rule = ball_quadrature(prod, c, r);
  CHECK(std::fabs(rule.weight_sum() - prod.ball_volume(r)) <= 1e-8);
  for (const auto& p : rule.nodes) CHECK(prod.distance(p, c) <= r + 1e-12);
}

TEST_CASE("Weyl growth ratio") {
  // k_L (2 pi)^m / (vol sigma_m L^m) stays in [0.7, 1.3] for L >= 40
  const SpectralManifold torus = SpectralManifold::torus2();
  const SpectralManifold sphere = SpectralManifold::sphere2();
  for (double L : {40.0, 60.0, 80.0}) {
    const double rt = eigenspace_dimension(torus, L) * 4.0 * M_PI / (L * L);
    CHECK(rt >= 0.7);
    CHECK(rt <= 1.3);
    const double rs = eigenspace_dimension(sphere, L) / (L * L);
    CHECK(rs >= 0.7);
    CHECK(rs <= 1.3);
  }
  // bounded above/below over the wider range too
  for (double L = 10; L <= 80; L += 10) {
    const double rt = eigenspace_dimension(torus, L) * 4.0 * M_PI / (L * L);
    CHECK(rt > 0.5);
    CHECK(rt < 2.0);
  }
}

TEST_CASE("product eigenvalues satisfy the Pythagorean identity") {
  const auto prod = SpectralManifold::product(SpectralManifold::torus2(),
                                              SpectralManifold::circle());
  const EigenBasis basis(prod, 16);
  const EigenBasis ba(SpectralManifold::torus2(), 16);
  const EigenBasis bb(SpectralManifold::circle(), 16);
  for (const Mode& md : basis.modes()) {
    const double fa = ba.frequency(md.a);
    const double fb = bb.frequency(md.b);
    CHECK(md.frequency * md.frequency == doctest::Approx(fa * fa + fb * fb).epsilon(1e-14));
  }
  // torus2 == circle x circle: identical spectra
  const auto t2 = SpectralManifold::product(SpectralManifold::circle(),
                                            SpectralManifold::circle());
  CHECK(eigenspace_dimension(t2, 13.0) == 13);
}

TEST_CASE("manifold parsing") {
  CHECK(SpectralManifold::parse("torus2").kind() == ManifoldKind::torus2);
  CHECK(SpectralManifold::parse("product(torus2, circle)").dimension() == 3);
  CHECK(SpectralManifold::parse("product(product(circle,circle),circle)").dimension() == 3);
  CHECK_THROWS_AS(SpectralManifold::parse("klein"), unimplemented_manifold_error);
}

TEST_CASE("canonical wrapping") {
  const SpectralManifold torus = SpectralManifold::torus2();
  const Point p = torus.canonical(Point{1.25, -0.25});
  CHECK(p.x[0] == doctest::Approx(0.25));
  CHECK(p.x[1] == doctest::Approx(0.75));
  const SpectralManifold sphere = SpectralManifold::sphere2();
  const Point q = sphere.canonical(Point{-0.3, 0.0});
  CHECK(q.x[0] == doctest::Approx(0.3));
  CHECK(q.x[1] == doctest::Approx(M_PI));
}
