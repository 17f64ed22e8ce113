#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "bandlab/kernels.hpp"
#include "bandlab/rng.hpp"
#include "oracles.hpp"

using namespace bandlab;

TEST_CASE("smooth cutoff plateau, support and midpoint") {
  CHECK(smooth_cutoff(0.2, 0.5) == 1.0);
  CHECK(smooth_cutoff(0.2, 0.0) == 1.0);
  CHECK(smooth_cutoff(0.2, 1.0) == 0.0);
  CHECK(smooth_cutoff(0.2, 1.7) == 0.0);
  CHECK(smooth_cutoff(0.2, 0.9) == doctest::Approx(0.5).epsilon(1e-14));
  // nonincreasing on the ramp (C-infinity flat at the ends), strictly
  // decreasing away from them, values in [0, 1]
  double prev = 1.0;
  for (double x = 0.801; x < 1.0; x += 0.01) {
    const double b = smooth_cutoff(0.2, x);
    CHECK(b >= 0.0);
    CHECK(b <= 1.0);
    CHECK(b <= prev);
    if (x > 0.84 && x < 0.96) CHECK(b < prev);
    prev = b;
  }
}

TEST_CASE("filter weights") {
  CHECK(KernelSpec::sharp().weight(0.7) == 1.0);
  CHECK(KernelSpec::bochner_riesz(0).weight(0.7) == 1.0);  // S^0 = K
  CHECK(KernelSpec::bochner_riesz(2).weight(0.5) == doctest::Approx(0.25));
  CHECK(KernelSpec::smooth_squared(0.2).weight(0.9) == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("kernel diagonal values") {
  const SpectralManifold torus = SpectralManifold::torus2();
  const EigenBasis tb(torus, 7);
  const Point z{0.21, 0.66};
  CHECK(kernel_value(tb, KernelSpec::sharp(), z, z) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(oracles::torus_sharp_kernel(7, 0, 0) == doctest::Approx(5.0));

  const SpectralManifold sphere = SpectralManifold::sphere2();
  const EigenBasis sb(sphere, 2);
  const Point p{0.9, 2.2};
  CHECK(kernel_value(sb, KernelSpec::sharp(), p, p) ==
        doctest::Approx(1.0 / M_PI).epsilon(1e-12));
}

TEST_CASE("kernel off-diagonal matches direct summation") {
  const SpectralManifold torus = SpectralManifold::torus2();
  const EigenBasis basis(torus, 13);
  const Point z{0.15, 0.4}, w{0.55, 0.7};
  CHECK(kernel_value(basis, KernelSpec::sharp(), z, w) ==
        doctest::Approx(oracles::torus_sharp_kernel(13, z.x[0] - w.x[0], z.x[1] - w.x[1]))
            .epsilon(1e-12));

  const SpectralManifold sphere = SpectralManifold::sphere2();
  const EigenBasis sb(sphere, 10);
  const Point a{0.4, 0.3}, b{1.2, 2.0};
  CHECK(kernel_value(sb, KernelSpec::sharp(), a, b) ==
        doctest::Approx(oracles::sphere_sharp_kernel(10, sphere.distance(a, b))).epsilon(1e-10));
}

TEST_CASE("kernel symmetry is exact") {
  const SpectralManifold sphere = SpectralManifold::sphere2();
  const EigenBasis basis(sphere, 8);
  const Point z{0.4, 0.3}, w{2.0, 5.1};
  for (const auto spec : {KernelSpec::sharp(), KernelSpec::bochner_riesz(3),
                          KernelSpec::smooth(0.3)})
    CHECK(kernel_value(basis, spec, z, w) == kernel_value(basis, spec, w, z));
}

TEST_CASE("smooth filter equals sharp when the ramp is empty") {
  // torus L = 7: largest frequency is 2 pi < (1 - 0.05) * 7
  const SpectralManifold torus = SpectralManifold::torus2();
  const EigenBasis basis(torus, 7);
  const Point z{0.1, 0.9}, w{0.4, 0.2};
  CHECK(kernel_value(basis, KernelSpec::smooth(0.05), z, w) ==
        kernel_value(basis, KernelSpec::sharp(), z, w));
}

TEST_CASE("reproduce: orthonormal projection recovers point values") {
  const SpectralManifold torus = SpectralManifold::torus2();
  const EigenBasis basis(torus, 13);
  const QuadratureRule rule = global_quadrature(torus, 13);
  const Point z{0.37, 0.81};

  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(basis.size());
  e1[1] = 1.0;
  CHECK(reproduce(basis, rule, e1, z) == doctest::Approx(basis.evaluate(1, z)).epsilon(1e-12));

  CHECK(reproduce(basis, rule, Eigen::VectorXd::Zero(basis.size()), z) ==
        doctest::Approx(0.0));

  Rng rng(7);
  Eigen::VectorXd coeff(basis.size());
  for (int i = 0; i < basis.size(); ++i) coeff[i] = rng.normal();
  const double direct = coeff.dot(basis.evaluate_all(z));
  CHECK(std::fabs(reproduce(basis, rule, coeff, z) - direct) <= 1e-10);
}

TEST_CASE("reproducing norm identity") {
  // ||K_L(z, .)||_2^2 = K_L(z, z) under exact quadrature
  const SpectralManifold sphere = SpectralManifold::sphere2();
  const EigenBasis basis(sphere, 8);
  const QuadratureRule rule = global_quadrature(sphere, 8);
  for (const Point& z : sphere.low_discrepancy_points(5)) {
    double norm_sq = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double kv = kernel_value(basis, KernelSpec::sharp(), z, rule.nodes[q]);
      norm_sq += rule.weights[q] * kv * kv;
    }
    CHECK(std::fabs(norm_sq - kernel_value(basis, KernelSpec::sharp(), z, z)) <= 1e-10);
  }
}

TEST_CASE("Bochner-Riesz diagonal sandwich") {
  // 2^{-N} K_{L/2}(z,z) <= S^N_L(z,z) <= K_L(z,z)
  const SpectralManifold torus = SpectralManifold::torus2();
  const int order = 3;
  for (double L : {13.0, 25.0}) {
    const EigenBasis basis(torus, L);
    const EigenBasis half(torus, L / 2.0);
    for (const Point& z : torus.low_discrepancy_points(4)) {
      const double s = kernel_value(basis, KernelSpec::bochner_riesz(order), z, z);
      CHECK(s <= kernel_value(basis, KernelSpec::sharp(), z, z) + 1e-12);
      CHECK(s >= std::pow(2.0, -order) * kernel_value(half, KernelSpec::sharp(), z, z) - 1e-12);
    }
  }
}

TEST_CASE("smooth transform is an L2 contraction") {
  // ||B^eps_L(g)||_2 <= ||g||_2: multiplier values lie in [0, 1]
  const SpectralManifold torus = SpectralManifold::torus2();
  const EigenBasis basis(torus, 20);
  const Eigen::VectorXd h = filter_weights(basis, KernelSpec::smooth(0.3));
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    Eigen::VectorXd c(basis.size());
    for (int i = 0; i < basis.size(); ++i) c[i] = rng.normal();
    CHECK((h.array() * c.array()).matrix().norm() <= c.norm());
  }
}

TEST_CASE("smooth kernel L1 mass stays bounded across bandwidths") {
  const SpectralManifold torus = SpectralManifold::torus2();
  const Point z{0.0, 0.0};
  double lo = 1e300, hi = 0.0;
  for (double L : {20.0, 40.0, 80.0}) {
    const EigenBasis basis(torus, L);
    // |B| is not band-limited; a rule at 2L samples it densely enough
    const QuadratureRule rule = global_quadrature(torus, 2.0 * L);
    const Eigen::VectorXd h = filter_weights(basis, KernelSpec::smooth(0.3));
    const Eigen::VectorXd vz = basis.evaluate_all(z);
    double mass = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const Eigen::VectorXd vw = basis.evaluate_all(rule.nodes[q]);
      mass += rule.weights[q] * std::fabs((h.array() * vz.array() * vw.array()).sum());
    }
    lo = std::min(lo, mass);
    hi = std::max(hi, mass);
  }
  CHECK(hi / lo <= 2.0);
}

TEST_CASE("decay fit: smooth filter is uniformly bounded, sharp is not") {
  const SpectralManifold torus = SpectralManifold::torus2();
  const std::vector<double> bandwidths{20.0, 40.0, 80.0};

  const DecayFit smooth = decay_fit(torus, KernelSpec::smooth(0.3), bandwidths, 3);
  double lo = 1e300, hi = 0.0;
  for (const auto& [L, c] : smooth.per_bandwidth) {
    CHECK(c > 0.0);
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  CHECK(hi / lo <= 4.0);

  // no uniform constant for the sharp filter: C_N(L) grows with L
  const DecayFit sharp = decay_fit(torus, KernelSpec::sharp(), bandwidths, 3);
  for (std::size_t i = 1; i < sharp.per_bandwidth.size(); ++i)
    CHECK(sharp.per_bandwidth[i].second > sharp.per_bandwidth[i - 1].second);
  // and it does outgrow the smooth constant's spread by L = 120
  const DecayFit far = decay_fit(torus, KernelSpec::sharp(), {20.0, 120.0}, 3);
  CHECK(far.per_bandwidth.back().second / far.per_bandwidth.front().second > 4.0);

  // the d = 0 probe forces C_N >= K(z,z) / L^m > 0
  for (const auto& [L, c] : smooth.per_bandwidth) {
    const EigenBasis basis(torus, L);
    const Point z{0.0, 0.0};
    CHECK(c >= kernel_value(basis, KernelSpec::smooth(0.3), z, z) / (L * L) - 1e-12);
  }
}

TEST_CASE("Bernstein ratio: single mode oracle") {
  // f = sqrt(2) cos(2 pi n x): ||grad f||_inf = 2 sqrt(2) pi n, ||f||_inf = sqrt(2)
  const SpectralManifold torus = SpectralManifold::torus2();
  const double L = 20.0;
  const EigenBasis basis(torus, L);
  int pick = -1;
  for (int i = 0; i < basis.size(); ++i) {
    const Mode& md = basis.modes()[static_cast<std::size_t>(i)];
    if (md.a == 1 && md.b == 3 && md.c == 0) pick = i;
  }
  REQUIRE(pick >= 0);
  Eigen::VectorXd coeff = Eigen::VectorXd::Zero(basis.size());
  coeff[pick] = 1.0;
  // finite-difference sup over a dense grid, as in the implementation
  double sup_f = 0.0, sup_g = 0.0;
  const double h = 1e-5;
  for (const Point& z : torus.uniform_points(64 * 64)) {
    sup_f = std::max(sup_f, std::fabs(coeff.dot(basis.evaluate_all(z))));
    Point zp = z, zm = z;
    zp.x[0] += h;
    zm.x[0] -= h;
    const double gx =
        (coeff.dot(basis.evaluate_all(zp)) - coeff.dot(basis.evaluate_all(zm))) / (2.0 * h);
    sup_g = std::max(sup_g, std::fabs(gx));
  }
  CHECK(sup_g / (L * sup_f) == doctest::Approx(2.0 * M_PI * 3.0 / L).epsilon(1e-3));
}

TEST_CASE("Bernstein ratio bounds") {
  const SpectralManifold torus = SpectralManifold::torus2();
  // constant-only space: zero gradient
  CHECK(bernstein_ratio(torus, 1.0, 3) == 0.0);
  // random band-limited functions: frequencies <= L bound the ratio
  CHECK(bernstein_ratio(torus, 20.0, 10) <= 1.05);
}
