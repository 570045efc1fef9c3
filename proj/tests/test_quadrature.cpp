#include <cmath>
#include <random>

#include "bergman/error.hpp"
#include "bergman/quadrature.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bergman;
using oracle::pi;

TEST_CASE("domain construction and parsing") {
  CHECK(Domain::disk().is_disk());
  CHECK(Domain::annulus(0.5).inner_radius() == 0.5);
  CHECK(Domain::parse("disk") == Domain::disk());
  CHECK(Domain::parse("annulus:0.25") == Domain::annulus(0.25));
  CHECK(Domain::annulus(0.5).area() == doctest::Approx(0.75 * pi).epsilon(1e-15));

  for (double bad : {0.0, 1.0, 1.5, -0.2}) {
    try {
      Domain::annulus(bad);
      FAIL("accepted rho = " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::domain_error);
    }
  }
  CHECK_THROWS_AS(Domain::parse("annulus:1.5"), Error);
  CHECK_THROWS_AS(Domain::parse("annulus:"), Error);
  CHECK_THROWS_AS(Domain::parse("square"), Error);
  CHECK(Domain::annulus(0.5).contains({0.75, 0.0}));
  CHECK_FALSE(Domain::annulus(0.5).contains({0.25, 0.0}));
}

TEST_CASE("gauss-legendre nodes against known low orders") {
  std::vector<double> x, w;
  gauss_legendre(1, x, w);
  CHECK(x[0] == doctest::Approx(0.0));
  CHECK(w[0] == doctest::Approx(2.0));
  gauss_legendre(2, x, w);
  CHECK(std::abs(x[0]) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-15));
  gauss_legendre(3, x, w);
  CHECK(std::abs(x[0]) == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));
  CHECK(w[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("build_quadrature examples") {
  const auto disk = build_quadrature(Domain::disk(), 8, 16);
  CHECK(std::abs(integrate(disk, [](cplx) { return cplx(1.0); }) - pi) < 1e-12);
  CHECK(std::abs(integrate(disk, [](cplx z) { return cplx(std::norm(z)); }) - pi / 2) < 1e-12);
  const auto ann = build_quadrature(Domain::annulus(0.5), 8, 16);
  CHECK(std::abs(integrate(ann, [](cplx) { return cplx(1.0); }) - 0.75 * pi) < 1e-12);
  CHECK_THROWS_AS(build_quadrature(Domain::disk(), 0, 16), Error);
  CHECK_THROWS_AS(build_quadrature(Domain::disk(), 8, 0), Error);
}

TEST_CASE("integrate examples") {
  const auto disk = build_quadrature(Domain::disk(), 16, 32);
  CHECK(std::abs(integrate(disk, [](cplx z) { return z; })) < 1e-14);
  CHECK(std::abs(integrate(disk, [](cplx z) { return z * std::conj(z); }) - pi / 2) < 1e-12);

  const auto ann = build_quadrature(Domain::annulus(0.5), 32, 16);
  const double expected = 2.0 * pi * oracle::log_power_integral(1.0, 1, 0.5);
  CHECK(expected == doctest::Approx(-0.6337007).epsilon(1e-6));
  CHECK(2.0 * pi * -0.1008566 == doctest::Approx(expected).epsilon(1e-6));
  CHECK(std::abs(integrate(ann, [](cplx z) { return cplx(std::log(std::abs(z))); }) - expected) < 1e-12);
}

TEST_CASE("integrate reports non-finite integrands") {
  const auto disk = build_quadrature(Domain::disk(), 4, 4);
  CHECK_THROWS_AS(integrate(disk, [](cplx) { return cplx(NAN); }), Error);
}

TEST_CASE("integrate_adaptive examples") {
  const auto one = integrate_adaptive(Domain::disk(), [](cplx) { return cplx(1.0); }, 1e-12);
  CHECK(one.converged);
  CHECK(std::abs(one.value - pi) < 1e-12);
  CHECK(one.error_estimate < 1e-12);

  // 2 pi \int_0^1 r^{1/2} r dr = 4 pi / 5
  const double oracle_half = 2.0 * pi * oracle::power_integral(1.5, 0.0);
  CHECK(oracle_half == doctest::Approx(4.0 * pi / 5.0).epsilon(1e-15));
  const auto half = integrate_adaptive(Domain::disk(), [](cplx z) { return cplx(std::sqrt(std::abs(z))); }, 1e-10);
  CHECK(half.converged);
  CHECK(half.error_estimate < 1e-10);
  CHECK(std::abs(half.value - oracle_half) < 1e-10);

  const double oracle_log2 = 2.0 * pi * oracle::log_power_integral(1.0, 2, 0.5);
  const auto log2 = integrate_adaptive(
      Domain::annulus(0.5), [](cplx z) { return cplx(std::pow(std::log(std::abs(z)), 2)); }, 1e-10);
  CHECK(log2.converged);
  CHECK(std::abs(log2.value - oracle_log2) < 1e-10);
}

TEST_CASE("radial_moment matches antiderivatives") {
  for (double s : {0.0, 1.0, 2.5, 7.0}) {
    for (int p = 0; p <= 2; ++p) {
      CHECK(radial_moment(Domain::disk(), s, p) ==
            doctest::Approx(oracle::log_power_integral(s, p, 0.0)).epsilon(1e-13));
      CHECK(radial_moment(Domain::annulus(0.3), s, p) ==
            doctest::Approx(oracle::log_power_integral(s, p, 0.3)).epsilon(1e-13));
    }
  }
  CHECK(radial_moment(Domain::annulus(0.5), -1.0, 0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(radial_moment(Domain::annulus(0.5), -3.0, 1) ==
        doctest::Approx(oracle::log_power_integral(-3.0, 1, 0.5)).epsilon(1e-13));
  CHECK_THROWS_AS(radial_moment(Domain::disk(), -1.0, 0), Error);
}

TEST_CASE("property: weights positive, nodes interior, weight sum equals area") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> order(1, 80);
  std::uniform_real_distribution<double> radius(0.05, 0.95);
  for (int trial = 0; trial < 60; ++trial) {
    const Domain d = (trial % 2) ? Domain::annulus(radius(rng)) : Domain::disk();
    const int n_r = order(rng);
    const int n_t = order(rng);
    const auto rule = build_quadrature(d, n_r, n_t);
    REQUIRE(rule.size() == static_cast<std::size_t>(n_r * n_t));
    double sum = 0.0;
    bool interior = true, positive = true;
    for (const auto& node : rule.nodes()) {
      sum += node.weight;
      positive = positive && node.weight > 0.0;
      interior = interior && node.r > d.inner_radius() && node.r < 1.0;
    }
    CHECK(positive);
    CHECK(interior);
    CHECK(std::abs(sum - d.area()) < 1e-12);
  }
}

TEST_CASE("property: exactness for r^a e^{ik theta}") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> order(8, 24);
  for (int trial = 0; trial < 20; ++trial) {
    const int n_r = order(rng);
    const int n_t = order(rng);
    const double rho = (trial % 2) ? 0.4 : 0.0;
    const Domain d = rho > 0.0 ? Domain::annulus(rho) : Domain::disk();
    const auto rule = build_quadrature(d, n_r, n_t);
    std::uniform_int_distribution<int> deg(0, 2 * n_r - 1);
    std::uniform_int_distribution<int> freq(-(n_t - 1), n_t - 1);
    for (int rep = 0; rep < 10; ++rep) {
      const int a = deg(rng);
      const int k = (rep == 0) ? 0 : freq(rng);
      const cplx got = integrate(rule, [&](cplx z) {
        return std::pow(std::abs(z), a) * std::exp(cplx(0.0, k * std::arg(z)));
      });
      const double expected = (k == 0) ? 2.0 * pi * oracle::power_integral(a + 1.0, rho) : 0.0;
      CHECK_MESSAGE(std::abs(got - expected) < 1e-12, "a=" << a << " k=" << k << " n_r=" << n_r);
    }
  }
}

TEST_CASE("property: adaptive error estimates shrink on smooth integrands") {
  auto f = [](cplx z) { return std::exp(z) * std::conj(z) + std::norm(z); };
  for (const Domain& d : {Domain::disk(), Domain::annulus(0.5)}) {
    const auto res = integrate_adaptive(d, f, 1e-11);
    CHECK(res.converged);
    const auto coarse = build_quadrature(d, res.n_r / 2, res.n_theta / 2);
    const auto coarser = build_quadrature(d, res.n_r / 4, res.n_theta / 4);
    const auto fine = build_quadrature(d, res.n_r, res.n_theta);
    const double e1 = std::abs(integrate(coarse, f) - integrate(coarser, f));
    const double e2 = std::abs(integrate(fine, f) - integrate(coarse, f));
    CHECK(e2 <= e1);
    const cplx ref = oracle::simpson_polar(f, d.inner_radius(), 4000, 64);
    CHECK(std::abs(res.value - ref) < 1e-9);
  }
}
