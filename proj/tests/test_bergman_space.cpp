#include <cmath>
#include <random>

#include "bergman/bergman_space.hpp"
#include "bergman/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bergman;
using oracle::pi;

namespace {

const QuadratureRule& disk_rule() {
  static const QuadratureRule rule = build_quadrature(Domain::disk(), 64, 256);
  return rule;
}

const QuadratureRule& annulus_rule() {
  static const QuadratureRule rule = build_quadrature(Domain::annulus(0.5), 64, 256);
  return rule;
}

Symbol random_symbol(std::mt19937& rng, bool allow_log) {
  std::uniform_int_distribution<int> count(1, 3), power(0, 3), coin(0, 3), digits(-20, 20);
  std::vector<Term> terms;
  for (int i = count(rng); i > 0; --i) {
    Term t;
    t.m = power(rng);
    t.n = power(rng);
    t.alpha = coin(rng) == 0 ? 0.5 : 0.0;
    t.p = (allow_log && coin(rng) == 0) ? 1 : 0;
    t.coeff = cplx(digits(rng) / 4.0, coin(rng) == 0 ? digits(rng) / 8.0 : 0.0);
    terms.push_back(t);
  }
  return Symbol(terms);
}

}  // namespace

TEST_CASE("BasisIndexSet layout") {
  const BasisIndexSet disk(Domain::disk(), 8);
  CHECK(disk.first() == 0);
  CHECK(disk.last() == 7);
  CHECK(disk.size() == 8);
  CHECK(disk.offset(3) == 3);
  const BasisIndexSet ann(Domain::annulus(0.5), 4);
  CHECK(ann.first() == -4);
  CHECK(ann.last() == 4);
  CHECK(ann.size() == 9);
  CHECK(ann.offset(-1) == 3);
  CHECK(ann.index(3) == -1);
  CHECK_THROWS_AS(BasisIndexSet(Domain::disk(), 0), Error);
}

TEST_CASE("basis_norm_sq examples") {
  CHECK(basis_norm_sq(Domain::disk(), 0) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(basis_norm_sq(Domain::disk(), 3) == doctest::Approx(pi / 4).epsilon(1e-15));
  CHECK(basis_norm_sq(Domain::annulus(0.5), -1) == doctest::Approx(4.355172).epsilon(1e-6));
  CHECK(basis_norm_sq(Domain::annulus(0.5), -1) == doctest::Approx(2 * pi * std::log(2.0)).epsilon(1e-15));
  for (int n = -5; n <= 5; ++n) {
    CHECK(basis_norm_sq(Domain::annulus(0.3), n) ==
          doctest::Approx(oracle::annulus_norm_sq(n, 0.3)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(basis_norm_sq(Domain::disk(), -1), Error);
}

TEST_CASE("eval_basis examples") {
  CHECK(eval_basis(Domain::disk(), 0, {0.3, -0.2}).real() == doctest::Approx(0.5641896).epsilon(1e-7));
  CHECK(eval_basis(Domain::disk(), 1, 0.5).real() == doctest::Approx(0.3989423).epsilon(1e-7));
  CHECK(eval_basis(Domain::annulus(0.5), -1, 0.75).real() == doctest::Approx(0.638905).epsilon(1e-6));
  CHECK_THROWS_AS(eval_basis(Domain::disk(), 0, 1.5), Error);
  CHECK_THROWS_AS(eval_basis(Domain::annulus(0.5), 0, 0.1), Error);
}

TEST_CASE("basis is orthonormal under an independent Simpson oracle") {
  for (const double rho : {0.0, 0.5}) {
    const Domain d = rho > 0 ? Domain::annulus(rho) : Domain::disk();
    const int lo = rho > 0 ? -2 : 0;
    for (int j = lo; j <= 2; ++j) {
      for (int k = lo; k <= 2; ++k) {
        const cplx ip = oracle::simpson_polar(
            [&](cplx z) { return eval_basis(d, k, z) * std::conj(eval_basis(d, j, z)); }, rho, 2000, 16);
        CHECK(std::abs(ip - cplx(j == k ? 1.0 : 0.0)) < 1e-9);
      }
    }
  }
}

TEST_CASE("project_basis examples") {
  const Domain disk = Domain::disk();
  auto c = project_basis(disk, parse_symbol("zbar"), 8, disk_rule());
  for (auto v : c.coeffs) CHECK(v == cplx(0.0));

  c = project_basis(disk, parse_symbol("z*zbar"), 8, disk_rule());
  CHECK(std::abs(c.at(0) - std::sqrt(pi) / 2) < 1e-14);
  CHECK(std::abs(c.at(0) - 0.886227) < 1e-6);
  for (int k = 1; k < 8; ++k) CHECK(c.at(k) == cplx(0.0));
  CHECK(std::abs(c.evaluate(0.3) - 0.5) < 1e-14);

  c = project_basis(disk, parse_symbol("z^2*zbar"), 8, disk_rule());
  // (2/3) z = (2/3) ||z|| e_1
  CHECK(std::abs(c.at(1) - (2.0 / 3.0) * std::sqrt(pi / 2)) < 1e-14);
  CHECK(std::abs(c.evaluate({0.2, 0.4}) - (2.0 / 3.0) * cplx(0.2, 0.4)) < 1e-14);
}

TEST_CASE("closed-form projection of monomials, and the quadrature path agrees") {
  const Domain disk = Domain::disk();
  for (int m = 0; m <= 5; ++m) {
    for (int n = 0; n <= 5; ++n) {
      const Symbol g = Symbol::monomial(m, n);
      const auto closed = project_basis(disk, g, 12, disk_rule(), Method::closed_form);
      const auto quad = project_basis(disk, g, 12, disk_rule(), Method::quadrature);
      const cplx z(0.31, -0.42);
      const cplx expected = m >= n ? (m - n + 1.0) / (m + 1.0) * std::pow(z, m - n) : cplx(0.0);
      CHECK(std::abs(closed.evaluate(z) - expected) < 1e-13);
      for (std::size_t i = 0; i < closed.coeffs.size(); ++i) {
        CHECK(std::abs(closed.coeffs[i] - quad.coeffs[i]) < 1e-8);
      }
    }
  }
}

TEST_CASE("project_kernel examples") {
  const auto& rule = disk_rule();
  auto v = project_kernel([](cplx w) { return w * w; }, {0.3}, rule);
  CHECK(std::abs(v.values[0] - 0.09) < 1e-8);
  v = project_kernel([](cplx w) { return std::conj(w); }, {0.3}, rule);
  CHECK(std::abs(v.values[0]) < 1e-8);

  const Symbol g = parse_symbol("zbar + z^2");
  const auto basis = project_basis(Domain::disk(), g, 32, rule);
  v = project_kernel([&](cplx w) { return eval_symbol(g, w); }, {0.2}, rule);
  CHECK(std::abs(v.values[0] - basis.evaluate(0.2)) < 1e-6);
  CHECK_FALSE(v.any_near_boundary());

  v = project_kernel([](cplx w) { return w; }, {0.5, 0.96}, rule);
  CHECK_FALSE(v.near_boundary[0]);
  CHECK(v.near_boundary[1]);
  CHECK(v.any_near_boundary());
}

TEST_CASE("analytic_decompose examples") {
  const Domain disk = Domain::disk();
  auto d = analytic_decompose(disk, parse_symbol("z^3"), 8, disk_rule());
  CHECK(std::abs(d.analytic_part.at(3) - std::sqrt(pi / 4)) < 1e-14);
  CHECK(d.residual_norm < 1e-12);
  CHECK(std::abs(d.evaluate_residual({0.4, 0.1})) < 1e-14);

  d = analytic_decompose(disk, parse_symbol("zbar"), 8, disk_rule());
  CHECK(d.analytic_part.norm() == 0.0);
  CHECK(d.residual_norm == doctest::Approx(std::sqrt(pi / 2)).epsilon(1e-12));
  CHECK(d.residual_norm == doctest::Approx(1.253314).epsilon(1e-6));
  CHECK(std::abs(d.evaluate_residual({0.4, 0.1}) - cplx(0.4, -0.1)) < 1e-15);

  d = analytic_decompose(disk, parse_symbol("z^2*zbar"), 8, disk_rule());
  CHECK(std::abs(d.analytic_part.at(1) - (2.0 / 3.0) * std::sqrt(pi / 2)) < 1e-14);
  const double expected_sq = pi * (0.25 - 2.0 / 9.0);
  CHECK(d.residual_norm * d.residual_norm == doctest::Approx(expected_sq).epsilon(1e-10));
  // Simpson oracle on |z^2 zbar - (2/3) z|^2.
  const cplx oracle_sq = oracle::simpson_polar(
      [](cplx z) { return cplx(std::norm(z * z * std::conj(z) - (2.0 / 3.0) * z)); }, 0.0, 2000, 16);
  CHECK(std::abs(oracle_sq.real() - expected_sq) < 1e-10);
}

TEST_CASE("coeffs_to_symbol realizes the same function, including negative indices") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const Domain& d : {Domain::disk(), Domain::annulus(0.5)}) {
    CoeffVector v(BasisIndexSet(d, 5));
    for (auto& c : v.coeffs) c = cplx(u(rng), u(rng));
    const Symbol s = coeffs_to_symbol(v);
    for (int i = 0; i < 20; ++i) {
      const cplx z = oracle::random_interior_point(rng, d.inner_radius());
      CHECK(std::abs(eval_symbol(s, z) - v.evaluate(z)) < 1e-12);
    }
  }
}

TEST_CASE("property: projection is idempotent on analytic functions") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Domain d = (trial % 2) ? Domain::annulus(0.5) : Domain::disk();
    const auto& rule = d.is_disk() ? disk_rule() : annulus_rule();
    CoeffVector v(BasisIndexSet(d, 8));
    for (auto& c : v.coeffs) c = cplx(u(rng), u(rng));
    const auto again = project_function(d, [&](cplx z) { return v.evaluate(z); }, 8, rule);
    for (std::size_t i = 0; i < v.coeffs.size(); ++i) CHECK(std::abs(again.coeffs[i] - v.coeffs[i]) < 1e-10);
    const auto via_symbol = project_basis(d, coeffs_to_symbol(v), 8, rule);
    for (std::size_t i = 0; i < v.coeffs.size(); ++i) {
      CHECK(std::abs(via_symbol.coeffs[i] - v.coeffs[i]) < 1e-10);
    }
  }
}

TEST_CASE("property: residual is orthogonal to the truncated basis and Pythagoras holds") {
  std::mt19937 rng(8080);
  for (int trial = 0; trial < 24; ++trial) {
    const bool annulus = trial % 2;
    const Domain d = annulus ? Domain::annulus(0.5) : Domain::disk();
    const auto& rule = annulus ? annulus_rule() : disk_rule();
    const Symbol psi = random_symbol(rng, annulus);
    const int N = 6;
    const auto dec = analytic_decompose(d, psi, N, rule);
    const BasisIndexSet idx(d, N);
    for (int j = idx.first(); j <= idx.last(); ++j) {
      const cplx ip = integrate(rule, [&](cplx z) {
        return (eval_symbol(psi, z) - dec.analytic_part.evaluate(z)) * std::conj(eval_basis(d, j, z));
      });
      CHECK_MESSAGE(std::abs(ip) < 1e-8, to_string(psi) << " j=" << j);
    }
    const double total = l2_norm(rule, psi);
    const double f = dec.analytic_part.norm();
    CHECK(std::abs(total * total - (f * f + dec.residual_norm * dec.residual_norm)) <
          1e-8 * std::max(1.0, total * total));
  }
}

TEST_CASE("property: kernel and basis projections agree inside |z| <= 0.9") {
  std::mt19937 rng(11);
  const auto& rule = disk_rule();
  for (int trial = 0; trial < 5; ++trial) {
    const Symbol g = random_symbol(rng, false);
    const auto basis = project_basis(Domain::disk(), g, 40, rule);
    std::vector<cplx> points;
    for (int i = 0; i < 8; ++i) points.push_back(oracle::random_interior_point(rng, 0.0, 0.9));
    const auto kernel = project_kernel([&](cplx w) { return eval_symbol(g, w); }, points, rule);
    for (std::size_t i = 0; i < points.size(); ++i) {
      CHECK(std::abs(kernel.values[i] - basis.evaluate(points[i])) < 1e-6);
    }
  }
}
