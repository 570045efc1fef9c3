#include "bergman/bergman_space.hpp"

#include <cmath>
#include <numbers>

#include "bergman/error.hpp"

namespace bergman {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBoundaryFlagRadius = 0.95;

cplx zpow(cplx z, int k) {
  cplx out = 1.0;
  const cplx base = (k < 0) ? 1.0 / z : z;
  for (int i = 0; i < std::abs(k); ++i) out *= base;
  return out;
}

void require_same_domain(const Domain& domain, const QuadratureRule& rule) {
  if (!(rule.domain() == domain)) {
    throw Error(ErrorCode::dimension_mismatch, "quadrature rule built for " +
                                                   rule.domain().to_string() + ", expected " +
                                                   domain.to_string());
  }
}

std::vector<cplx> sample(const QuadratureRule& rule, const Integrand& g) {
  std::vector<cplx> values;
  values.reserve(rule.size());
  for (const auto& node : rule.nodes()) values.push_back(g(node.z));
  return values;
}

}  // namespace

BasisIndexSet::BasisIndexSet(const Domain& domain, int N) : domain_(domain), N_(N) {
  if (N < 1) throw Error(ErrorCode::invalid_argument, "truncation order must be at least 1");
}

cplx CoeffVector::evaluate(cplx z) const {
  cplx sum = 0.0;
  for (int k = indices.first(); k <= indices.last(); ++k) {
    sum += at(k) * eval_basis(indices.domain(), k, z);
  }
  return sum;
}

double CoeffVector::norm() const {
  double s = 0.0;
  for (const cplx& c : coeffs) s += std::norm(c);
  return std::sqrt(s);
}

double basis_norm_sq(const Domain& domain, int n) {
  if (domain.is_disk()) {
    if (n < 0) throw Error(ErrorCode::invalid_argument, "negative basis index on the disk");
    return std::numbers::pi / (n + 1);
  }
  const double rho = domain.inner_radius();
  if (n == -1) return kTwoPi * std::log(1.0 / rho);
  return std::numbers::pi * (1.0 - std::pow(rho, 2.0 * n + 2.0)) / (n + 1);
}

cplx eval_basis(const Domain& domain, int n, cplx z) {
  if (!domain.contains(z)) throw Error(ErrorCode::domain_error, "point outside " + domain.to_string());
  return zpow(z, n) / std::sqrt(basis_norm_sq(domain, n));
}

CoeffVector project_basis(const Domain& domain, const Symbol& g, int N,
                          const QuadratureRule& rule, Method method) {
  if (method == Method::quadrature) {
    return project_function(domain, [&g](cplx z) { return eval_symbol(g, z); }, N, rule);
  }
  CoeffVector out(BasisIndexSet(domain, N));
  for (int k = out.indices.first(); k <= out.indices.last(); ++k) {
    cplx sum = 0.0;
    for (const Term& t : g.terms()) {
      if (t.m - t.n != k) continue;
      sum += t.coeff * kTwoPi * radial_moment(domain, t.m + t.n + t.alpha + k + 1.0, t.p);
    }
    out.at(k) = sum / std::sqrt(basis_norm_sq(domain, k));
  }
  return out;
}

CoeffVector project_function(const Domain& domain, const Integrand& g, int N,
                             const QuadratureRule& rule) {
  require_same_domain(domain, rule);
  CoeffVector out(BasisIndexSet(domain, N));
  const auto values = sample(rule, g);
  const auto& nodes = rule.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) {
      throw Error(ErrorCode::non_finite, "non-finite integrand at node " + std::to_string(i));
    }
  }
  for (int k = out.indices.first(); k <= out.indices.last(); ++k) {
    const double scale = 1.0 / std::sqrt(basis_norm_sq(domain, k));
    cplx sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      sum += nodes[i].weight * values[i] * std::conj(zpow(nodes[i].z, k));
    }
    out.at(k) = sum * scale;
  }
  return out;
}

Symbol coeffs_to_symbol(const CoeffVector& v) {
  std::vector<Term> terms;
  const Domain& d = v.indices.domain();
  for (int k = v.indices.first(); k <= v.indices.last(); ++k) {
    const cplx c = v.at(k) / std::sqrt(basis_norm_sq(d, k));
    if (k >= 0) {
      terms.push_back({c, k, 0, 0.0, 0});
    } else {
      terms.push_back({c, 0, -k, 2.0 * k, 0});
    }
  }
  return Symbol(std::move(terms));
}

bool KernelProjection::any_near_boundary() const {
  for (bool b : near_boundary) {
    if (b) return true;
  }
  return false;
}

KernelProjection project_kernel(const Integrand& g, const std::vector<cplx>& points,
                                const QuadratureRule& rule) {
  if (!rule.domain().is_disk()) {
    throw Error(ErrorCode::invalid_argument, "kernel projection is available on the disk only");
  }
  const auto values = sample(rule, g);
  const auto& nodes = rule.nodes();
  KernelProjection out;
  out.values.reserve(points.size());
  for (const cplx& z : points) {
    if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::domain_error, "kernel evaluation point outside the disk");
    out.near_boundary.push_back(std::abs(z) > kBoundaryFlagRadius);
    cplx sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const cplx denom = 1.0 - z * std::conj(nodes[i].z);
      sum += nodes[i].weight * values[i] / (std::numbers::pi * denom * denom);
    }
    out.values.push_back(sum);
  }
  return out;
}

double l2_norm(const QuadratureRule& rule, const Symbol& g) {
  const cplx v = integrate(rule, [&g](cplx z) { return cplx(std::norm(eval_symbol(g, z)), 0.0); });
  return std::sqrt(std::max(0.0, v.real()));
}

DecompositionResult analytic_decompose(const Domain& domain, const Symbol& psi, int N,
                                       const QuadratureRule& rule, Method method) {
  require_same_domain(domain, rule);
  CoeffVector f = project_basis(domain, psi, N, rule, method);
  Symbol u = psi - coeffs_to_symbol(f);
  const double norm = l2_norm(rule, u);
  return {std::move(f), std::move(u), norm};
}

}  // namespace bergman
