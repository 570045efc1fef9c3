#include "bergman/quadrature.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

#include "bergman/error.hpp"

namespace bergman {

namespace {

constexpr double kRadiusSlack = 1e-12;

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace

Domain Domain::annulus(double inner_radius) {
  if (!(inner_radius > 0.0 && inner_radius < 1.0)) {
    throw Error(ErrorCode::domain_error,
                "annulus inner radius must lie in (0, 1), got " + shortest(inner_radius));
  }
  return Domain(Kind::annulus, inner_radius);
}

Domain Domain::parse(const std::string& text) {
  if (text == "disk") return disk();
  const std::string prefix = "annulus:";
  if (text.rfind(prefix, 0) == 0) {
    const char* first = text.data() + prefix.size();
    const char* last = text.data() + text.size();
    double rho = 0.0;
    auto res = std::from_chars(first, last, rho);
    if (res.ec != std::errc() || res.ptr != last) {
      throw Error(ErrorCode::invalid_argument, "malformed annulus radius in '" + text + "'");
    }
    return annulus(rho);
  }
  throw Error(ErrorCode::invalid_argument,
              "unknown domain '" + text + "' (expected disk or annulus:<rho>)");
}

double Domain::area() const noexcept {
  return std::numbers::pi * (1.0 - rho_ * rho_);
}

bool Domain::contains(cplx z) const noexcept {
  const double r = std::abs(z);
  if (!std::isfinite(r) || r > 1.0 + kRadiusSlack) return false;
  return kind_ == Kind::disk || r >= rho_ - kRadiusSlack;
}

std::string Domain::to_string() const {
  return is_disk() ? std::string("disk") : "annulus:" + shortest(rho_);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);

  // Returns P_n(x) and P_n'(x) via the three-term recurrence.
  auto legendre = [n](double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };

  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [pn, dpn] = legendre(x);
      const double dx = pn / dpn;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dpn = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dpn * dpn);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

QuadratureRule build_quadrature(const Domain& domain, int n_r, int n_theta) {
  if (n_r < 1 || n_theta < 1) {
    throw Error(ErrorCode::invalid_argument, "quadrature orders must be positive");
  }
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(n_r, x, w);

  const double a = domain.inner_radius();
  const double half_len = 0.5 * (1.0 - a);
  const double mid = 0.5 * (1.0 + a);
  const double dtheta = 2.0 * std::numbers::pi / n_theta;

  QuadratureRule rule(domain, n_r, n_theta);
  rule.nodes_.reserve(static_cast<std::size_t>(n_r) * n_theta);
  for (int i = 0; i < n_r; ++i) {
    const double r = mid + half_len * x[i];
    const double wr = half_len * w[i] * r * dtheta;
    for (int t = 0; t < n_theta; ++t) {
      const double theta = t * dtheta;
      rule.nodes_.push_back({r, theta, wr, std::polar(r, theta)});
    }
  }
  return rule;
}

cplx integrate(const QuadratureRule& rule, const Integrand& f) {
  cplx sum = 0.0;
  const auto& nodes = rule.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const cplx v = f(nodes[i].z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::non_finite,
                  "non-finite integrand at node " + std::to_string(i) + " (r=" +
                      shortest(nodes[i].r) + ", theta=" + shortest(nodes[i].theta) + ")");
    }
    sum += nodes[i].weight * v;
  }
  return sum;
}

AdaptiveResult integrate_adaptive(const Domain& domain, const Integrand& f, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, "tolerance must be positive");
  constexpr int kMaxR = 1024;
  constexpr int kMaxTheta = 2048;

  int n_r = 8;
  int n_theta = 16;
  cplx prev = integrate(build_quadrature(domain, n_r, n_theta), f);
  double diff = INFINITY;
  while (n_r < kMaxR && n_theta < kMaxTheta) {
    n_r *= 2;
    n_theta *= 2;
    const cplx cur = integrate(build_quadrature(domain, n_r, n_theta), f);
    diff = std::abs(cur - prev);
    prev = cur;
    if (diff < tol) return {prev, diff, true, n_r, n_theta};
  }
  return {prev, diff, false, n_r, n_theta};
}

double radial_moment(const Domain& domain, double s, int p) {
  if (p < 0) throw Error(ErrorCode::invalid_argument, "log power must be nonnegative");
  const double t = s + 1.0;
  double factorial = 1.0;
  for (int i = 2; i <= p; ++i) factorial *= i;

  if (domain.is_disk()) {
    if (!(t > 0.0)) {
      throw Error(ErrorCode::domain_error,
                  "radial integrand r^" + shortest(s) + " is not integrable on the disk");
    }
    return ((p % 2) ? -factorial : factorial) / std::pow(t, p + 1);
  }

  const double rho = domain.inner_radius();
  const double lr = std::log(rho);
  if (t == 0.0) {
    // d/dr (log r)^{p+1}/(p+1) = (log r)^p / r
    return -std::pow(lr, p + 1) / (p + 1);
  }
  // F(r) = r^t sum_i (-1)^i p!/(p-i)! (log r)^{p-i} / t^{i+1}; log 1 = 0 leaves i = p.
  const double upper = ((p % 2) ? -factorial : factorial) / std::pow(t, p + 1);
  double lower = 0.0;
  double falling = 1.0;  // p!/(p-i)!
  for (int i = 0; i <= p; ++i) {
    const double sign = (i % 2) ? -1.0 : 1.0;
    lower += sign * falling * std::pow(lr, p - i) / std::pow(t, i + 1);
    falling *= (p - i);
  }
  lower *= std::pow(rho, t);
  return upper - lower;
}

}  // namespace bergman
