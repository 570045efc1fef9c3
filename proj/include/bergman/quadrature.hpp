#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace bergman {

using cplx = std::complex<double>;

/// The region of integration. Outer radius is always 1.
class Domain {
 public:
  enum class Kind { disk, annulus };

  static Domain disk() { return Domain(Kind::disk, 0.0); }
  /// Throws Error(domain_error) unless 0 < rho < 1.
  static Domain annulus(double inner_radius);
  /// Accepts "disk" or "annulus:<rho>".
  static Domain parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  bool is_disk() const noexcept { return kind_ == Kind::disk; }
  bool is_annulus() const noexcept { return kind_ == Kind::annulus; }
  /// Inner radius; 0 for the disk.
  double inner_radius() const noexcept { return rho_; }
  double area() const noexcept;
  /// Closed-domain membership with a small slack on both radii.
  bool contains(cplx z) const noexcept;
  std::string to_string() const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  Domain(Kind kind, double rho) : kind_(kind), rho_(rho) {}

  Kind kind_;
  double rho_;
};

struct QuadratureNode {
  double r;
  double theta;
  double weight;  // includes the Jacobian factor r
  cplx z;
};

/// Gauss-Legendre in r times the uniform trapezoid rule in theta.
class QuadratureRule {
 public:
  const Domain& domain() const noexcept { return domain_; }
  int radial_order() const noexcept { return n_r_; }
  int angular_order() const noexcept { return n_theta_; }
  const std::vector<QuadratureNode>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }

 private:
  friend QuadratureRule build_quadrature(const Domain&, int, int);
  QuadratureRule(const Domain& d, int n_r, int n_theta)
      : domain_(d), n_r_(n_r), n_theta_(n_theta) {}

  Domain domain_;
  int n_r_;
  int n_theta_;
  std::vector<QuadratureNode> nodes_;
};

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

QuadratureRule build_quadrature(const Domain& domain, int n_r, int n_theta);

using Integrand = std::function<cplx(cplx)>;

/// Weighted sum over the nodes in ascending index order. A non-finite
/// integrand value raises Error(non_finite) naming the node.
cplx integrate(const QuadratureRule& rule, const Integrand& f);

struct AdaptiveResult {
  cplx value;
  double error_estimate;
  bool converged;
  int n_r;
  int n_theta;
};

/// Doubles (n_r, n_theta) from (8, 16) until successive values differ by
/// less than tol, or until (1024, 2048) is reached.
AdaptiveResult integrate_adaptive(const Domain& domain, const Integrand& f, double tol);

/// Closed form of \int r^s (log r)^p dr over the radial interval of the
/// domain: [0, 1] on the disk, [rho, 1] on the annulus.
double radial_moment(const Domain& domain, double s, int p);

}  // namespace bergman
