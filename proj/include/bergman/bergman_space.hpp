#pragma once

#include <vector>

#include "bergman/quadrature.hpp"
#include "bergman/symbol.hpp"

namespace bergman {

/// Truncated orthonormal basis e_n = z^n / ||z^n||: n = 0..N-1 on the disk,
/// n = -N..N on the annulus.
class BasisIndexSet {
 public:
  BasisIndexSet(const Domain& domain, int N);

  const Domain& domain() const noexcept { return domain_; }
  int truncation() const noexcept { return N_; }
  int first() const noexcept { return domain_.is_disk() ? 0 : -N_; }
  int last() const noexcept { return domain_.is_disk() ? N_ - 1 : N_; }
  int size() const noexcept { return last() - first() + 1; }
  int offset(int index) const noexcept { return index - first(); }
  int index(int offset) const noexcept { return offset + first(); }
  bool contains(int index) const noexcept { return index >= first() && index <= last(); }

  friend bool operator==(const BasisIndexSet&, const BasisIndexSet&) = default;

 private:
  Domain domain_;
  int N_;
};

/// The analytic function sum_n c_n e_n.
struct CoeffVector {
  BasisIndexSet indices;
  std::vector<cplx> coeffs;

  explicit CoeffVector(const BasisIndexSet& set) : indices(set), coeffs(set.size(), 0.0) {}

  cplx& at(int index) { return coeffs.at(indices.offset(index)); }
  cplx at(int index) const { return coeffs.at(indices.offset(index)); }
  cplx evaluate(cplx z) const;
  double norm() const;
};

/// ||z^n||^2 over the domain.
double basis_norm_sq(const Domain& domain, int n);
cplx eval_basis(const Domain& domain, int n, cplx z);

enum class Method { closed_form, quadrature };

/// Coefficients c_n = <g, e_n>. The closed-form path uses the term
/// structure; the quadrature path integrates against the rule.
CoeffVector project_basis(const Domain& domain, const Symbol& g, int N,
                          const QuadratureRule& rule, Method method = Method::closed_form);
CoeffVector project_function(const Domain& domain, const Integrand& g, int N,
                             const QuadratureRule& rule);

/// The analytic function sum c_n e_n rewritten in the symbol grammar
/// (z^{-k} becomes zbar^k r^{-2k}).
Symbol coeffs_to_symbol(const CoeffVector& v);

struct KernelProjection {
  std::vector<cplx> values;
  /// True where |z| > 0.95 and the kernel is too concentrated for the rule.
  std::vector<bool> near_boundary;
  bool any_near_boundary() const;
};

/// (P g)(z) = \int K(z, w) g(w) dA(w) with K(z, w) = 1 / (pi (1 - z wbar)^2).
/// Disk only.
KernelProjection project_kernel(const Integrand& g, const std::vector<cplx>& points,
                                const QuadratureRule& rule);

struct DecompositionResult {
  CoeffVector analytic_part;
  /// psi - f, pointwise; exact in the grammar since f is a Laurent polynomial.
  Symbol residual;
  double residual_norm = 0.0;

  cplx evaluate_residual(cplx z) const { return eval_symbol(residual, z); }
};

/// psi = f + u with f the truncated Bergman projection of psi.
DecompositionResult analytic_decompose(const Domain& domain, const Symbol& psi, int N,
                                       const QuadratureRule& rule,
                                       Method method = Method::closed_form);

/// sqrt(\int |g|^2 dA) by quadrature.
double l2_norm(const QuadratureRule& rule, const Symbol& g);

}  // namespace bergman
