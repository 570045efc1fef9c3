#pragma once

#include <Eigen/Dense>
#include <optional>

#include "bergman/bergman_space.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/symbol.hpp"

namespace bergman {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct RuleInfo {
  int n_r = 0;
  int n_theta = 0;
};

/// Compression of multiplication by a symbol to the truncated basis.
/// entries(offset(j), offset(k)) = <s e_k, e_j>.
struct TruncatedOperator {
  BasisIndexSet indices;
  Symbol symbol;
  Matrix entries;
  Method method = Method::closed_form;
  std::optional<RuleInfo> rule;  // set for the quadrature path

  int dim() const noexcept { return static_cast<int>(entries.rows()); }
  cplx entry(int j, int k) const { return entries(indices.offset(j), indices.offset(k)); }
};

/// Largest |m - n| over the symbol's terms.
struct AngularBandwidth {
  int d = 0;
  static AngularBandwidth of(const Symbol& s) { return {s.bandwidth()}; }
};

cplx toeplitz_entry(const Domain& domain, const Symbol& s, int j, int k,
                    const QuadratureRule* rule = nullptr);

TruncatedOperator toeplitz_matrix(const Domain& domain, const Symbol& s, int N, Method method,
                                  const QuadratureRule* rule = nullptr);

/// A*B - B*A.
Matrix commutator(const TruncatedOperator& a, const TruncatedOperator& b);

struct InteriorBlock {
  Matrix block;
  int first_index = 0;  // basis index of the block's first row/column
  int last_index = 0;
  int margin = 0;
};

/// Rows and columns whose products never route through a truncated index:
/// indices <= N-1-(d_a + d_b) on the disk, |n| <= N-(d_a + d_b) on the
/// annulus.
InteriorBlock interior_block(const Matrix& m, const BasisIndexSet& indices,
                             AngularBandwidth a, AngularBandwidth b);

struct MatrixNorms {
  double frobenius = 0.0;
  double two_norm = 0.0;
  bool converged = true;
  int iterations = 0;
};

/// Frobenius exactly; spectral norm by power iteration on M*M from the
/// vector with all entries 1/sqrt(dim) (tol 1e-10, at most 10000 steps).
MatrixNorms norms(const Matrix& m);

CoeffVector apply(const TruncatedOperator& a, const CoeffVector& v);

/// Coefficients of the constant function 1.
CoeffVector constant_one(const BasisIndexSet& indices);

}  // namespace bergman
