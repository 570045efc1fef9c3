#include "bergman/toeplitz.hpp"

#include <cmath>
#include <numbers>

#include "bergman/error.hpp"

namespace bergman {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPowerTol = 1e-10;
constexpr int kPowerMaxIter = 10000;

cplx zpow(cplx z, int k) {
  cplx out = 1.0;
  const cplx base = (k < 0) ? 1.0 / z : z;
  for (int i = 0; i < std::abs(k); ++i) out *= base;
  return out;
}

void check_index(const Domain& domain, int index) {
  if (domain.is_disk() && index < 0) {
    throw Error(ErrorCode::invalid_argument, "negative basis index on the disk");
  }
}

cplx closed_form_entry(const Domain& domain, const Symbol& s, int j, int k) {
  cplx sum = 0.0;
  for (const Term& t : s.terms()) {
    if (j != k + t.m - t.n) continue;
    sum += t.coeff * kTwoPi * radial_moment(domain, t.m + t.n + t.alpha + k + j + 1.0, t.p);
  }
  if (sum == cplx(0.0, 0.0)) return sum;
  return sum / std::sqrt(basis_norm_sq(domain, j) * basis_norm_sq(domain, k));
}

const QuadratureRule& require_rule(const Domain& domain, const QuadratureRule* rule) {
  if (rule == nullptr) throw Error(ErrorCode::invalid_argument, "quadrature path needs a rule");
  if (!(rule->domain() == domain)) {
    throw Error(ErrorCode::dimension_mismatch, "quadrature rule domain does not match operator domain");
  }
  return *rule;
}

}  // namespace

cplx toeplitz_entry(const Domain& domain, const Symbol& s, int j, int k, const QuadratureRule* rule) {
  check_index(domain, j);
  check_index(domain, k);
  if (rule == nullptr) {
    if (domain.is_disk() && !s.integrable_on_disk()) {
      throw Error(ErrorCode::domain_error, "symbol is not integrable on the disk");
    }
    return closed_form_entry(domain, s, j, k);
  }
  const QuadratureRule& q = require_rule(domain, rule);
  const double scale = 1.0 / std::sqrt(basis_norm_sq(domain, j) * basis_norm_sq(domain, k));
  return scale * integrate(q, [&](cplx z) {
           return eval_symbol(s, z) * zpow(z, k) * std::conj(zpow(z, j));
         });
}

TruncatedOperator toeplitz_matrix(const Domain& domain, const Symbol& s, int N, Method method,
                                  const QuadratureRule* rule) {
  BasisIndexSet indices(domain, N);
  const int dim = indices.size();
  TruncatedOperator op{indices, s, Matrix::Zero(dim, dim), method, std::nullopt};

  if (method == Method::closed_form) {
    if (domain.is_disk() && !s.integrable_on_disk()) {
      throw Error(ErrorCode::domain_error, "symbol is not integrable on the disk");
    }
    for (int k = indices.first(); k <= indices.last(); ++k) {
      for (int j = indices.first(); j <= indices.last(); ++j) {
        op.entries(indices.offset(j), indices.offset(k)) = closed_form_entry(domain, s, j, k);
      }
    }
    return op;
  }

  const QuadratureRule& q = require_rule(domain, rule);
  op.rule = RuleInfo{q.radial_order(), q.angular_order()};
  const auto& nodes = q.nodes();
  const std::size_t n_nodes = nodes.size();

  std::vector<cplx> weighted(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    const cplx v = eval_symbol(s, nodes[i].z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::non_finite, "non-finite symbol value at node " + std::to_string(i));
    }
    weighted[i] = nodes[i].weight * v;
  }
  // basis[offset][i] = e_index(z_i)
  std::vector<std::vector<cplx>> basis(dim, std::vector<cplx>(n_nodes));
  for (int off = 0; off < dim; ++off) {
    const int n = indices.index(off);
    const double scale = 1.0 / std::sqrt(basis_norm_sq(domain, n));
    for (std::size_t i = 0; i < n_nodes; ++i) basis[off][i] = scale * zpow(nodes[i].z, n);
  }

  std::vector<cplx> column(n_nodes);
  for (int kc = 0; kc < dim; ++kc) {
    for (std::size_t i = 0; i < n_nodes; ++i) column[i] = weighted[i] * basis[kc][i];
    for (int jr = 0; jr < dim; ++jr) {
      cplx sum = 0.0;
      const auto& bj = basis[jr];
      for (std::size_t i = 0; i < n_nodes; ++i) sum += column[i] * std::conj(bj[i]);
      op.entries(jr, kc) = sum;
    }
  }
  return op;
}

Matrix commutator(const TruncatedOperator& a, const TruncatedOperator& b) {
  if (!(a.indices == b.indices)) {
    throw Error(ErrorCode::dimension_mismatch, "commutator of operators on different truncations");
  }
  return a.entries * b.entries - b.entries * a.entries;
}

InteriorBlock interior_block(const Matrix& m, const BasisIndexSet& indices, AngularBandwidth a,
                             AngularBandwidth b) {
  if (m.rows() != indices.size() || m.cols() != indices.size()) {
    throw Error(ErrorCode::dimension_mismatch, "matrix does not match its index set");
  }
  const int margin = a.d + b.d;
  const int N = indices.truncation();
  if (N <= margin) {
    throw Error(ErrorCode::invalid_argument,
                "truncation " + std::to_string(N) + " exhausted by bandwidth margin " +
                    std::to_string(margin));
  }
  InteriorBlock out;
  out.margin = margin;
  if (indices.domain().is_disk()) {
    out.first_index = 0;
    out.last_index = N - 1 - margin;
  } else {
    out.first_index = -N + margin;
    out.last_index = N - margin;
  }
  const int start = indices.offset(out.first_index);
  const int len = out.last_index - out.first_index + 1;
  out.block = m.block(start, start, len, len);
  return out;
}

MatrixNorms norms(const Matrix& m) {
  MatrixNorms out;
  out.frobenius = m.norm();
  const Eigen::Index dim = m.cols();
  if (dim == 0 || out.frobenius == 0.0) return out;

  Vector v = Vector::Constant(dim, cplx(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
  double lambda = 0.0;
  out.converged = false;
  for (int it = 1; it <= kPowerMaxIter; ++it) {
    const Vector w = m.adjoint() * (m * v);
    const double next = v.dot(w).real();  // Rayleigh quotient of M*M
    const double wn = w.norm();
    out.iterations = it;
    if (wn == 0.0) {
      lambda = 0.0;
      out.converged = true;
      break;
    }
    v = w / wn;
    const bool done = std::abs(next - lambda) <= kPowerTol * std::max(next, 1e-300);
    lambda = next;
    if (done) {
      out.converged = true;
      break;
    }
  }
  if (lambda > 0.0) lambda = std::max(lambda, (m * v).squaredNorm());
  out.two_norm = std::sqrt(std::max(lambda, 0.0));
  return out;
}

CoeffVector apply(const TruncatedOperator& a, const CoeffVector& v) {
  if (!(a.indices == v.indices)) {
    throw Error(ErrorCode::dimension_mismatch, "operator and vector use different index sets");
  }
  const Eigen::Map<const Vector> x(v.coeffs.data(), static_cast<Eigen::Index>(v.coeffs.size()));
  const Vector y = a.entries * x;
  CoeffVector out(v.indices);
  for (Eigen::Index i = 0; i < y.size(); ++i) out.coeffs[static_cast<std::size_t>(i)] = y(i);
  return out;
}

CoeffVector constant_one(const BasisIndexSet& indices) {
  CoeffVector out(indices);
  out.at(0) = std::sqrt(basis_norm_sq(indices.domain(), 0));
  return out;
}

}  // namespace bergman
