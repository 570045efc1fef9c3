#include "bergman/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "bergman/error.hpp"

namespace bergman {

namespace {

ExperimentReport make_report(const std::string& name, const Domain& domain) {
  ExperimentReport r;
  r.name = name;
  r.domain = domain;
  return r;
}

void add_rule_params(ExperimentReport& r, const QuadratureRule& rule) {
  r.params["n_r"] = static_cast<long long>(rule.radial_order());
  r.params["n_theta"] = static_cast<long long>(rule.angular_order());
}

void add_flags(ExperimentReport& r, const std::string& prefix, const ClassificationFlags& f) {
  r.metrics[prefix + "_analytic"] = Metric::flag(f.analytic);
  r.metrics[prefix + "_conjugate_analytic"] = Metric::flag(f.conjugate_analytic);
  r.metrics[prefix + "_radial"] = Metric::flag(f.radial);
  r.metrics[prefix + "_harmonic"] = Metric::flag(f.harmonic);
  r.metrics[prefix + "_constant"] = Metric::flag(f.constant);
}

void require_rule_domain(const Domain& domain, const QuadratureRule& rule) {
  if (!(rule.domain() == domain)) {
    throw Error(ErrorCode::dimension_mismatch, "quadrature rule built for " +
                                                   rule.domain().to_string() + ", experiment runs on " +
                                                   domain.to_string());
  }
}

double max_offdiag(const Matrix& m) {
  double out = 0.0;
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    for (Eigen::Index j = 0; j < m.rows(); ++j) {
      if (j != k) out = std::max(out, std::abs(m(j, k)));
    }
  }
  return out;
}

const char* method_name(Method m) { return m == Method::closed_form ? "closed_form" : "quadrature"; }

// Interior coefficient range for products involving phi^n of the given degree.
std::pair<int, int> interior_range(const BasisIndexSet& set, int shift) {
  if (set.domain().is_disk()) return {0, set.last() - shift};
  return {set.first() + shift, set.last() - shift};
}

}  // namespace

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Method default_method(const Domain& domain) noexcept {
  return domain.is_disk() ? Method::closed_form : Method::quadrature;
}

double default_zero_tolerance(Method method) noexcept {
  return method == Method::closed_form ? kTolZeroClosedForm : kTolZeroQuadrature;
}

double MomentTable::max_abs() const {
  double out = 0.0;
  for (const auto& row : entries) {
    for (const cplx& v : row) out = std::max(out, std::abs(v));
  }
  return out;
}

ExperimentReport run_radial_diagonality(const Domain& domain, const Symbol& s, int N,
                                        const QuadratureRule& rule, double tol) {
  if (!classify(s, domain).radial) {
    throw Error(ErrorCode::invalid_argument, "radial diagonality needs a radial symbol, got " + to_string(s));
  }
  require_rule_domain(domain, rule);
  const TruncatedOperator quad = toeplitz_matrix(domain, s, N, Method::quadrature, &rule);
  const TruncatedOperator exact = toeplitz_matrix(domain, s, N, Method::closed_form);

  double diag_dev = 0.0;
  for (int i = 0; i < quad.dim(); ++i) {
    diag_dev = std::max(diag_dev, std::abs(quad.entries(i, i) - exact.entries(i, i)));
  }
  const double offdiag = max_offdiag(quad.entries);

  ExperimentReport r = make_report("radial_diagonality", domain);
  r.params["symbol"] = to_string(s);
  r.params["trunc"] = static_cast<long long>(N);
  add_rule_params(r, rule);
  r.metrics["max_offdiag"] = Metric::real(offdiag);
  r.metrics["max_diag_deviation"] = Metric::real(diag_dev);
  r.metrics["diag_0"] = Metric::complex(quad.entry(0, 0));
  r.tolerances["max_offdiag"] = tol;
  r.tolerances["max_diag_deviation"] = tol;
  const bool ok = offdiag < tol && diag_dev < tol;
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  r.summary = ok ? "diagonal, matches closed-form diagonal" : "not diagonal within tolerance";
  return r;
}

ExperimentReport run_commute_check(const Domain& domain, const Symbol& phi, const Symbol& psi,
                                   int N, const QuadratureRule& rule, Method method, double tol) {
  if (tol <= 0.0) tol = default_zero_tolerance(method);
  require_rule_domain(domain, rule);
  const TruncatedOperator a = toeplitz_matrix(domain, phi, N, method, &rule);
  const TruncatedOperator b = toeplitz_matrix(domain, psi, N, method, &rule);
  const Matrix comm = commutator(a, b);
  const InteriorBlock block =
      interior_block(comm, a.indices, AngularBandwidth::of(phi), AngularBandwidth::of(psi));
  const MatrixNorms n = norms(block.block);

  const ClassificationFlags fp = classify(phi, domain);
  const ClassificationFlags fs = classify(psi, domain);
  const bool commuting = n.two_norm < tol;

  std::string violation;
  if (commuting && fp.analytic && !fp.constant && !fs.analytic) {
    violation = "analytic nonconstant phi commutes with non-analytic psi";
  } else if (commuting && fs.analytic && !fs.constant && !fp.analytic) {
    violation = "analytic nonconstant psi commutes with non-analytic phi";
  } else if (!commuting && fp.analytic && fs.analytic) {
    violation = "analytic symbols fail to commute";
  } else if (!commuting && fp.radial && fs.radial) {
    violation = "radial symbols fail to commute";
  } else if (domain.is_disk() && commuting && fp.radial && !fp.constant && !fs.radial) {
    violation = "radial nonconstant phi commutes with non-radial psi";
  } else if (domain.is_disk() && commuting && fs.radial && !fs.constant && !fp.radial) {
    violation = "radial nonconstant psi commutes with non-radial phi";
  }

  ExperimentReport r = make_report("commute_check", domain);
  r.params["phi"] = to_string(phi);
  r.params["psi"] = to_string(psi);
  r.params["trunc"] = static_cast<long long>(N);
  r.params["method"] = std::string(method_name(method));
  add_rule_params(r, rule);
  r.metrics["interior_two_norm"] = Metric::real(n.two_norm);
  r.metrics["interior_frobenius"] = Metric::real(n.frobenius);
  r.metrics["interior_last_index"] = Metric::real(block.last_index);
  r.metrics["power_iteration_converged"] = Metric::flag(n.converged);
  add_flags(r, "phi", fp);
  add_flags(r, "psi", fs);
  r.tolerances["zero"] = tol;

  const std::string state = commuting ? "commuting" : "non-commuting";
  if (!violation.empty()) {
    r.verdict = Verdict::fail;
    r.summary = state + " (theorem violation: " + violation + ")";
  } else if (!n.converged) {
    r.verdict = Verdict::inconclusive;
    r.summary = state + " (power iteration did not converge)";
  } else {
    r.verdict = Verdict::pass;
    r.summary = state + " (theorem-consistent)";
  }
  return r;
}

ExperimentReport run_proof_identity(const Domain& domain, const Symbol& phi, const Symbol& psi,
                                    int n_max, int N, const QuadratureRule& rule, double tol) {
  if (!classify(phi, domain).analytic) {
    throw Error(ErrorCode::invalid_argument, "proof identity needs analytic phi, got " + to_string(phi));
  }
  if (n_max < 1) throw Error(ErrorCode::invalid_argument, "n_max must be at least 1");
  require_rule_domain(domain, rule);
  const Method method = default_method(domain);
  const BasisIndexSet set(domain, N);
  const int degree = phi.bandwidth();
  if (interior_range(set, n_max * degree).second < interior_range(set, n_max * degree).first) {
    throw Error(ErrorCode::invalid_argument, "truncation too small for phi^n_max");
  }

  const CoeffVector one = constant_one(set);
  const TruncatedOperator t_psi = toeplitz_matrix(domain, psi, N, method, &rule);
  const DecompositionResult dec = analytic_decompose(domain, psi, N, rule);
  const Symbol f = coeffs_to_symbol(dec.analytic_part);

  ExperimentReport r = make_report("proof_identity", domain);
  double max_identity = 0.0;
  double max_multiplication = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const Symbol phi_n = power(phi, n);
    const TruncatedOperator t_phi_n = toeplitz_matrix(domain, phi_n, N, method, &rule);
    const CoeffVector psi_then = apply(t_psi, apply(t_phi_n, one));   // T_psi T_{phi^n} 1
    const CoeffVector phi_then = apply(t_phi_n, apply(t_psi, one));   // T_{phi^n} T_psi 1
    const CoeffVector rhs = project_basis(domain, multiply(dec.residual, phi_n), N, rule);
    const CoeffVector phi_n_f = project_basis(domain, multiply(phi_n, f), N, rule);

    const auto [lo, hi] = interior_range(set, n * degree);
    double id_sq = 0.0;
    double mult_sq = 0.0;
    for (int j = lo; j <= hi; ++j) {
      id_sq += std::norm(psi_then.at(j) - phi_then.at(j) - rhs.at(j));
      mult_sq += std::norm(phi_then.at(j) - phi_n_f.at(j));
    }
    const double id_res = std::sqrt(id_sq);
    max_identity = std::max(max_identity, id_res);
    max_multiplication = std::max(max_multiplication, std::sqrt(mult_sq));
    r.metrics["identity_residual_n" + std::to_string(n)] = Metric::real(id_res);
    r.metrics["lhs_e0_n" + std::to_string(n)] = Metric::complex(psi_then.at(0) - phi_then.at(0));
    r.metrics["rhs_e0_n" + std::to_string(n)] = Metric::complex(rhs.at(0));
  }

  r.params["phi"] = to_string(phi);
  r.params["psi"] = to_string(psi);
  r.params["trunc"] = static_cast<long long>(N);
  r.params["n_max"] = static_cast<long long>(n_max);
  r.params["method"] = std::string(method_name(method));
  add_rule_params(r, rule);
  r.metrics["max_identity_residual"] = Metric::real(max_identity);
  r.metrics["max_multiplication_residual"] = Metric::real(max_multiplication);
  r.metrics["residual_norm"] = Metric::real(dec.residual_norm);
  r.tolerances["max_identity_residual"] = tol;
  r.tolerances["max_multiplication_residual"] = tol;
  const bool ok = max_identity < tol && max_multiplication < tol;
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  r.summary = ok ? "commutator applied to 1 equals P(u phi^n)" : "identity residual above tolerance";
  return r;
}

MomentScan run_moment_scan(const Domain& domain, const Symbol& phi, const Symbol& psi, int n_max,
                           int j_max, int N, const QuadratureRule& rule, double tol) {
  if (!classify(phi, domain).analytic) {
    throw Error(ErrorCode::invalid_argument, "moment scan needs analytic phi, got " + to_string(phi));
  }
  if (n_max < 0 || j_max < 0) throw Error(ErrorCode::invalid_argument, "n_max and j_max must be nonnegative");
  require_rule_domain(domain, rule);
  const DecompositionResult dec = analytic_decompose(domain, psi, N, rule);

  MomentTable table;
  table.phi = phi;
  table.psi = psi;
  table.n_max = n_max;
  table.j_min = domain.is_disk() ? 0 : -j_max;
  table.j_max = j_max;
  table.tolerance = tol;
  const int width = table.j_max - table.j_min + 1;
  table.entries.assign(n_max + 1, std::vector<cplx>(width, 0.0));

  const auto& nodes = rule.nodes();
  std::vector<cplx> u_bar(nodes.size());
  std::vector<cplx> phi_bar(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    u_bar[i] = std::conj(dec.evaluate_residual(nodes[i].z));
    phi_bar[i] = std::conj(eval_symbol(phi, nodes[i].z));
  }
  for (int j = table.j_min; j <= table.j_max; ++j) {
    std::vector<cplx> base(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      base[i] = nodes[i].weight * u_bar[i] * eval_basis(domain, j, nodes[i].z);
    }
    for (int n = 0; n <= n_max; ++n) {
      cplx sum = 0.0;
      for (std::size_t i = 0; i < nodes.size(); ++i) sum += base[i];
      table.entries[n][j - table.j_min] = sum;
      for (std::size_t i = 0; i < nodes.size(); ++i) base[i] *= phi_bar[i];
    }
  }

  const double max_moment = table.max_abs();
  const bool moments_vanish = max_moment < tol;
  const bool residual_vanishes = dec.residual_norm < tol;

  ExperimentReport r = make_report("moment_scan", domain);
  r.params["phi"] = to_string(phi);
  r.params["psi"] = to_string(psi);
  r.params["trunc"] = static_cast<long long>(N);
  r.params["n_max"] = static_cast<long long>(n_max);
  r.params["j_max"] = static_cast<long long>(j_max);
  add_rule_params(r, rule);
  r.metrics["max_moment"] = Metric::real(max_moment);
  r.metrics["residual_norm"] = Metric::real(dec.residual_norm);
  if (n_max >= 1) r.metrics["mu_1_0"] = Metric::complex(table.at(1, 0));
  r.tolerances["zero"] = tol;

  if (moments_vanish == residual_vanishes) {
    r.verdict = Verdict::pass;
    r.summary = moments_vanish ? "all moments vanish and psi is analytic"
                               : "nonzero moment detects the non-analytic residual";
  } else if (moments_vanish) {
    r.verdict = Verdict::inconclusive;
    r.summary = "moments vanish on the finite test set but the residual is nonzero";
  } else {
    r.verdict = Verdict::fail;
    r.summary = "nonzero moment with vanishing residual";
  }
  return {std::move(table), std::move(r)};
}

ExperimentReport run_annulus_counterexample(double rho, const std::vector<Symbol>& partners, int N,
                                            const QuadratureRule& rule, double tol) {
  const Domain domain = Domain::annulus(rho);
  require_rule_domain(domain, rule);
  const Symbol log_r({Term{1.0, 0, 0, 0.0, 1}});
  const TruncatedOperator quad = toeplitz_matrix(domain, log_r, N, Method::quadrature, &rule);
  const TruncatedOperator exact = toeplitz_matrix(domain, log_r, N, Method::closed_form);
  const ClassificationFlags flags = classify(log_r, domain);

  ExperimentReport r = make_report("annulus_counterexample", domain);
  r.params["rho"] = rho;
  r.params["trunc"] = static_cast<long long>(N);
  add_rule_params(r, rule);
  const double offdiag = max_offdiag(quad.entries);
  r.metrics["max_offdiag"] = Metric::real(offdiag);
  r.metrics["diag_0"] = Metric::complex(quad.entry(0, 0));
  add_flags(r, "log_r", flags);

  bool ok = offdiag < tol && flags.harmonic && !flags.analytic && !flags.conjugate_analytic;
  for (std::size_t i = 0; i < partners.size(); ++i) {
    const Symbol& partner = partners[i];
    if (!classify(partner, domain).radial) {
      throw Error(ErrorCode::invalid_argument, "annulus partner must be radial, got " + to_string(partner));
    }
    const TruncatedOperator p_exact = toeplitz_matrix(domain, partner, N, Method::closed_form);
    const TruncatedOperator p_quad = toeplitz_matrix(domain, partner, N, Method::quadrature, &rule);
    // Diagonal path: both operators are diagonal, so only the products of
    // diagonals enter.
    double exact_comm = 0.0;
    for (int k = 0; k < exact.dim(); ++k) {
      const cplx a = exact.entries(k, k);
      const cplx b = p_exact.entries(k, k);
      exact_comm = std::max(exact_comm, std::abs(a * b - b * a));
    }
    const double quad_comm = norms(commutator(quad, p_quad)).two_norm;
    const std::string idx = std::to_string(i);
    r.params["partner_" + idx] = to_string(partner);
    r.metrics["commutator_exact_" + idx] = Metric::real(exact_comm);
    r.metrics["commutator_quad_" + idx] = Metric::real(quad_comm);
    ok = ok && exact_comm < tol && quad_comm < tol;
  }
  r.tolerances["zero"] = tol;
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  r.summary = ok ? "T_{log r} is diagonal and commutes with every radial partner; log r is harmonic, "
                   "neither analytic nor conjugate analytic"
                 : "annulus counterexample not reproduced";
  return r;
}

ExperimentReport run_harmonic_pair(const Symbol& phi, const Symbol& psi, int N,
                                   const QuadratureRule& rule, double tol) {
  const Domain domain = Domain::disk();
  require_rule_domain(domain, rule);
  const ClassificationFlags fp = classify(phi, domain);
  const ClassificationFlags fs = classify(psi, domain);
  if (!fp.harmonic || !fs.harmonic) {
    throw Error(ErrorCode::invalid_argument, "harmonic pair needs two harmonic symbols");
  }

  const TruncatedOperator a = toeplitz_matrix(domain, phi, N, Method::closed_form);
  const TruncatedOperator b = toeplitz_matrix(domain, psi, N, Method::closed_form);
  const InteriorBlock block =
      interior_block(commutator(a, b), a.indices, AngularBandwidth::of(phi), AngularBandwidth::of(psi));
  const MatrixNorms n = norms(block.block);

  // Weighted least squares on the nodes realizes the L2(dA) fit psi ~ a phi + b.
  const auto& nodes = rule.nodes();
  const Eigen::Index rows = static_cast<Eigen::Index>(nodes.size());
  Matrix design(rows, 2);
  Vector rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double sw = std::sqrt(nodes[i].weight);
    design(i, 0) = sw * eval_symbol(phi, nodes[i].z);
    design(i, 1) = sw;
    rhs(i) = sw * eval_symbol(psi, nodes[i].z);
  }
  const Vector coef = design.colPivHouseholderQr().solve(rhs);
  const double fit_residual = (design * coef - rhs).norm();
  const double psi_norm = rhs.norm();

  const bool commuting = n.two_norm < tol;
  const bool related = fit_residual < tol * std::max(1.0, psi_norm);
  const bool both_analytic = fp.analytic && fs.analytic;
  const bool both_conjugate = fp.conjugate_analytic && fs.conjugate_analytic;

  ExperimentReport r = make_report("harmonic_pair", domain);
  r.params["phi"] = to_string(phi);
  r.params["psi"] = to_string(psi);
  r.params["trunc"] = static_cast<long long>(N);
  add_rule_params(r, rule);
  r.metrics["interior_two_norm"] = Metric::real(n.two_norm);
  r.metrics["fit_residual"] = Metric::real(fit_residual);
  r.metrics["fit_a"] = Metric::complex(coef(0));
  r.metrics["fit_b"] = Metric::complex(coef(1));
  r.metrics["both_analytic"] = Metric::flag(both_analytic);
  r.metrics["both_conjugate_analytic"] = Metric::flag(both_conjugate);
  r.metrics["linear_relation"] = Metric::flag(related);
  r.tolerances["zero"] = tol;

  std::string violation;
  if (commuting && !(both_analytic || both_conjugate || related)) {
    violation = "commuting harmonic pair outside the trichotomy";
  } else if (!commuting && (both_analytic || both_conjugate || related)) {
    violation = "pair in the trichotomy fails to commute";
  }
  const std::string state = commuting ? "commuting" : "non-commuting";
  if (violation.empty()) {
    r.verdict = Verdict::pass;
    r.summary = state + (related ? ", psi = a phi + b" : "") + " (trichotomy-consistent)";
  } else {
    r.verdict = Verdict::fail;
    r.summary = state + " (" + violation + ")";
  }
  return r;
}

std::vector<SweepPoint> commutator_sweep(const Domain& domain, const Symbol& phi, const Symbol& psi,
                                         const std::vector<int>& orders, const QuadratureRule& rule,
                                         Method method) {
  std::vector<SweepPoint> out;
  for (int N : orders) {
    const TruncatedOperator a = toeplitz_matrix(domain, phi, N, method, &rule);
    const TruncatedOperator b = toeplitz_matrix(domain, psi, N, method, &rule);
    const InteriorBlock block =
        interior_block(commutator(a, b), a.indices, AngularBandwidth::of(phi), AngularBandwidth::of(psi));
    out.push_back({N, norms(block.block).two_norm});
  }
  return out;
}

}  // namespace bergman
