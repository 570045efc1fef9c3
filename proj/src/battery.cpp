#include "bergman/battery.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace bergman {

namespace {

constexpr int kRuleR = 64;
constexpr int kRuleTheta = 256;

void finish(ExperimentReport& r, bool ok, const std::string& pass_text, const std::string& fail_text) {
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  r.summary = ok ? pass_text : fail_text;
}

// Criterion 1: quadrature-assembled T_{z zbar} is diagonal with (k+1)/(k+2).
ExperimentReport radial_diagonality() {
  const Domain disk = Domain::disk();
  const auto rule = build_quadrature(disk, kRuleR, kRuleTheta);
  const Symbol s = parse_symbol("z*zbar");
  ExperimentReport r = run_radial_diagonality(disk, s, 16, rule, 1e-10);
  const TruncatedOperator t = toeplitz_matrix(disk, s, 16, Method::quadrature, &rule);
  double formula_dev = 0.0;
  for (int k = 0; k < 16; ++k) {
    formula_dev = std::max(formula_dev, std::abs(t.entry(k, k) - (k + 1.0) / (k + 2.0)));
  }
  r.metrics["max_formula_deviation"] = Metric::real(formula_dev);
  r.tolerances["max_formula_deviation"] = 1e-10;
  finish(r, r.verdict == Verdict::pass && formula_dev < 1e-10,
         "T_{z zbar} diagonal with entries (k+1)/(k+2)", "radial diagonality failed");
  return r;
}

// Criterion 2: two radial symbols commute exactly (closed form) and to 1e-10
// on the quadrature path.
ExperimentReport diagonal_commutation() {
  const Domain disk = Domain::disk();
  const auto rule = build_quadrature(disk, kRuleR, kRuleTheta);
  const Symbol a = parse_symbol("z*zbar");
  const Symbol b = parse_symbol("z^2*zbar^2");
  const int N = 32;
  const Matrix exact = commutator(toeplitz_matrix(disk, a, N, Method::closed_form),
                                  toeplitz_matrix(disk, b, N, Method::closed_form));
  const double quad = norms(commutator(toeplitz_matrix(disk, a, N, Method::quadrature, &rule),
                                       toeplitz_matrix(disk, b, N, Method::quadrature, &rule)))
                          .two_norm;
  ExperimentReport r;
  r.name = "diagonal_commutation";
  r.params["phi"] = to_string(a);
  r.params["psi"] = to_string(b);
  r.params["trunc"] = static_cast<long long>(N);
  r.metrics["closed_form_max_abs"] = Metric::real(exact.cwiseAbs().maxCoeff());
  r.metrics["quadrature_two_norm"] = Metric::real(quad);
  r.tolerances["closed_form_max_abs"] = 0.0;
  r.tolerances["quadrature_two_norm"] = 1e-10;
  finish(r, exact.cwiseAbs().maxCoeff() == 0.0 && quad < 1e-10,
         "radial Toeplitz operators commute", "radial Toeplitz operators failed to commute");
  return r;
}

// Criterion 3: closed form and quadrature agree entrywise.
ExperimentReport cross_oracle() {
  const Domain disk = Domain::disk();
  const auto rule = build_quadrature(disk, kRuleR, kRuleTheta);
  const std::vector<std::string> battery = {"z", "z^2", "zbar", "z*zbar", "z^2*zbar", "z+zbar", "r^0.5*z"};
  ExperimentReport r;
  r.name = "cross_oracle";
  r.params["trunc"] = 32LL;
  double worst = 0.0;
  for (const auto& text : battery) {
    const Symbol s = parse_symbol(text);
    const Matrix diff = toeplitz_matrix(disk, s, 32, Method::closed_form).entries -
                        toeplitz_matrix(disk, s, 32, Method::quadrature, &rule).entries;
    const double dev = diff.cwiseAbs().maxCoeff();
    r.metrics["max_deviation[" + text + "]"] = Metric::real(dev);
    worst = std::max(worst, dev);
  }
  r.metrics["max_deviation"] = Metric::real(worst);
  r.tolerances["max_deviation"] = 1e-8;
  finish(r, worst < 1e-8, "closed form and quadrature agree", "assembly paths disagree");
  return r;
}

// Criterion 4: diag of [T_zbar, T_z] is 1/((k+1)(k+2)).
ExperimentReport self_commutator() {
  const Domain disk = Domain::disk();
  const int N = 32;
  const Matrix c = commutator(toeplitz_matrix(disk, parse_symbol("zbar"), N, Method::closed_form),
                              toeplitz_matrix(disk, parse_symbol("z"), N, Method::closed_form));
  double dev = 0.0;
  for (int k = 0; k <= N - 2; ++k) {
    dev = std::max(dev, std::abs(c(k, k) - 1.0 / ((k + 1.0) * (k + 2.0))));
  }
  ExperimentReport r;
  r.name = "self_commutator";
  r.params["trunc"] = static_cast<long long>(N);
  r.metrics["max_diag_deviation"] = Metric::real(dev);
  r.metrics["diag_0"] = Metric::complex(c(0, 0));
  r.tolerances["max_diag_deviation"] = 1e-10;
  finish(r, dev < 1e-10, "[T_zbar, T_z] = diag 1/((k+1)(k+2))", "self-commutator diagonal mismatch");
  return r;
}

// Criterion 5: analytic nonconstant phi against non-analytic psi never commutes.
ExperimentReport theorem_contrapositive() {
  const Domain disk = Domain::disk();
  const auto rule = build_quadrature(disk, kRuleR, kRuleTheta);
  ExperimentReport r;
  r.name = "theorem_contrapositive";
  bool ok = true;
  const std::vector<std::pair<std::string, std::string>> non_analytic = {
      {"z", "zbar"}, {"z^2", "z*zbar"}, {"z", "z^2*zbar"}};
  for (const auto& [p, q] : non_analytic) {
    const Symbol phi = parse_symbol(p);
    const Symbol psi = parse_symbol(q);
    const auto r32 = run_commute_check(disk, phi, psi, 32, rule, Method::closed_form);
    const auto r64 = run_commute_check(disk, phi, psi, 64, rule, Method::closed_form);
    const double n32 = r32.real_metric("interior_two_norm");
    const double n64 = r64.real_metric("interior_two_norm");
    r.metrics["norm32[" + p + "," + q + "]"] = Metric::real(n32);
    r.metrics["norm64[" + p + "," + q + "]"] = Metric::real(n64);
    ok = ok && r32.verdict == Verdict::pass && r64.verdict == Verdict::pass && n32 >= 0.05 &&
         n64 >= n32 - 1e-3;
  }
  for (const std::string p : {"z", "z^2"}) {
    for (const std::string q : {"z^3", "z+z^2"}) {
      const auto rep = run_commute_check(disk, parse_symbol(p), parse_symbol(q), 32, rule,
                                         Method::closed_form);
      const double n = rep.real_metric("interior_two_norm");
      r.metrics["norm32[" + p + "," + q + "]"] = Metric::real(n);
      ok = ok && rep.verdict == Verdict::pass && n < 1e-10;
    }
  }
  r.tolerances["min_noncommuting_norm"] = 0.05;
  r.tolerances["monotonicity_slack"] = 1e-3;
  r.tolerances["analytic_zero"] = 1e-10;
  finish(r, ok, "no analytic nonconstant phi commutes with a non-analytic psi",
         "theorem contrapositive violated");
  return r;
}

// Criterion 6: the operator identity behind the proof.
ExperimentReport proof_identity() {
  const Domain disk = Domain::disk();
  const auto rule = build_quadrature(disk, kRuleR, kRuleTheta);
  const int N = 64;
  const Symbol phi = parse_symbol("z");
  ExperimentReport r;
  r.name = "proof_identity";
  r.params["trunc"] = static_cast<long long>(N);
  r.params["n_max"] = 4LL;
  bool ok = true;
  double worst = 0.0;
  for (const std::string q : {"zbar", "z^2*zbar", "zbar^2+z"}) {
    const auto rep = run_proof_identity(disk, phi, parse_symbol(q), 4, N, rule, 1e-8);
    const double res = rep.real_metric("max_identity_residual");
    r.metrics["max_identity_residual[" + q + "]"] = Metric::real(res);
    worst = std::max(worst, res);
    ok = ok && rep.verdict == Verdict::pass;
  }
  // (z, zbar, n = 1): T_zbar T_z 1 - T_z T_zbar 1 is the constant 1/2.
  const BasisIndexSet set(disk, N);
  const auto tz = toeplitz_matrix(disk, phi, N, Method::closed_form);
  const auto tzb = toeplitz_matrix(disk, parse_symbol("zbar"), N, Method::closed_form);
  const CoeffVector one = constant_one(set);
  const CoeffVector a = apply(tzb, apply(tz, one));
  const CoeffVector b = apply(tz, apply(tzb, one));
  double dev = 0.0;
  for (int j = 0; j < N; ++j) {
    const cplx expected = (j == 0) ? cplx(std::sqrt(std::numbers::pi) / 2.0, 0.0) : cplx(0.0);
    dev += std::norm(a.at(j) - b.at(j) - expected);
  }
  dev = std::sqrt(dev);
  r.metrics["max_identity_residual"] = Metric::real(worst);
  r.metrics["half_constant_deviation"] = Metric::real(dev);
  r.tolerances["max_identity_residual"] = 1e-8;
  r.tolerances["half_constant_deviation"] = 1e-8;
  finish(r, ok && worst < 1e-8 && dev < 1e-8, "T_psi T_{phi^n} 1 - T_{phi^n} T_psi 1 = P(u phi^n)",
         "proof identity residual above tolerance");
  return r;
}

// Criterion 7: moments of the residual.
ExperimentReport moment_scan() {
  const Domain disk = Domain::disk();
  const auto rule = build_quadrature(disk, kRuleR, kRuleTheta);
  const Symbol phi = parse_symbol("z");
  const auto scan = run_moment_scan(disk, phi, parse_symbol("zbar"), 4, 8, 32, rule);
  const cplx mu10 = scan.table.at(1, 0);
  const double expected = std::sqrt(std::numbers::pi) / 2.0;
  ExperimentReport r;
  r.name = "moment_scan";
  r.metrics["mu_1_0"] = Metric::complex(mu10);
  r.metrics["mu_1_0_deviation"] = Metric::real(std::abs(mu10 - expected));
  bool ok = scan.report.verdict == Verdict::pass && std::abs(mu10 - expected) < 1e-8;
  double worst = 0.0;
  for (const std::string q : {"z^2", "z^3", "z+z^2"}) {
    const auto s = run_moment_scan(disk, phi, parse_symbol(q), 4, 8, 32, rule, 1e-10);
    worst = std::max(worst, s.table.max_abs());
    ok = ok && s.report.verdict == Verdict::pass;
  }
  r.metrics["max_moment_analytic"] = Metric::real(worst);
  r.tolerances["mu_1_0_deviation"] = 1e-8;
  r.tolerances["max_moment_analytic"] = 1e-10;
  finish(r, ok && worst < 1e-10, "moments detect exactly the non-analytic residuals",
         "moment scan mismatch");
  return r;
}

// Criterion 8: T_{log r} on the annulus.
ExperimentReport annulus_counterexample() {
  const double rho = 0.5;
  const auto rule = build_quadrature(Domain::annulus(rho), kRuleR, kRuleTheta);
  ExperimentReport r = run_annulus_counterexample(
      rho, {parse_symbol("z*zbar"), Symbol::constant(1.0)}, 8, rule, 1e-10);
  // 2 pi \int_{1/2}^1 r log r dr / (pi (1 - 1/4)), from the antiderivative r^2/2 log r - r^2/4.
  const double expected = 2.0 * (-0.25 - (0.125 * std::log(0.5) - 0.0625)) / 0.75;
  const double dev = std::abs(r.metrics.at("diag_0").value - expected);
  r.metrics["diag_0_deviation"] = Metric::real(dev);
  r.tolerances["diag_0_deviation"] = 1e-5;
  const bool exact_zero = r.real_metric("commutator_exact_1") == 0.0;
  finish(r, r.verdict == Verdict::pass && dev < 1e-5 && exact_zero,
         "T_{log r} diagonal and commuting with radial partners", "annulus counterexample failed");
  return r;
}

// Criterion 9: harmonic-pair trichotomy.
ExperimentReport harmonic_pair() {
  const auto rule = build_quadrature(Domain::disk(), kRuleR, kRuleTheta);
  const auto related = run_harmonic_pair(parse_symbol("z+zbar"), parse_symbol("2*z+2*zbar+5"), 32, rule);
  const auto unrelated = run_harmonic_pair(parse_symbol("z+zbar"), parse_symbol("z-zbar"), 32, rule);
  // [T_{z+zbar}, T_{z-zbar}] = 2[T_zbar, T_z], whose largest entry is 2 * 1/2.
  constexpr double kReleaseConstant = 1.0;
  ExperimentReport r;
  r.name = "harmonic_pair";
  r.metrics["related_commutator"] = Metric::real(related.real_metric("interior_two_norm"));
  r.metrics["related_fit_residual"] = Metric::real(related.real_metric("fit_residual"));
  r.metrics["unrelated_commutator"] = Metric::real(unrelated.real_metric("interior_two_norm"));
  r.metrics["unrelated_fit_residual"] = Metric::real(unrelated.real_metric("fit_residual"));
  r.tolerances["zero"] = 1e-10;
  r.tolerances["unrelated_commutator_min"] = kReleaseConstant - 1e-10;
  const bool ok = related.verdict == Verdict::pass && unrelated.verdict == Verdict::pass &&
                  related.real_metric("interior_two_norm") < 1e-10 &&
                  related.real_metric("fit_residual") < 1e-10 &&
                  unrelated.real_metric("interior_two_norm") >= kReleaseConstant - 1e-10 &&
                  unrelated.real_metric("linear_relation") == 0.0;
  finish(r, ok, "trichotomy holds on both pairs", "harmonic-pair trichotomy failed");
  return r;
}

// Criterion 10: kernel projection against basis projection.
ExperimentReport projection_consistency() {
  const Domain disk = Domain::disk();
  const auto rule = build_quadrature(disk, kRuleR, kRuleTheta);
  const Symbol psi = parse_symbol("zbar+z^2");
  const CoeffVector f = project_basis(disk, psi, 32, rule);
  std::vector<cplx> points;
  for (int i = 0; i < 20; ++i) points.push_back(std::polar(0.9 * (i + 1) / 20.0, 2.399963 * i));
  const auto kernel = project_kernel([&psi](cplx z) { return eval_symbol(psi, z); }, points, rule);
  double dev = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    dev = std::max(dev, std::abs(kernel.values[i] - f.evaluate(points[i])));
  }
  ExperimentReport r;
  r.name = "projection_consistency";
  r.params["psi"] = to_string(psi);
  r.params["trunc"] = 32LL;
  r.params["points"] = 20LL;
  r.metrics["max_deviation"] = Metric::real(dev);
  r.tolerances["max_deviation"] = 1e-6;
  finish(r, dev < 1e-6, "kernel and basis projections agree", "kernel and basis projections disagree");
  return r;
}

struct Item {
  std::function<ExperimentReport()> run;
  double max_seconds;
};

}  // namespace

std::vector<BatteryEntry> run_default_battery() {
  const std::vector<Item> items = {
      {radial_diagonality, 5.0},      {diagonal_commutation, 5.0}, {cross_oracle, 60.0},
      {self_commutator, 0.0},         {theorem_contrapositive, 0.0}, {proof_identity, 0.0},
      {moment_scan, 0.0},             {annulus_counterexample, 0.0}, {harmonic_pair, 0.0},
      {projection_consistency, 0.0},
  };
  std::vector<BatteryEntry> out;
  for (const auto& item : items) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport report = item.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (item.max_seconds > 0.0) {
      report.tolerances["max_seconds"] = item.max_seconds;
      if (secs >= item.max_seconds && report.verdict == Verdict::pass) {
        report.verdict = Verdict::fail;
        report.summary += " (runtime limit exceeded)";
      }
    }
    out.push_back({std::move(report), secs});
  }
  return out;
}

std::string summary_line(const BatteryEntry& entry) {
  const auto& r = entry.report;
  std::ostringstream os;
  os << (r.verdict == Verdict::pass ? "PASS" : r.verdict == Verdict::fail ? "FAIL" : "INCONCLUSIVE")
     << "  " << r.name << "  (" << std::fixed;
  os.precision(2);
  os << entry.seconds << " s)  " << r.summary;
  return os.str();
}

}  // namespace bergman
