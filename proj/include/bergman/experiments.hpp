#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "bergman/bergman_space.hpp"
#include "bergman/symbol.hpp"
#include "bergman/toeplitz.hpp"

namespace bergman {

enum class Verdict { pass, fail, inconclusive };

const char* to_string(Verdict v) noexcept;

/// A real metric, or a complex one serialized as {"re", "im"}.
struct Metric {
  cplx value;
  bool is_complex = false;

  static Metric real(double x) { return {cplx(x, 0.0), false}; }
  static Metric complex(cplx z) { return {z, true}; }
  static Metric flag(bool b) { return real(b ? 1.0 : 0.0); }
};

using ParamValue = std::variant<bool, long long, double, std::string>;

struct ExperimentReport {
  std::string name;
  Domain domain = Domain::disk();
  std::map<std::string, ParamValue> params;
  std::map<std::string, Metric> metrics;
  std::map<std::string, double> tolerances;
  Verdict verdict = Verdict::inconclusive;
  std::string summary;

  double real_metric(const std::string& key) const { return metrics.at(key).value.real(); }
};

/// Zero thresholds: closed-form results are exact up to rounding, quadrature
/// results carry the rule's error.
inline constexpr double kTolZeroClosedForm = 1e-12;
inline constexpr double kTolZeroQuadrature = 1e-8;

/// Closed form on the disk, quadrature on the annulus.
Method default_method(const Domain& domain) noexcept;
double default_zero_tolerance(Method method) noexcept;

/// T_s assembled by quadrature must be diagonal, matching the closed-form
/// diagonal. Requires a radial symbol.
ExperimentReport run_radial_diagonality(const Domain& domain, const Symbol& s, int N,
                                        const QuadratureRule& rule, double tol = 1e-8);

/// Interior-block two-norm of [T_phi, T_psi], cross-checked against what the
/// symbol classes force (analytic nonconstant phi commuting only with
/// analytic psi; analytic pairs and radial pairs commuting). tol <= 0 picks
/// the method's default.
ExperimentReport run_commute_check(const Domain& domain, const Symbol& phi, const Symbol& psi,
                                   int N, const QuadratureRule& rule,
                                   Method method, double tol = 0.0);

/// T_psi T_{phi^n} 1 - T_{phi^n} T_psi 1 against P(u phi^n), n = 1..n_max,
/// on interior coefficients.
ExperimentReport run_proof_identity(const Domain& domain, const Symbol& phi, const Symbol& psi,
                                    int n_max, int N, const QuadratureRule& rule,
                                    double tol = 1e-8);

struct MomentTable {
  Symbol phi;
  Symbol psi;
  int n_max = 0;
  int j_min = 0;
  int j_max = 0;
  double tolerance = 0.0;
  /// entries[n][j - j_min] = \int conj(u) e_j conj(phi)^n dA
  std::vector<std::vector<cplx>> entries;

  cplx at(int n, int j) const { return entries.at(n).at(j - j_min); }
  double max_abs() const;
};

struct MomentScan {
  MomentTable table;
  ExperimentReport report;
};

/// Moments of the residual u of psi against e_j conj(phi)^n. Only finitely
/// many test functions are checked, so vanishing moments with a nonzero
/// residual yield "inconclusive", never "pass".
MomentScan run_moment_scan(const Domain& domain, const Symbol& phi, const Symbol& psi,
                           int n_max, int j_max, int N, const QuadratureRule& rule,
                           double tol = 1e-8);

/// T_{log r} on the annulus against radial partners.
ExperimentReport run_annulus_counterexample(double rho, const std::vector<Symbol>& partners,
                                            int N, const QuadratureRule& rule,
                                            double tol = 1e-10);

/// Disk-only harmonic pair check with an L2(dA) fit psi ~ a phi + b.
ExperimentReport run_harmonic_pair(const Symbol& phi, const Symbol& psi, int N,
                                   const QuadratureRule& rule, double tol = 1e-10);

struct SweepPoint {
  int N;
  double interior_two_norm;
};

/// Interior commutator two-norm across truncation orders.
std::vector<SweepPoint> commutator_sweep(const Domain& domain, const Symbol& phi,
                                         const Symbol& psi, const std::vector<int>& orders,
                                         const QuadratureRule& rule, Method method);

}  // namespace bergman
