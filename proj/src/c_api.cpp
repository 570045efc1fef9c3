#include "bergman/bergman_c.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "bergman/battery.hpp"
#include "bergman/error.hpp"
#include "bergman/experiments.hpp"
#include "bergman/serialize.hpp"

using namespace bergman;

struct bergman_symbol {
  Symbol value;
};
struct bergman_operator {
  TruncatedOperator value;
};
struct bergman_coeffs {
  CoeffVector value;
};
struct bergman_decomposition {
  DecompositionResult value;
};
struct bergman_report {
  ExperimentReport value;
};
struct bergman_moments {
  MomentTable value;
};
struct bergman_battery {
  std::vector<BatteryEntry> entries;
  std::vector<bergman_report> reports;
};

namespace {

thread_local std::string g_last_error;
thread_local std::size_t g_last_offset = static_cast<std::size_t>(-1);

bergman_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return BERGMAN_ERR_INVALID_ARGUMENT;
    case ErrorCode::parse_error: return BERGMAN_ERR_PARSE;
    case ErrorCode::domain_error: return BERGMAN_ERR_DOMAIN;
    case ErrorCode::not_converged: return BERGMAN_ERR_NOT_CONVERGED;
    case ErrorCode::non_finite: return BERGMAN_ERR_NON_FINITE;
    case ErrorCode::dimension_mismatch: return BERGMAN_ERR_DIMENSION;
    case ErrorCode::io_error: return BERGMAN_ERR_IO;
  }
  return BERGMAN_ERR_INTERNAL;
}

bergman_status fail(bergman_status status, const std::string& msg) {
  g_last_error = msg;
  return status;
}

template <class F>
bergman_status guarded(F&& body) {
  g_last_error.clear();
  g_last_offset = static_cast<std::size_t>(-1);
  try {
    body();
    return BERGMAN_OK;
  } catch (const ParseError& e) {
    g_last_offset = e.offset();
    return fail(BERGMAN_ERR_PARSE, e.what());
  } catch (const Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BERGMAN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BERGMAN_ERR_INTERNAL, e.what());
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::invalid_argument, std::string("null ") + what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Domain to_domain(bergman_domain d) {
  switch (d.kind) {
    case BERGMAN_DISK: return Domain::disk();
    case BERGMAN_ANNULUS: return Domain::annulus(d.rho);
  }
  throw Error(ErrorCode::invalid_argument, "unknown domain kind");
}

Method to_method(bergman_method m, const Domain& d) {
  switch (m) {
    case BERGMAN_METHOD_DEFAULT: return default_method(d);
    case BERGMAN_METHOD_CLOSED_FORM: return Method::closed_form;
    case BERGMAN_METHOD_QUADRATURE: return Method::quadrature;
  }
  throw Error(ErrorCode::invalid_argument, "unknown method");
}

QuadratureRule to_rule(const Domain& d, bergman_quad q) { return build_quadrature(d, q.n_r, q.n_theta); }

}  // namespace

extern "C" {

const char* bergman_last_error(void) { return g_last_error.c_str(); }

size_t bergman_last_error_offset(void) { return g_last_offset; }

void bergman_string_free(char* s) { std::free(s); }

const char* bergman_version(void) { return "1.0.0"; }

bergman_status bergman_domain_parse(const char* text, bergman_domain* out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output");
    const Domain d = Domain::parse(text);
    *out = {d.is_disk() ? BERGMAN_DISK : BERGMAN_ANNULUS, d.inner_radius()};
  });
}

bergman_status bergman_domain_validate(bergman_domain domain) {
  return guarded([&] { (void)to_domain(domain); });
}

bergman_status bergman_symbol_parse(const char* text, bergman_symbol** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output");
    *out = nullptr;
    *out = new bergman_symbol{parse_symbol(text)};
  });
}

void bergman_symbol_free(bergman_symbol* s) { delete s; }

bergman_status bergman_symbol_to_string(const bergman_symbol* s, char** out) {
  return guarded([&] {
    require(s, "symbol");
    require(out, "output");
    *out = dup_string(to_string(s->value));
  });
}

bergman_status bergman_symbol_classify(const bergman_symbol* s, bergman_domain domain, bergman_flags* out) {
  return guarded([&] {
    require(s, "symbol");
    require(out, "output");
    const ClassificationFlags f = classify(s->value, to_domain(domain));
    *out = {f.analytic, f.conjugate_analytic, f.radial,          f.harmonic,
            f.constant, f.bounded,            f.bounded_on_disk, f.bounded_on_annulus};
  });
}

int bergman_symbol_integrable_on_disk(const bergman_symbol* s) {
  return s != nullptr && s->value.integrable_on_disk();
}

bergman_status bergman_symbol_eval(const bergman_symbol* s, double re, double im, double* out_re,
                                   double* out_im) {
  return guarded([&] {
    require(s, "symbol");
    require(out_re, "output");
    require(out_im, "output");
    const cplx v = eval_symbol(s->value, cplx(re, im));
    *out_re = v.real();
    *out_im = v.imag();
  });
}

bergman_status bergman_operator_build(bergman_domain domain, const bergman_symbol* s, int trunc,
                                      bergman_method method, bergman_quad quad, bergman_operator** out) {
  return guarded([&] {
    require(s, "symbol");
    require(out, "output");
    *out = nullptr;
    const Domain d = to_domain(domain);
    const Method m = to_method(method, d);
    if (m == Method::quadrature) {
      const QuadratureRule rule = to_rule(d, quad);
      *out = new bergman_operator{toeplitz_matrix(d, s->value, trunc, m, &rule)};
    } else {
      *out = new bergman_operator{toeplitz_matrix(d, s->value, trunc, m)};
    }
  });
}

void bergman_operator_free(bergman_operator* op) { delete op; }

int bergman_operator_dim(const bergman_operator* op) { return op ? op->value.dim() : 0; }

int bergman_operator_first_index(const bergman_operator* op) {
  return op ? op->value.indices.first() : 0;
}

bergman_status bergman_operator_entry(const bergman_operator* op, int j, int k, double* re, double* im) {
  return guarded([&] {
    require(op, "operator");
    require(re, "output");
    require(im, "output");
    if (!op->value.indices.contains(j) || !op->value.indices.contains(k)) {
      throw Error(ErrorCode::invalid_argument, "entry index outside the truncation");
    }
    const cplx v = op->value.entry(j, k);
    *re = v.real();
    *im = v.imag();
  });
}

bergman_status bergman_operator_write(const bergman_operator* op, bergman_format format, char** out) {
  return guarded([&] {
    require(op, "operator");
    require(out, "output");
    *out = dup_string(format == BERGMAN_FORMAT_CSV ? matrix_to_csv(op->value) : matrix_to_json(op->value));
  });
}

bergman_status bergman_project(bergman_domain domain, const bergman_symbol* g, int trunc, bergman_method method,
                               bergman_quad quad, bergman_coeffs** out) {
  return guarded([&] {
    require(g, "symbol");
    require(out, "output");
    *out = nullptr;
    const Domain d = to_domain(domain);
    const Method m = method == BERGMAN_METHOD_DEFAULT ? Method::closed_form : to_method(method, d);
    const QuadratureRule rule = to_rule(d, quad);
    *out = new bergman_coeffs{project_basis(d, g->value, trunc, rule, m)};
  });
}

void bergman_coeffs_free(bergman_coeffs* c) { delete c; }

int bergman_coeffs_size(const bergman_coeffs* c) { return c ? c->value.indices.size() : 0; }

int bergman_coeffs_first_index(const bergman_coeffs* c) { return c ? c->value.indices.first() : 0; }

bergman_status bergman_coeffs_get(const bergman_coeffs* c, int index, double* re, double* im) {
  return guarded([&] {
    require(c, "coefficients");
    require(re, "output");
    require(im, "output");
    if (!c->value.indices.contains(index)) throw Error(ErrorCode::invalid_argument, "index outside the truncation");
    *re = c->value.at(index).real();
    *im = c->value.at(index).imag();
  });
}

bergman_status bergman_coeffs_write(const bergman_coeffs* c, bergman_format format, char** out) {
  return guarded([&] {
    require(c, "coefficients");
    require(out, "output");
    *out = dup_string(format == BERGMAN_FORMAT_CSV ? coeffs_to_csv(c->value) : coeffs_to_json(c->value));
  });
}

bergman_status bergman_decompose(bergman_domain domain, const bergman_symbol* psi, int trunc, bergman_quad quad,
                                 bergman_decomposition** out) {
  return guarded([&] {
    require(psi, "symbol");
    require(out, "output");
    *out = nullptr;
    const Domain d = to_domain(domain);
    const QuadratureRule rule = to_rule(d, quad);
    *out = new bergman_decomposition{analytic_decompose(d, psi->value, trunc, rule)};
  });
}

void bergman_decomposition_free(bergman_decomposition* d) { delete d; }

double bergman_decomposition_residual_norm(const bergman_decomposition* d) {
  return d ? d->value.residual_norm : 0.0;
}

bergman_status bergman_decomposition_write(const bergman_decomposition* d, bergman_format format, char** out) {
  return guarded([&] {
    require(d, "decomposition");
    require(out, "output");
    *out = dup_string(format == BERGMAN_FORMAT_CSV ? coeffs_to_csv(d->value.analytic_part)
                                                   : decomposition_to_json(d->value));
  });
}

bergman_status bergman_run_radial_diagonality(bergman_domain domain, const bergman_symbol* s, int trunc,
                                              bergman_quad quad, double tol, bergman_report** out) {
  return guarded([&] {
    require(s, "symbol");
    require(out, "output");
    *out = nullptr;
    const Domain d = to_domain(domain);
    const QuadratureRule rule = to_rule(d, quad);
    *out = new bergman_report{run_radial_diagonality(d, s->value, trunc, rule, tol > 0.0 ? tol : 1e-8)};
  });
}

bergman_status bergman_run_commute_check(bergman_domain domain, const bergman_symbol* phi,
                                         const bergman_symbol* psi, int trunc, bergman_method method,
                                         bergman_quad quad, double tol, bergman_report** out) {
  return guarded([&] {
    require(phi, "phi");
    require(psi, "psi");
    require(out, "output");
    *out = nullptr;
    const Domain d = to_domain(domain);
    const QuadratureRule rule = to_rule(d, quad);
    *out = new bergman_report{
             run_commute_check(d, phi->value, psi->value, trunc, rule, to_method(method, d), tol)};
  });
}

bergman_status bergman_run_proof_identity(bergman_domain domain, const bergman_symbol* phi,
                                          const bergman_symbol* psi, int n_max, int trunc, bergman_quad quad,
                                          double tol, bergman_report** out) {
  return guarded([&] {
    require(phi, "phi");
    require(psi, "psi");
    require(out, "output");
    *out = nullptr;
    const Domain d = to_domain(domain);
    const QuadratureRule rule = to_rule(d, quad);
    *out = new bergman_report{
             run_proof_identity(d, phi->value, psi->value, n_max, trunc, rule, tol > 0.0 ? tol : 1e-8)};
  });
}

bergman_status bergman_run_moment_scan(bergman_domain domain, const bergman_symbol* phi,
                                       const bergman_symbol* psi, int n_max, int j_max, int trunc,
                                       bergman_quad quad, double tol, bergman_report** report_out,
                                       bergman_moments** table_out) {
  return guarded([&] {
    require(phi, "phi");
    require(psi, "psi");
    require(report_out, "output");
    *report_out = nullptr;
    if (table_out) *table_out = nullptr;
    const Domain d = to_domain(domain);
    const QuadratureRule rule = to_rule(d, quad);
    MomentScan scan =
        run_moment_scan(d, phi->value, psi->value, n_max, j_max, trunc, rule, tol > 0.0 ? tol : 1e-8);
    auto* report = new bergman_report{std::move(scan.report)};
    if (table_out) {
      try {
        *table_out = new bergman_moments{std::move(scan.table)};
      } catch (...) {
        delete report;
        throw;
      }
    }
    *report_out = report;
  });
}

bergman_status bergman_run_annulus_counterexample(double rho, const bergman_symbol* const* partners,
                                                  size_t partner_count, int trunc, bergman_quad quad,
                                                  double tol, bergman_report** out) {
  return guarded([&] {
    require(out, "output");
    *out = nullptr;
    if (partner_count > 0) require(partners, "partners");
    std::vector<Symbol> list;
    for (size_t i = 0; i < partner_count; ++i) {
      require(partners[i], "partner");
      list.push_back(partners[i]->value);
    }
    const QuadratureRule rule = to_rule(Domain::annulus(rho), quad);
    *out = new bergman_report{run_annulus_counterexample(rho, list, trunc, rule, tol > 0.0 ? tol : 1e-10)};
  });
}

bergman_status bergman_run_harmonic_pair(const bergman_symbol* phi, const bergman_symbol* psi, int trunc,
                                         bergman_quad quad, double tol, bergman_report** out) {
  return guarded([&] {
    require(phi, "phi");
    require(psi, "psi");
    require(out, "output");
    *out = nullptr;
    const QuadratureRule rule = to_rule(Domain::disk(), quad);
    *out = new bergman_report{run_harmonic_pair(phi->value, psi->value, trunc, rule, tol > 0.0 ? tol : 1e-10)};
  });
}

bergman_status bergman_commutator_sweep(bergman_domain domain, const bergman_symbol* phi,
                                        const bergman_symbol* psi, const int* orders, size_t order_count,
                                        bergman_method method, bergman_quad quad, char** csv_out) {
  return guarded([&] {
    require(phi, "phi");
    require(psi, "psi");
    require(csv_out, "output");
    if (order_count > 0) require(orders, "orders");
    const Domain d = to_domain(domain);
    const QuadratureRule rule = to_rule(d, quad);
    const std::vector<int> list(orders, orders + order_count);
    *csv_out = dup_string(
        sweep_to_csv(commutator_sweep(d, phi->value, psi->value, list, rule, to_method(method, d)),
                     "interior_two_norm"));
  });
}

void bergman_report_free(bergman_report* r) { delete r; }

bergman_verdict bergman_report_verdict(const bergman_report* r) {
  if (r == nullptr) return BERGMAN_VERDICT_INCONCLUSIVE;
  switch (r->value.verdict) {
    case Verdict::pass: return BERGMAN_VERDICT_PASS;
    case Verdict::fail: return BERGMAN_VERDICT_FAIL;
    case Verdict::inconclusive: return BERGMAN_VERDICT_INCONCLUSIVE;
  }
  return BERGMAN_VERDICT_INCONCLUSIVE;
}

const char* bergman_report_name(const bergman_report* r) { return r ? r->value.name.c_str() : ""; }

const char* bergman_report_summary(const bergman_report* r) { return r ? r->value.summary.c_str() : ""; }

bergman_status bergman_report_metric(const bergman_report* r, const char* name, double* re, double* im) {
  return guarded([&] {
    require(r, "report");
    require(name, "name");
    require(re, "output");
    require(im, "output");
    const auto it = r->value.metrics.find(name);
    if (it == r->value.metrics.end()) {
      throw Error(ErrorCode::invalid_argument, std::string("no metric named '") + name + "'");
    }
    *re = it->second.value.real();
    *im = it->second.value.imag();
  });
}

bergman_status bergman_report_write(const bergman_report* r, bergman_format format, const char* timestamp,
                                    char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "output");
    *out = dup_string(format == BERGMAN_FORMAT_CSV ? report_to_csv(r->value)
                                                   : report_to_json(r->value, timestamp ? timestamp : ""));
  });
}

void bergman_moments_free(bergman_moments* m) { delete m; }

double bergman_moments_max_abs(const bergman_moments* m) { return m ? m->value.max_abs() : 0.0; }

bergman_status bergman_moments_write(const bergman_moments* m, bergman_format format, char** out) {
  return guarded([&] {
    require(m, "moments");
    require(out, "output");
    *out = dup_string(format == BERGMAN_FORMAT_CSV ? moment_table_to_csv(m->value)
                                                   : moment_table_to_json(m->value));
  });
}

bergman_status bergman_battery_run(bergman_battery** out) {
  return guarded([&] {
    require(out, "output");
    *out = nullptr;
    auto* b = new bergman_battery{run_default_battery(), {}};
    for (const auto& e : b->entries) b->reports.push_back({e.report});
    *out = b;
  });
}

void bergman_battery_free(bergman_battery* b) { delete b; }

size_t bergman_battery_size(const bergman_battery* b) { return b ? b->entries.size() : 0; }

const bergman_report* bergman_battery_report(const bergman_battery* b, size_t i) {
  return (b && i < b->reports.size()) ? &b->reports[i] : nullptr;
}

double bergman_battery_seconds(const bergman_battery* b, size_t i) {
  return (b && i < b->entries.size()) ? b->entries[i].seconds : 0.0;
}

bergman_status bergman_battery_summary_line(const bergman_battery* b, size_t i, char** out) {
  return guarded([&] {
    require(b, "battery");
    require(out, "output");
    if (i >= b->entries.size()) throw Error(ErrorCode::invalid_argument, "battery index out of range");
    *out = dup_string(summary_line(b->entries[i]));
  });
}

bergman_status bergman_battery_write(const bergman_battery* b, const char* timestamp, char** out) {
  return guarded([&] {
    require(b, "battery");
    require(out, "output");
    *out = dup_string(battery_to_json(b->entries, timestamp ? timestamp : ""));
  });
}

}  // extern "C"
