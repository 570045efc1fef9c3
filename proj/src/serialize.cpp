#include "bergman/serialize.hpp"

#include <charconv>
#include <chrono>
#include <ctime>

#include "json.hpp"

namespace bergman {

namespace {

using json = nlohmann::json;

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json domain_json(const Domain& d) {
  json out{{"kind", d.is_disk() ? "disk" : "annulus"}};
  if (d.is_annulus()) out["rho"] = d.inner_radius();
  return out;
}

json report_json(const ExperimentReport& r) {
  json params = json::object();
  for (const auto& [key, value] : r.params) {
    std::visit([&](const auto& v) { params[key] = v; }, value);
  }
  json metrics = json::object();
  for (const auto& [key, m] : r.metrics) {
    metrics[key] = m.is_complex ? complex_json(m.value) : json(m.value.real());
  }
  json tolerances = json::object();
  for (const auto& [key, t] : r.tolerances) tolerances[key] = t;
  return json{{"experiment", r.name},     {"domain", domain_json(r.domain)},
              {"params", params},         {"metrics", metrics},
              {"tolerances", tolerances}, {"verdict", to_string(r.verdict)},
              {"summary", r.summary}};
}

std::string num(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string report_to_json(const ExperimentReport& r, const std::string& timestamp) {
  json j = report_json(r);
  if (!timestamp.empty()) j["timestamp"] = timestamp;
  return dump(j);
}

std::string report_to_csv(const ExperimentReport& r) {
  std::string out = "metric,re,im\n";
  for (const auto& [key, m] : r.metrics) {
    out += key + "," + num(m.value.real()) + "," + num(m.value.imag()) + "\n";
  }
  return out;
}

std::string matrix_to_json(const TruncatedOperator& op) {
  json entries = json::array();
  for (int j = op.indices.first(); j <= op.indices.last(); ++j) {
    json row = json::array();
    for (int k = op.indices.first(); k <= op.indices.last(); ++k) row.push_back(complex_json(op.entry(j, k)));
    entries.push_back(row);
  }
  json out{{"domain", domain_json(op.indices.domain())},
           {"symbol", to_string(op.symbol)},
           {"trunc", op.indices.truncation()},
           {"first_index", op.indices.first()},
           {"last_index", op.indices.last()},
           {"method", op.method == Method::closed_form ? "closed_form" : "quadrature"},
           {"entries", entries}};
  if (op.rule) out["quadrature"] = json{{"n_r", op.rule->n_r}, {"n_theta", op.rule->n_theta}};
  return dump(out);
}

std::string matrix_to_csv(const TruncatedOperator& op) {
  std::string out = "j,k,re,im\n";
  for (int j = op.indices.first(); j <= op.indices.last(); ++j) {
    for (int k = op.indices.first(); k <= op.indices.last(); ++k) {
      const cplx v = op.entry(j, k);
      out += std::to_string(j) + "," + std::to_string(k) + "," + num(v.real()) + "," + num(v.imag()) + "\n";
    }
  }
  return out;
}

std::string coeffs_to_json(const CoeffVector& v) {
  json coeffs = json::array();
  for (int k = v.indices.first(); k <= v.indices.last(); ++k) {
    coeffs.push_back(json{{"index", k}, {"re", v.at(k).real()}, {"im", v.at(k).imag()}});
  }
  return dump(json{{"domain", domain_json(v.indices.domain())},
                   {"trunc", v.indices.truncation()},
                   {"coefficients", coeffs}});
}

std::string coeffs_to_csv(const CoeffVector& v) {
  std::string out = "index,re,im\n";
  for (int k = v.indices.first(); k <= v.indices.last(); ++k) {
    out += std::to_string(k) + "," + num(v.at(k).real()) + "," + num(v.at(k).imag()) + "\n";
  }
  return out;
}

std::string decomposition_to_json(const DecompositionResult& d) {
  json coeffs = json::array();
  const CoeffVector& f = d.analytic_part;
  for (int k = f.indices.first(); k <= f.indices.last(); ++k) {
    coeffs.push_back(json{{"index", k}, {"re", f.at(k).real()}, {"im", f.at(k).imag()}});
  }
  return dump(json{{"domain", domain_json(f.indices.domain())},
                   {"trunc", f.indices.truncation()},
                   {"analytic_part", coeffs},
                   {"analytic_symbol", to_string(coeffs_to_symbol(f))},
                   {"residual", to_string(d.residual)},
                   {"residual_norm", d.residual_norm}});
}

std::string moment_table_to_json(const MomentTable& t) {
  json entries = json::array();
  for (int n = 0; n <= t.n_max; ++n) {
    for (int j = t.j_min; j <= t.j_max; ++j) {
      entries.push_back(json{{"n", n}, {"j", j}, {"re", t.at(n, j).real()}, {"im", t.at(n, j).imag()}});
    }
  }
  return dump(json{{"phi", to_string(t.phi)},
                   {"psi", to_string(t.psi)},
                   {"n_max", t.n_max},
                   {"j_min", t.j_min},
                   {"j_max", t.j_max},
                   {"tolerance", t.tolerance},
                   {"entries", entries}});
}

std::string moment_table_to_csv(const MomentTable& t) {
  std::string out = "n,j,re,im\n";
  for (int n = 0; n <= t.n_max; ++n) {
    for (int j = t.j_min; j <= t.j_max; ++j) {
      out += std::to_string(n) + "," + std::to_string(j) + "," + num(t.at(n, j).real()) + "," +
             num(t.at(n, j).imag()) + "\n";
    }
  }
  return out;
}

std::string sweep_to_csv(const std::vector<SweepPoint>& points, const std::string& metric) {
  std::string out = "N," + metric + "\n";
  for (const auto& p : points) out += std::to_string(p.N) + "," + num(p.interior_two_norm) + "\n";
  return out;
}

std::string battery_to_json(const std::vector<BatteryEntry>& entries, const std::string& timestamp) {
  json reports = json::array();
  bool all_pass = true;
  for (const auto& e : entries) {
    reports.push_back(report_json(e.report));
    all_pass = all_pass && e.report.verdict == Verdict::pass;
  }
  json out{{"experiment", "verify"}, {"reports", reports}, {"verdict", all_pass ? "pass" : "fail"}};
  if (!timestamp.empty()) out["timestamp"] = timestamp;
  return dump(out);
}

std::string iso8601_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace bergman
