#include "cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "run_config.hpp"

namespace bergman::cli {

namespace {

template <auto F>
struct Free {
  template <class T>
  void operator()(T* p) const {
    F(p);
  }
};

using SymbolPtr = std::unique_ptr<bergman_symbol, Free<bergman_symbol_free>>;
using OperatorPtr = std::unique_ptr<bergman_operator, Free<bergman_operator_free>>;
using CoeffsPtr = std::unique_ptr<bergman_coeffs, Free<bergman_coeffs_free>>;
using DecompositionPtr = std::unique_ptr<bergman_decomposition, Free<bergman_decomposition_free>>;
using ReportPtr = std::unique_ptr<bergman_report, Free<bergman_report_free>>;
using MomentsPtr = std::unique_ptr<bergman_moments, Free<bergman_moments_free>>;
using BatteryPtr = std::unique_ptr<bergman_battery, Free<bergman_battery_free>>;
using StringPtr = std::unique_ptr<char, Free<bergman_string_free>>;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LibraryError : public std::runtime_error {
 public:
  LibraryError(bergman_status status, const std::string& message)
      : std::runtime_error(message), status_(status) {}
  bergman_status status() const { return status_; }

 private:
  bergman_status status_;
};

void check(bergman_status status) {
  if (status != BERGMAN_OK) throw LibraryError(status, bergman_last_error());
}

std::string take(char* s) {
  StringPtr owned(s);
  return std::string(owned.get());
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

SymbolPtr parse(const std::string& text) {
  bergman_symbol* s = nullptr;
  check(bergman_symbol_parse(text.c_str(), &s));
  return SymbolPtr(s);
}

const std::string& require(const std::string& value, const std::string& fallback, const char* what) {
  if (!value.empty()) return value;
  if (!fallback.empty()) return fallback;
  throw UsageError(std::string("missing ") + what);
}

int verdict_exit(const bergman_report* r) {
  return bergman_report_verdict(r) == BERGMAN_VERDICT_FAIL ? kExitFail : kExitOk;
}

class Runner {
 public:
  Runner(const RunConfig& cfg, std::ostream& out, std::ostream& err)
      : cfg_(cfg), out_(out), err_(err), domain_(to_c_domain(cfg)),
        quad_{cfg.n_r, cfg.n_theta} {}

  int matrix() {
    auto s = parse(require(cfg_.symbol, cfg_.phi, "--symbol"));
    warn_integrability(s.get());
    bergman_operator* op = nullptr;
    check(bergman_operator_build(domain_, s.get(), cfg_.trunc, to_c_method(cfg_), quad_, &op));
    OperatorPtr owned(op);
    char* text = nullptr;
    check(bergman_operator_write(op, to_c_format(cfg_), &text));
    emit(take(text));
    return kExitOk;
  }

  int commutator() {
    auto phi = parse(require(cfg_.phi, "", "--phi"));
    auto psi = parse(require(cfg_.psi, "", "--psi"));
    warn_integrability(phi.get());
    warn_integrability(psi.get());
    if (!cfg_.sweep.empty()) {
      char* csv = nullptr;
      check(bergman_commutator_sweep(domain_, phi.get(), psi.get(), cfg_.sweep.data(), cfg_.sweep.size(),
                                     to_c_method(cfg_), quad_, &csv));
      emit(take(csv));
      return kExitOk;
    }
    bergman_report* r = nullptr;
    check(bergman_run_commute_check(domain_, phi.get(), psi.get(), cfg_.trunc, to_c_method(cfg_), quad_,
                                    cfg_.tol, &r));
    return finish(ReportPtr(r));
  }

  int project() {
    auto g = parse(require(cfg_.symbol, cfg_.psi, "--symbol"));
    warn_integrability(g.get());
    bergman_coeffs* c = nullptr;
    check(bergman_project(domain_, g.get(), cfg_.trunc, to_c_method(cfg_), quad_, &c));
    CoeffsPtr owned(c);
    char* text = nullptr;
    check(bergman_coeffs_write(c, to_c_format(cfg_), &text));
    emit(take(text));
    return kExitOk;
  }

  int decompose() {
    auto psi = parse(require(cfg_.symbol, cfg_.psi, "--symbol"));
    warn_integrability(psi.get());
    bergman_decomposition* d = nullptr;
    check(bergman_decompose(domain_, psi.get(), cfg_.trunc, quad_, &d));
    DecompositionPtr owned(d);
    char* text = nullptr;
    check(bergman_decomposition_write(d, to_c_format(cfg_), &text));
    emit(take(text));
    return kExitOk;
  }

  int moments() {
    auto phi = parse(require(cfg_.phi, "", "--phi"));
    auto psi = parse(require(cfg_.psi, "", "--psi"));
    bergman_report* r = nullptr;
    bergman_moments* m = nullptr;
    check(bergman_run_moment_scan(domain_, phi.get(), psi.get(), cfg_.n_max, cfg_.j_max, cfg_.trunc, quad_,
                                  cfg_.tol, &r, &m));
    ReportPtr report(r);
    MomentsPtr table(m);
    char* text = nullptr;
    if (cfg_.format == "csv") {
      check(bergman_moments_write(m, BERGMAN_FORMAT_CSV, &text));
      emit(take(text));
    } else {
      check(bergman_report_write(r, BERGMAN_FORMAT_JSON, utc_timestamp().c_str(), &text));
      nlohmann::json doc{{"report", nlohmann::json::parse(take(text))}};
      check(bergman_moments_write(m, BERGMAN_FORMAT_JSON, &text));
      doc["moments"] = nlohmann::json::parse(take(text));
      emit(doc.dump(2) + "\n");
    }
    err_ << "verdict: " << bergman_report_summary(r) << "\n";
    return verdict_exit(r);
  }

  int annulus_demo() {
    if (domain_.kind != BERGMAN_ANNULUS) {
      if (cfg_.domain_set) throw UsageError("annulus-demo needs --domain annulus:<rho>");
      domain_ = bergman_domain{BERGMAN_ANNULUS, 0.5};
    }
    std::vector<std::string> texts = cfg_.partners;
    if (texts.empty()) texts = {"z*zbar", "1"};
    std::vector<SymbolPtr> partners;
    std::vector<const bergman_symbol*> raw;
    for (const auto& t : texts) {
      partners.push_back(parse(t));
      raw.push_back(partners.back().get());
    }
    bergman_report* r = nullptr;
    check(bergman_run_annulus_counterexample(domain_.rho, raw.data(), raw.size(), cfg_.trunc, quad_, cfg_.tol,
                                             &r));
    return finish(ReportPtr(r));
  }

  int verify() {
    bergman_battery* b = nullptr;
    check(bergman_battery_run(&b));
    BatteryPtr battery(b);
    const size_t n = bergman_battery_size(b);
    size_t passed = 0;
    for (size_t i = 0; i < n; ++i) {
      char* line = nullptr;
      check(bergman_battery_summary_line(b, i, &line));
      out_ << take(line) << "\n";
      if (bergman_report_verdict(bergman_battery_report(b, i)) == BERGMAN_VERDICT_PASS) ++passed;
    }
    out_ << passed << "/" << n << " experiments passed\n";
    out_.flush();
    if (!cfg_.out.empty()) {
      char* text = nullptr;
      check(bergman_battery_write(b, utc_timestamp().c_str(), &text));
      write_file(cfg_.out, take(text));
    }
    return passed == n ? kExitOk : kExitFail;
  }

 private:
  int finish(ReportPtr r) {
    char* text = nullptr;
    check(bergman_report_write(r.get(), to_c_format(cfg_), utc_timestamp().c_str(), &text));
    emit(take(text));
    err_ << "verdict: " << bergman_report_summary(r.get()) << "\n";
    return verdict_exit(r.get());
  }

  void warn_integrability(const bergman_symbol* s) {
    if (domain_.kind == BERGMAN_DISK && !bergman_symbol_integrable_on_disk(s)) {
      char* text = nullptr;
      check(bergman_symbol_to_string(s, &text));
      err_ << "warning: symbol " << take(text) << " is not integrable on the disk\n";
    }
  }

  void emit(const std::string& text) {
    if (cfg_.out.empty()) {
      out_ << text;
      out_.flush();
    } else {
      write_file(cfg_.out, text);
    }
  }

  static void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f) throw IoError("write to '" + path + "' failed");
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
  bergman_domain domain_;
  bergman_quad quad_;
};

struct FlagValues {
  std::string domain, symbol, phi, psi, trunc, quad, n_max, j_max, tol, format, out, method, sweep, config;
  std::vector<std::string> partners;
};

void add_flags(CLI::App& app, FlagValues& v) {
  app.add_option("--domain", v.domain, "disk or annulus:<rho>");
  app.add_option("--symbol", v.symbol, "symbol, e.g. \"z*zbar\"");
  app.add_option("--phi", v.phi, "first symbol");
  app.add_option("--psi", v.psi, "second symbol");
  app.add_option("--trunc", v.trunc, "truncation order N (default 32)");
  app.add_option("--quad", v.quad, "quadrature orders <n_r>x<n_theta> (default 64x256)");
  app.add_option("--n-max", v.n_max, "largest power of phi (default 4)");
  app.add_option("--j-max", v.j_max, "largest basis index in moment scans (default 8)");
  app.add_option("--tol", v.tol, "verdict tolerance");
  app.add_option("--format", v.format, "json or csv (default json)");
  app.add_option("--out", v.out, "output path (default stdout)");
  app.add_option("--method", v.method, "default, closed or quadrature");
  app.add_option("--partner", v.partners, "radial partner symbol for annulus-demo (repeatable)");
  app.add_option("--sweep", v.sweep, "comma-separated truncation orders for a commutator sweep");
  app.add_option("--config", v.config, "key = value configuration file");
}

RunConfig merge(const CLI::App& app, const FlagValues& v) {
  RunConfig cfg = v.config.empty() ? RunConfig{} : load_config(v.config);
  const std::pair<const char*, const std::string*> singles[] = {
      {"domain", &v.domain}, {"symbol", &v.symbol}, {"phi", &v.phi},       {"psi", &v.psi},
      {"trunc", &v.trunc},   {"quad", &v.quad},     {"n-max", &v.n_max},   {"j-max", &v.j_max},
      {"tol", &v.tol},       {"format", &v.format}, {"out", &v.out},       {"method", &v.method},
      {"sweep", &v.sweep}};
  for (const auto& [key, value] : singles) {
    if (app.count(std::string("--") + key) > 0) apply_setting(cfg, key, *value);
  }
  if (app.count("--partner") > 0) {
    cfg.partners.clear();
    for (const auto& p : v.partners) apply_setting(cfg, "partner", p);
  }
  validate(cfg);
  return cfg;
}

int library_exit(bergman_status status) {
  switch (status) {
    case BERGMAN_ERR_INVALID_ARGUMENT:
    case BERGMAN_ERR_PARSE:
    case BERGMAN_ERR_DOMAIN:
    case BERGMAN_ERR_DIMENSION:
      return kExitUsage;
    case BERGMAN_ERR_IO:
      return kExitIo;
    default:
      return kExitFail;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toeplitz operators on Bergman spaces of the disk and annulus", "bergman"};
  FlagValues flags;
  add_flags(app, flags);
  app.require_subcommand(1);
  const char* names[][2] = {
      {"matrix", "print the truncated Toeplitz matrix of --symbol"},
      {"commutator", "commutator of T_phi and T_psi, or a norm sweep with --sweep"},
      {"project", "Bergman projection coefficients of --symbol"},
      {"decompose", "split --symbol into analytic part and residual"},
      {"moments", "moment table for --phi and --psi"},
      {"verify", "run the verification battery"},
      {"annulus-demo", "radial symbol log r on the annulus"},
  };
  for (const auto& [name, help] : names) app.add_subcommand(name, help)->fallthrough();
  const std::string usage = app.help();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << usage;
    return kExitUsage;
  }

  try {
    const RunConfig cfg = merge(app, flags);
    Runner runner(cfg, out, err);
    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "matrix") return runner.matrix();
    if (sub == "commutator") return runner.commutator();
    if (sub == "project") return runner.project();
    if (sub == "decompose") return runner.decompose();
    if (sub == "moments") return runner.moments();
    if (sub == "annulus-demo") return runner.annulus_demo();
    return runner.verify();
  } catch (const ConfigIoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << usage;
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const LibraryError& e) {
    err << "error: " << e.what() << "\n";
    return library_exit(e.status());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace bergman::cli
