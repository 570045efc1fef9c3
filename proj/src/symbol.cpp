#include "bergman/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "bergman/error.hpp"

namespace bergman {

namespace {

cplx ipow(cplx z, int k) {
  cplx out = 1.0;
  for (int i = 0; i < k; ++i) out *= z;
  return out;
}

bool singular_at_origin(const Term& t) { return t.alpha < 0.0 || t.p > 0; }

}  // namespace

Symbol::Symbol(std::vector<Term> terms) : terms_(std::move(terms)) { canonicalize(); }

Symbol Symbol::constant(cplx c) { return Symbol({Term{c, 0, 0, 0.0, 0}}); }

Symbol Symbol::monomial(int m, int n, cplx c) {
  if (m < 0 || n < 0) throw Error(ErrorCode::invalid_argument, "monomial powers must be nonnegative");
  return Symbol({Term{c, m, n, 0.0, 0}});
}

void Symbol::canonicalize() {
  for (const Term& t : terms_) {
    if (t.m < 0 || t.n < 0 || t.p < 0) {
      throw Error(ErrorCode::invalid_argument, "term powers of z, zbar and log(r) must be nonnegative");
    }
    if (!std::isfinite(t.alpha) || !std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag())) {
      throw Error(ErrorCode::non_finite, "term with non-finite coefficient or exponent");
    }
  }
  std::stable_sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    return std::tie(a.m, a.n, a.alpha, a.p) < std::tie(b.m, b.n, b.alpha, b.p);
  });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (const Term& t : terms_) {
    if (!merged.empty() && merged.back().same_signature(t)) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == cplx(0.0, 0.0); });
  terms_ = std::move(merged);
}

int Symbol::bandwidth() const noexcept {
  int d = 0;
  for (const Term& t : terms_) d = std::max(d, std::abs(t.m - t.n));
  return d;
}

bool Symbol::integrable_on_disk() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.m + t.n + t.alpha > -2.0; });
}

Symbol Symbol::operator+(const Symbol& o) const {
  std::vector<Term> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return Symbol(std::move(all));
}

Symbol Symbol::operator-(const Symbol& o) const { return *this + o * cplx(-1.0, 0.0); }

Symbol Symbol::operator*(cplx c) const {
  std::vector<Term> all = terms_;
  for (Term& t : all) t.coeff *= c;
  return Symbol(std::move(all));
}

Symbol Symbol::conj() const {
  std::vector<Term> all = terms_;
  for (Term& t : all) {
    t.coeff = std::conj(t.coeff);
    std::swap(t.m, t.n);
  }
  return Symbol(std::move(all));
}

cplx eval_symbol(const Symbol& s, cplx z) {
  const double r = std::abs(z);
  const cplx zbar = std::conj(z);
  cplx sum = 0.0;
  for (const Term& t : s.terms()) {
    if (r == 0.0 && singular_at_origin(t)) {
      throw Error(ErrorCode::domain_error, "symbol with r^alpha (alpha < 0) or log(r) evaluated at 0");
    }
    cplx v = t.coeff * ipow(z, t.m) * ipow(zbar, t.n);
    if (t.alpha != 0.0) v *= std::pow(r, t.alpha);
    if (t.p > 0) v *= std::pow(std::log(r), t.p);
    sum += v;
  }
  return sum;
}

Symbol multiply(const Symbol& a, const Symbol& b) {
  std::vector<Term> out;
  out.reserve(a.terms().size() * b.terms().size());
  for (const Term& x : a.terms()) {
    for (const Term& y : b.terms()) {
      out.push_back({x.coeff * y.coeff, x.m + y.m, x.n + y.n, x.alpha + y.alpha, x.p + y.p});
    }
  }
  return Symbol(std::move(out));
}

Symbol power(const Symbol& a, int n) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "negative symbol power");
  Symbol out = Symbol::constant(1.0);
  for (int i = 0; i < n; ++i) out = multiply(out, a);
  return out;
}

ClassificationFlags classify(const Symbol& s, const Domain& domain) {
  const auto& ts = s.terms();
  auto all = [&](auto pred) { return std::all_of(ts.begin(), ts.end(), pred); };

  ClassificationFlags f;
  f.analytic = all([](const Term& t) { return t.n == 0 && t.alpha == 0.0 && t.p == 0; });
  f.conjugate_analytic = all([](const Term& t) { return t.m == 0 && t.alpha == 0.0 && t.p == 0; });
  f.radial = all([](const Term& t) { return t.m == t.n; });
  f.harmonic = all([](const Term& t) {
    const bool plain = t.alpha == 0.0 && t.p == 0 && (t.m == 0 || t.n == 0);
    const bool log_r = t.m == 0 && t.n == 0 && t.alpha == 0.0 && t.p == 1;
    return plain || log_r;
  });
  f.constant = all([](const Term& t) { return t.m == 0 && t.n == 0 && t.alpha == 0.0 && t.p == 0; });
  f.bounded_on_disk = all([](const Term& t) { return !singular_at_origin(t); });
  f.bounded_on_annulus = true;
  f.bounded = domain.is_disk() ? f.bounded_on_disk : f.bounded_on_annulus;
  return f;
}

FourierProfiles fourier_profiles(const Symbol& s, int j_min, int j_max,
                                 const std::vector<double>& radii) {
  if (j_min > j_max) throw Error(ErrorCode::invalid_argument, "empty Fourier index range");
  FourierProfiles out;
  out.j_min = j_min;
  out.j_max = j_max;
  out.radii = radii;
  out.values.assign(j_max - j_min + 1, std::vector<cplx>(radii.size(), 0.0));
  for (const Term& t : s.terms()) {
    const int j = t.m - t.n;
    if (j < j_min || j > j_max) continue;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double r = radii[i];
      if (!(r >= 0.0) || (r == 0.0 && singular_at_origin(t))) {
        throw Error(ErrorCode::domain_error, "Fourier profile radius outside the symbol's domain");
      }
      double mag = std::pow(r, t.m + t.n + t.alpha);
      if (t.p > 0) mag *= std::pow(std::log(r), t.p);
      out.values[j - j_min][i] += t.coeff * mag;
    }
  }
  return out;
}

}  // namespace bergman
