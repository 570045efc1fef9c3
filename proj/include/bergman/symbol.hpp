#pragma once

#include <string>
#include <vector>

#include "bergman/quadrature.hpp"

namespace bergman {

/// c * z^m * zbar^n * r^alpha * (log r)^p
struct Term {
  cplx coeff{1.0, 0.0};
  int m = 0;
  int n = 0;
  double alpha = 0.0;
  int p = 0;

  bool same_signature(const Term& o) const noexcept {
    return m == o.m && n == o.n && alpha == o.alpha && p == o.p;
  }
  friend bool operator==(const Term&, const Term&) = default;
};

/// A finite sum of terms, kept canonical: sorted by (m, n, alpha, p), equal
/// signatures merged, zero coefficients dropped. The empty sum is the zero
/// function.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::vector<Term> terms);

  static Symbol constant(cplx c);
  static Symbol monomial(int m, int n, cplx c = 1.0);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  /// Largest |m - n| over the terms; T_s is banded with this half-width.
  int bandwidth() const noexcept;
  /// Integrable against dA on the disk: m + n + alpha > -2 for every term.
  bool integrable_on_disk() const noexcept;

  Symbol operator+(const Symbol& o) const;
  Symbol operator-(const Symbol& o) const;
  Symbol operator*(cplx c) const;
  /// Pointwise complex conjugate (swaps m and n, conjugates coefficients).
  Symbol conj() const;

  friend bool operator==(const Symbol&, const Symbol&) = default;

 private:
  void canonicalize();
  std::vector<Term> terms_;
};

/// Parses the symbol grammar:
///   symbol := term (('+'|'-') term)*
///   term   := [coeff '*'] factor ('*' factor)* | coeff
///   factor := 'z'['^'int] | 'zbar'['^'int] | 'r^'float | 'log(r)'['^'int]
///   coeff  := decimal | decimal'i' | '(' re ('+'|'-') im 'i' ')'
/// Throws ParseError with the byte offset of the first offending character.
Symbol parse_symbol(const std::string& text);

/// Canonical text in the same grammar; parse_symbol(to_string(s)) == s.
std::string to_string(const Symbol& s);

/// Throws Error(domain_error) at z = 0 when a term has alpha < 0 or p > 0.
cplx eval_symbol(const Symbol& s, cplx z);

Symbol multiply(const Symbol& a, const Symbol& b);
Symbol power(const Symbol& a, int n);

struct ClassificationFlags {
  bool analytic = false;
  bool conjugate_analytic = false;
  bool radial = false;
  bool harmonic = false;
  bool constant = false;
  bool bounded = false;  // on the domain passed to classify
  bool bounded_on_disk = false;
  bool bounded_on_annulus = true;
};

ClassificationFlags classify(const Symbol& s, const Domain& domain);

struct FourierProfiles {
  int j_min = 0;
  int j_max = 0;
  std::vector<double> radii;
  /// values[j - j_min][i] = psi_j(radii[i])
  std::vector<std::vector<cplx>> values;

  const std::vector<cplx>& profile(int j) const { return values.at(j - j_min); }
};

/// psi_j(r) = (1/2pi) \int psi(r e^{i theta}) e^{-i j theta} d theta, from the
/// terms: each term feeds j = m - n with c r^{m+n+alpha} (log r)^p.
FourierProfiles fourier_profiles(const Symbol& s, int j_min, int j_max,
                                 const std::vector<double>& radii);

}  // namespace bergman
