#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcs/series.hpp"
#include "pcs/unipoly.hpp"

namespace pcs {

enum class Var { X, Y };

struct Term {
  int xe;
  int ye;
  FieldElement c;
};

// Lead-first ordering under the local degree order: smaller total degree is
// larger, ties broken by X-exponent descending.  1 > X > Y > X^2 > XY > ...
inline bool term_before(const Term& a, const Term& b) {
  int ta = a.xe + a.ye, tb = b.xe + b.ye;
  if (ta != tb) return ta < tb;
  return a.xe > b.xe;
}

// Exact sparse polynomial in X, Y over a FieldSpec.  Terms are kept sorted
// lead-first under the local degree order; no zero coefficients are stored.
class BivariatePolynomial {
 public:
  explicit BivariatePolynomial(const FieldSpec& owner) : owner_(&owner) {}
  BivariatePolynomial(const FieldSpec& owner, std::vector<Term> terms);

  static BivariatePolynomial constant(const FieldElement& c);
  static BivariatePolynomial monomial(const FieldSpec& owner, int xe, int ye, const FieldElement& c);
  static BivariatePolynomial variable(const FieldSpec& owner, Var v);
  static BivariatePolynomial from_y_coefficients(const FieldSpec& owner, const std::vector<UniPoly>& coeffs);

  const FieldSpec& owner() const { return *owner_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].xe == 0 && terms_[0].ye == 0); }
  bool is_unit() const { return !terms_.empty() && terms_[0].xe == 0 && terms_[0].ye == 0; }

  const Term& lead() const;
  // Minimum total degree (the multiplicity at the origin); -1 for zero.
  int order() const { return terms_.empty() ? -1 : terms_.front().xe + terms_.front().ye; }
  int total_degree() const;
  int deg_x() const;
  int deg_y() const;
  FieldElement coeff(int xe, int ye) const;

  BivariatePolynomial operator+(const BivariatePolynomial& o) const;
  BivariatePolynomial operator-(const BivariatePolynomial& o) const;
  BivariatePolynomial operator*(const BivariatePolynomial& o) const;
  BivariatePolynomial operator-() const;
  BivariatePolynomial pow(int e) const;
  BivariatePolynomial scaled(const FieldElement& c) const;
  BivariatePolynomial times_monomial(int xe, int ye, const FieldElement& c) const;
  // this - c * X^xe Y^ye * g, the reduction step workhorse.
  BivariatePolynomial axpy_monomial(const FieldElement& c, int xe, int ye,
                                    const BivariatePolynomial& g) const;

  BivariatePolynomial partial_derivative(Var v) const;
  // r-th Hasse derivative: X^i Y^j -> binom(j, r) X^i Y^(j-r) for v = Y.
  BivariatePolynomial hasse_derivative(Var v, int r) const;

  BivariatePolynomial swap_vars() const;
  // Exact division by X^k (or Y^k); throws if not divisible.
  BivariatePolynomial divided_by_power(Var v, int k) const;
  // Terms of total degree == order(): the tangent cone form.
  BivariatePolynomial lowest_form() const;
  // Drop all terms of total degree >= bound.
  BivariatePolynomial truncated_at_degree(int bound) const;

  UniPoly y_coefficient(int j) const;
  std::vector<UniPoly> y_coefficients() const;
  // Substitute Y = 0 / X = 0.
  UniPoly restrict_to_axis(Var kept) const;

  bool operator==(const BivariatePolynomial& o) const {
    return owner_ == o.owner_ && terms_.size() == o.terms_.size() && equal_terms(o);
  }
  bool operator!=(const BivariatePolynomial& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  bool equal_terms(const BivariatePolynomial& o) const;
  void canonicalize();

  const FieldSpec* owner_;
  std::vector<Term> terms_;
};

// f(img_x, img_y), optionally dropping all terms of total degree >= degree_bound.
BivariatePolynomial substitute(const BivariatePolynomial& f, const BivariatePolynomial& img_x,
                               const BivariatePolynomial& img_y, int degree_bound = -1);

// f(x(t), y(t)) as a t-series, certified to the weakest input precision.
UniSeries eval_at_series(const BivariatePolynomial& f, const UniSeries& xs, const UniSeries& ys);

// Quotient and remainder of the division by a divisor monic in Y:
// a = q*b + r with deg_Y r < deg_Y b.  Exact polynomial arithmetic.
std::pair<BivariatePolynomial, BivariatePolynomial> divide_by_monic_y(
    const BivariatePolynomial& a, const BivariatePolynomial& b);

// Res_Y(f, g) by fraction-free Sylvester elimination; throws CommonFactor
// when the resultant vanishes.
UniPoly resultant_y(const BivariatePolynomial& f, const BivariatePolynomial& g);

// gcd up to a unit; primitive-part Euclid in (k[X])[Y].
BivariatePolynomial bivariate_gcd(const BivariatePolynomial& a, const BivariatePolynomial& b);

// gcd(f, f_X, f_Y) constant <=> f reduced (squarefree).
bool is_reduced(const BivariatePolynomial& f);
// The offending factor when f is not squarefree or the partials share one.
BivariatePolynomial squarefree_defect(const BivariatePolynomial& f);

// Truncated Y-polynomial A_0(X) Y^r + ... + A_r(X) with series coefficients,
// as produced by the coordinate-only preparation steps.
class YPolynomial {
 public:
  YPolynomial(const FieldSpec& owner, std::vector<UniSeries> coeff_of_y_power);
  static YPolynomial from_poly(const BivariatePolynomial& f, int x_precision);

  const FieldSpec& owner() const { return *owner_; }
  int degree() const { return static_cast<int>(coeff_.size()) - 1; }
  const UniSeries& coeff(int j) const { return coeff_[static_cast<size_t>(j)]; }
  const std::vector<UniSeries>& coeffs() const { return coeff_; }
  int x_precision() const;

  bool leading_is_unit() const;
  UniSeries evaluate(const UniSeries& xs, const UniSeries& ys) const;
  std::string to_string() const;

 private:
  const FieldSpec* owner_;
  std::vector<UniSeries> coeff_;
};

// Weierstrass-style division a = q*b + r, deg_Y r < deg_Y b, valid to the
// shared X-precision; b's leading coefficient must be a unit series.
std::pair<YPolynomial, YPolynomial> y_poly_divide(const YPolynomial& a, const YPolynomial& b);

}  // namespace pcs
