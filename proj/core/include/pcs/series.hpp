#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcs/unipoly.hpp"

namespace pcs {

// Truncated univariate power series: coefficients of t^0..t^(precision-1)
// are certified, everything above is unknown.  Arithmetic propagates the
// weakest certified precision of its operands.
class UniSeries {
 public:
  UniSeries(const FieldSpec& owner, int precision);
  UniSeries(const FieldSpec& owner, std::vector<FieldElement> coeffs, int precision);
  static UniSeries from_poly(const UniPoly& p, int precision);
  static UniSeries one(const FieldSpec& owner, int precision);
  static UniSeries t(const FieldSpec& owner, int precision);

  const FieldSpec& owner() const { return *owner_; }
  int precision() const { return precision_; }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  FieldElement coeff(int i) const;

  // Order of the lowest certified nonzero term; nullopt if zero to precision.
  std::optional<int> order() const;
  bool is_zero_to_precision() const { return !order().has_value(); }
  const FieldElement& leading() const;  // coefficient at order()

  UniSeries truncated(int precision) const;

  UniSeries operator+(const UniSeries& o) const;
  UniSeries operator-(const UniSeries& o) const;
  UniSeries operator*(const UniSeries& o) const;
  UniSeries operator-() const;
  UniSeries scaled(const FieldElement& c) const;
  UniSeries shifted(int k) const;  // multiply by t^k; precision grows by k
  UniSeries pow(int e) const;

  // Multiplicative inverse; requires a unit constant term.
  UniSeries inverse() const;
  // v with v^n = this, for unit series.  The prime-to-p part uses Newton
  // iteration; p-th root layers are coefficientwise Frobenius roots.
  UniSeries nth_root(std::int64_t n) const;
  // d/dt.
  UniSeries derivative() const;
  // this(u(t)) for ord u >= 1.
  UniSeries compose(const UniSeries& u) const;

  bool operator==(const UniSeries& o) const;

  std::string to_string(const std::string& var = "t") const;

 private:
  void normalize();

  const FieldSpec* owner_;
  std::vector<FieldElement> coeffs_;  // size == precision_
  int precision_;
};

// p(u(t)) for an exact polynomial p; certified to u's precision.
UniSeries eval_poly_at_series(const UniPoly& p, const UniSeries& u);

}  // namespace pcs
