#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcs/field.hpp"

namespace pcs {

// Exact dense univariate polynomial over a FieldSpec.  Coefficients are
// stored from degree 0 up with no trailing zeros; the zero polynomial has
// an empty coefficient vector.
class UniPoly {
 public:
  explicit UniPoly(const FieldSpec& owner) : owner_(&owner) {}
  UniPoly(const FieldSpec& owner, std::vector<FieldElement> coeffs);

  static UniPoly monomial(const FieldSpec& owner, int degree, const FieldElement& c);
  static UniPoly constant(const FieldElement& c);

  const FieldSpec& owner() const { return *owner_; }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  // Order of vanishing at 0; -1 for the zero polynomial.
  int order() const;
  FieldElement coeff(int i) const;
  const FieldElement& leading() const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator-() const;
  UniPoly scaled(const FieldElement& c) const;
  UniPoly shifted(int k) const;  // multiply by x^k
  UniPoly pow(int e) const;

  // Quotient and remainder; divisor's leading coefficient must be invertible.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
  UniPoly derivative() const;
  FieldElement eval(const FieldElement& x) const;

  bool operator==(const UniPoly& o) const { return owner_ == o.owner_ && coeffs_ == o.coeffs_; }
  bool operator!=(const UniPoly& o) const { return !(*this == o); }

  std::string to_string(const std::string& var = "X") const;

 private:
  void trim();

  const FieldSpec* owner_;
  std::vector<FieldElement> coeffs_;
};

// Monic gcd.
UniPoly gcd(const UniPoly& a, const UniPoly& b);

}  // namespace pcs
