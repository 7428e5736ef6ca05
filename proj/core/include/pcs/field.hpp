#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "pcs/error.hpp"

namespace pcs {

class FieldElement;

// Exact coefficient field: GF(p^k) with a deterministic modulus, or the
// rationals.  Instances are interned and immutable, so elements can share
// their owner by pointer and field mismatch is a pointer comparison.
class FieldSpec {
 public:
  static const FieldSpec& rationals();
  static const FieldSpec& finite(std::int64_t p, int ext_degree = 1);
  // Explicit monic modulus c_0 + c_1 u + ... + u^k; verified irreducible.
  static const FieldSpec& finite_with_modulus(std::int64_t p, std::vector<std::int64_t> modulus);
  // Accepts "QQ", "GF(p)" and "GF(p^k)".
  static const FieldSpec& parse(const std::string& text);

  std::int64_t characteristic() const { return p_; }
  int extension_degree() const { return k_; }
  bool is_rational() const { return p_ == 0; }
  bool is_prime_field() const { return p_ > 0 && k_ == 1; }
  const std::vector<std::int64_t>& modulus() const { return modulus_; }
  // p^k; throws on overflow (used only when enumerating small fields).
  std::int64_t order() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_integer(std::int64_t n) const;
  FieldElement from_rational(const mpq_class& q) const;
  // Residue coefficients c_0..c_{k-1} in the power basis of the generator.
  FieldElement from_residue(std::vector<std::int64_t> coeffs) const;
  // Base-p digits of idx give the residue coefficients; idx in [0, order()).
  FieldElement element_from_index(std::int64_t idx) const;
  FieldElement generator() const;

  std::string to_string() const;

 private:
  FieldSpec(std::int64_t p, int k, std::vector<std::int64_t> modulus);

  std::int64_t p_;
  int k_;
  std::vector<std::int64_t> modulus_;

  friend class FieldElement;
};

class FieldElement {
 public:
  const FieldSpec& owner() const { return *owner_; }

  bool is_zero() const;
  bool is_one() const;

  FieldElement operator-() const;
  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);

  FieldElement inverse() const;
  FieldElement pow(std::int64_t e) const;
  // a |-> a^p (identity in characteristic 0 is not defined; throws).
  FieldElement frobenius() const;
  // b with b^p = a, computed as p^(k-1) Frobenius iterations.
  FieldElement frobenius_root() const;

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  std::string to_string() const;

  // Residue in [0, p) for prime fields.
  std::int64_t prime_residue() const;
  const mpq_class& rational() const;
  // Power-basis coefficients, size k, for extension fields.
  std::vector<std::int64_t> residue_coeffs() const;

 private:
  friend class FieldSpec;
  friend std::optional<FieldElement> nth_root(const FieldElement&, std::int64_t);

  using Rep = std::variant<std::int64_t, std::vector<std::int64_t>, mpq_class>;

  FieldElement(const FieldSpec* owner, Rep rep) : owner_(owner), rep_(std::move(rep)) {}

  void check_same_owner(const FieldElement& o) const {
    if (owner_ != o.owner_) fail(errc::field_mismatch, "elements of different fields");
  }

  const FieldSpec* owner_;
  Rep rep_;
};

// Some n-th root of a if one exists in the owner field.
std::optional<FieldElement> nth_root(const FieldElement& a, std::int64_t n);

// Smallest extension degree multiplier m such that a (from a prime field)
// gains an n-th root in GF(p^m); searches m = 1..limit.
std::optional<int> nth_root_extension_degree(const FieldElement& a, std::int64_t n, int limit);

}  // namespace pcs
