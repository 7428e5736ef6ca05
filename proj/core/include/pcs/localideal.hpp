#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pcs/poly.hpp"

namespace pcs {

// Standard basis of an ideal I in the local ring k[[X,Y]] under the local
// degree order, computed by Mora normal form on generators truncated modulo
// M^D.  D is escalated until colength(I + M^D) stabilizes, which certifies
// M^D <= I; all queries below are exact from then on.  Ideals of infinite
// colength are recognized up front by a common factor of the generators.
class StandardBasis {
 public:
  const std::vector<BivariatePolynomial>& generators() const { return gens_; }
  // Interreduced basis of I + M^(truncation); lead terms are pairwise
  // non-divisible and every element is monic.
  const std::vector<BivariatePolynomial>& basis() const { return basis_; }
  const std::vector<std::pair<int, int>>& lead_monomials() const { return leads_; }
  // Certified truncation degree: M^trunc is contained in I when finite.
  int truncation_degree() const { return trunc_; }
  bool finite_colength() const { return finite_; }
  long quotient_dimension() const;
  bool lead_contains_pure_power(Var v) const;
  // Witness factor dividing every generator when the colength is infinite.
  const std::optional<BivariatePolynomial>& common_factor() const { return common_factor_; }
  const FieldSpec& owner() const { return *owner_; }

 private:
  friend StandardBasis standard_basis(const std::vector<BivariatePolynomial>&, int);

  const FieldSpec* owner_ = nullptr;
  std::vector<BivariatePolynomial> gens_;
  std::vector<BivariatePolynomial> basis_;
  std::vector<std::pair<int, int>> leads_;
  int trunc_ = 0;
  bool finite_ = false;
  long colength_ = 0;
  std::optional<BivariatePolynomial> common_factor_;
};

StandardBasis standard_basis(const std::vector<BivariatePolynomial>& gens, int bound = 4096);

// Number of standard monomials; nullopt when infinite.
std::optional<long> colength(const StandardBasis& sb);

// Mora normal form of h against the basis (weak normal form; zero iff h
// lies in the ideal, given the finiteness certificate).
BivariatePolynomial normal_form(const BivariatePolynomial& h, const StandardBasis& sb);
bool membership(const BivariatePolynomial& h, const StandardBasis& sb);

// Minimal l with every degree-l monomial in the ideal.
int primary_exponent(const StandardBasis& sb);

// Hilbert-Samuel multiplicity via the stabilized second difference of
// n |-> colength(I^n); requires an M-primary ideal.
long hilbert_samuel_e0(const std::vector<BivariatePolynomial>& gens);

// Smallest l <= lmax with f^l in M*T(f)^l, where T(f) = <f, f_X, f_Y>;
// nullopt when undecided up to lmax.  Smooth inputs report 1.
std::optional<int> mu_stability(const BivariatePolynomial& f, int lmax);

}  // namespace pcs
