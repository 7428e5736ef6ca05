#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcs/branch.hpp"

namespace pcs {

// Numerical semigroup of values of a plane branch: minimal generators
// v_0 < ... < v_g with gcd 1, the gcd chain e_i, ladder n_i = e_(i-1)/e_i,
// conductor and Apery set.  Construction validates the branch axioms
// (strongly increasing, nice, symmetric).
class ValueSemigroup {
 public:
  static ValueSemigroup from_generators(std::vector<long> gens);

  const std::vector<long>& generators() const { return gens_; }
  long multiplicity() const { return gens_[0]; }
  int genus() const { return static_cast<int>(gens_.size()) - 1; }
  // e_0..e_g with e_i = gcd(v_0..v_i).
  const std::vector<long>& gcd_chain() const { return e_; }
  // n_1..n_g with n_i = e_(i-1)/e_i.
  const std::vector<long>& ladder() const { return n_; }
  long conductor() const { return conductor_; }
  // Least semigroup element in each residue class mod v_0.
  const std::vector<long>& apery() const { return apery_; }

  bool contains(long x) const;
  // x = x_0 v_0 + ... + x_g v_g with 0 <= x_i <= n_i - 1 for i >= 1;
  // nullopt when x is not in the semigroup.
  std::optional<std::vector<long>> canonical_representation(long x) const;
  bool tame(std::int64_t p) const;
  // S \ (S + c - 1) via the symmetry bijection; has exactly c elements.
  std::vector<long> sweep_set() const;

  bool symmetric() const;
  bool strongly_increasing() const;
  bool nice() const;

  std::string to_string() const;

 private:
  ValueSemigroup() = default;

  std::vector<long> gens_, e_, n_, apery_;
  long conductor_ = 0;
};

// Minimal generators reconstructed from the multiplicity sequence of the
// blowup chain alone, through proximity analysis and curvette values.
std::vector<long> semigroup_from_chain(const BlowupChain& chain);

// Value semigroup by valuation subduction on the parametrization,
// cross-checked against the chain reconstruction; aborts on disagreement.
ValueSemigroup semigroup_of(const Branch& branch);

}  // namespace pcs
