#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pcs/invariants.hpp"
#include "pcs/localideal.hpp"
#include "pcs/semigroup.hpp"

namespace pcs {

// The unique monic G of Y-degree n/d with deg_Y(F - G^d) < n - n/d, for a
// monic F of degree n and d | n with p not dividing d.
BivariatePolynomial approximate_root(const BivariatePolynomial& F, long d);

struct TraceTerm {
  BivariatePolynomial factor;  // scalar times a monomial in the tower roots
  int root_index;              // bracket partner f_j, j in [-1, g-1]
};

struct QsElement {
  long s;
  BivariatePolynomial value;
  std::vector<TraceTerm> trace;  // the first entry realizes the minimum value
};

// Approximate-root tower of a monic irreducible Weierstrass polynomial f,
// with per-truncation-level branches, semigroups and the q_s machinery.
class RootTower {
 public:
  // Requires: f Weierstrass monic in Y of degree mult(f) = S.multiplicity(),
  // and p not dividing any e_j for j < genus.  The q_s constructions
  // additionally require S tame.
  static RootTower build(const BivariatePolynomial& f, const ValueSemigroup& S);

  int genus() const { return static_cast<int>(levels_.size()) - 1; }
  // f_j for j in [-1, genus-1]; f_(-1) = X.
  const BivariatePolynomial& root(int j) const;
  // Curve of genus `level`: the root f_level for level < genus, f itself at
  // the top.
  const BivariatePolynomial& curve(int level) const;
  const ValueSemigroup& level_semigroup(int level) const;
  const Branch& level_branch(int level) const;
  // I(f, f_j) = v_(j+1), verified at construction.
  long top_value(int j) const;

  // Auxiliary element with I(f, .) = c(f) - 1 + n_g * t, t in S(f_(g-1))*.
  BivariatePolynomial tilde_q(long t);
  // The q_s element: I(f, q_s) = s + c(f) - 1, deg_Y < mult(f), q_s in J(f).
  QsElement q_element(long s);

  // h = h'' * f_(g-1)^(n_g - 1) + h' by the division split; exposed with the
  // full multi-index expansion of h over the basis f^J.
  struct VDecomposition {
    std::map<std::vector<int>, UniPoly> coefficients;
    BivariatePolynomial h_second;  // quotient part (top digit n_g - 1)
    BivariatePolynomial h_prime;   // remainder part
  };
  VDecomposition vmodule_decompose(const BivariatePolynomial& h);

 private:
  struct Level {
    Level(BivariatePolynomial c, std::unique_ptr<Branch> b, ValueSemigroup s)
        : curve(std::move(c)), branch(std::move(b)), S(std::move(s)) {}
    BivariatePolynomial curve;
    std::unique_ptr<Branch> branch;
    ValueSemigroup S;
    long n = 1;          // e_(level-1)/e_level
    long v_top = 1;      // top generator of the level semigroup
    long drop_threshold = 0;
    std::map<long, QsElement> cache;
  };

  RootTower() = default;

  QsElement q_at_level(int level, long s);
  BivariatePolynomial tilde_at_level(int level, long t);  // lift of q(level-1, t)
  // Rewrites h into h' with the same value and deg_Y < deg C_l - deg f_(l-1),
  // subtracting tilde elements; extends the trace accordingly.
  QsElement degree_reduce(int level, QsElement h, long m);
  long level_valuation(int level, const BivariatePolynomial& g);

  std::vector<BivariatePolynomial> roots_;  // roots_[j+1] = f_j
  std::vector<Level> levels_;
  std::vector<long> top_values_;  // I(f, f_j)
};

struct KeyFamilyEntry {
  long alpha;
  BivariatePolynomial realizer;
};

// c realizers of the sweep values S \ (S + c - 1), each of Y-degree < mult.
std::vector<KeyFamilyEntry> key_family(RootTower& tower);

struct KeyTheoremVerdict {
  bool mu_equals_conductor;
  bool family_independent_mod_jacobian;
  bool q_elements_valid;
  long mu;
  long conductor;
  int q_count;
  std::vector<std::string> failures;
  bool pass() const {
    return mu_equals_conductor && family_independent_mod_jacobian && q_elements_valid;
  }
};

struct QsRow {
  long s;
  long value;  // I(f, q_s)
  int deg_y;
  bool in_jacobian;
};

// Executable verification for a tame Weierstrass branch: (a) mu(f) = c(f),
// (b) the key family is independent modulo J(f), (c) every q_s in the sweep
// range satisfies its value, degree and membership contracts.
KeyTheoremVerdict verify_key_theorem(const BivariatePolynomial& f,
                                     std::vector<QsRow>* rows = nullptr);

}  // namespace pcs
