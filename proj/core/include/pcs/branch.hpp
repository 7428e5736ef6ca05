#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pcs/poly.hpp"

namespace pcs {

// Tangent data of f at the origin: the multiplicity and, when the tangent
// cone is a power of a single linear form, that form (X, or Y - theta*X).
struct TangentLine {
  int mult;
  bool split;
  bool line_is_x;
  std::optional<FieldElement> theta;
};

TangentLine tangent_data(const BivariatePolynomial& f);

struct BlowupStep {
  int mult;            // multiplicity before this blowup
  bool swapped;        // chart swap applied first (tangent was X)
  FieldElement theta;  // center translation on the exceptional line
};

struct BlowupChain {
  std::vector<BlowupStep> steps;
  std::optional<BivariatePolynomial> terminal;  // smooth strict transform
  // Multiplicities of the successive strict transforms (ending before the
  // smooth stage).
  std::vector<int> multiplicities() const;
  // sum m_i (m_i - 1) over the chain; equals 2*delta, i.e. the conductor.
  long conductor() const;
};

struct Parametrization {
  UniSeries x, y;
  int precision() const { return std::min(x.precision(), y.precision()); }
};

struct ExpandFailure {
  int stage;
  std::string reason;
};

struct BranchData {
  BlowupChain chain;
  Parametrization par;
};

// Blowup expansion of f.  Returns the chain and a primitive parametrization
// with f(x(t), y(t)) = 0 to the target precision, or the failure stage when
// f is (geometrically) reducible.  f must be reduced and in M.
std::variant<BranchData, ExpandFailure> hn_expand(const BivariatePolynomial& f,
                                                  int target_precision);

bool is_irreducible(const BivariatePolynomial& f);

// A branch with lazily escalated parametrization precision; all valuation
// queries are certified against degree-based escalation bounds.
class Branch {
 public:
  explicit Branch(BivariatePolynomial f);

  const BivariatePolynomial& equation() const { return f_; }
  const BlowupChain& chain() const { return chain_; }
  int multiplicity() const { return mult_; }
  // Conductor of the value semigroup, exact from the chain.
  long conductor() const { return chain_.conductor(); }
  const Parametrization& parametrization(int min_precision = 0) const;

  // ord_t g(x(t), y(t)); nullopt when g vanishes on the branch.
  std::optional<long> valuation(const BivariatePolynomial& g) const;
  // ord_t of d/dt g(x(t), y(t)); nullopt when the derivative is zero to the
  // escalation bound (flagged infinite).
  std::optional<long> derivative_order(const BivariatePolynomial& g) const;

 private:
  BivariatePolynomial f_;
  BlowupChain chain_;
  int mult_;
  mutable std::optional<Parametrization> par_;
};

// I(f, g) through the parametrization of f; f must be irreducible.
std::optional<long> intersection_multiplicity(const BivariatePolynomial& f,
                                              const BivariatePolynomial& g);

}  // namespace pcs
