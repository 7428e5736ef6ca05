#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcs/localideal.hpp"
#include "pcs/semigroup.hpp"

namespace pcs {

struct CheckOutcome {
  bool pass;
  std::string details;
};

// The JSON-serializable invariant bundle for one input curve.
struct InvariantReport {
  std::string poly_text;
  const FieldSpec* field = nullptr;
  bool reduced = true;
  bool irreducible = false;
  int branch_count = 1;

  std::optional<long> mu;        // nullopt: infinite
  std::string mu_infinite_reason;
  std::optional<long> tau;       // nullopt: infinite (non-reduced input)
  std::optional<long> curve_mu;  // e0 of the Tjurina ideal
  std::optional<long> delta;
  std::optional<ValueSemigroup> semigroup;
  std::optional<long> conductor;
  std::optional<bool> tame;
  std::optional<int> mu_stable_at;
  int mu_stability_bound = 0;
  std::optional<long> wild_gap;  // mu - conductor when both finite

  std::map<std::string, CheckOutcome> checks;

  struct MilnorFormula {
    long rhs;
    bool equal;
    long delta;
    int r;
    std::vector<long> pairwise_intersections;
  };
  // Many-branch comparison mu vs 2*delta + 1 - r; informational (the
  // equality genuinely fails for some characteristics).
  std::optional<MilnorFormula> milnor_formula;

  bool all_checks_pass() const;
  std::string to_json() const;  // stable schema, implemented in report.cpp
  std::string to_text() const;
};

struct AnalyzeOptions {
  int stability_lmax = 5;
  bool with_stability = true;
  bool with_curve_mu = true;
  bool with_checks = true;
};

// mu(f) = colength of <f_X, f_Y>; nullopt when infinite (with a certificate
// available from the standard basis).
std::optional<long> milnor_number(const BivariatePolynomial& f);
// tau(f) = colength of <f, f_X, f_Y>; nullopt when f is not reduced.
std::optional<long> tjurina_number(const BivariatePolynomial& f);
// e0 of the Tjurina ideal; the contact-invariant curve Milnor number.
long curve_milnor(const BivariatePolynomial& f);
// Jacobian pairing f_X g_Y - f_Y g_X.
BivariatePolynomial bracket(const BivariatePolynomial& f, const BivariatePolynomial& g);

long delta_invariant(const Branch& branch);  // conductor / 2

struct MilnorFormulaReport {
  std::optional<long> mu;
  long two_delta_plus_one_minus_r;
  bool equal;
  long delta;
  int r;
  std::vector<long> pairwise_intersections;
};

MilnorFormulaReport milnor_formula_report(const std::vector<BivariatePolynomial>& factors);

// v(f_y) = c + v(x') and v(f_x) = c + v(y').
CheckOutcome check_gorenstein(const Branch& branch);
// v([f,g]) = c + v(g'), and v([f,g]) >= c + v(g) - 1 with equality iff
// p does not divide v(g).
CheckOutcome check_delgado(const Branch& branch, const BivariatePolynomial& g);
// <f_x, f_y> lands in the conductor ideal: v(f_x) >= c, v(f_y) >= c,
// tau >= c/2, and mu >= c when mu is finite.
CheckOutcome conductor_ideal_check(const Branch& branch, std::optional<long> mu,
                                   std::optional<long> tau);

InvariantReport analyze_curve(const BivariatePolynomial& f, const AnalyzeOptions& opts = {});
InvariantReport analyze_multibranch(const std::vector<BivariatePolynomial>& factors,
                                    const AnalyzeOptions& opts = {});

}  // namespace pcs
