#include <sstream>

#include <json.hpp>

#include "pcs/invariants.hpp"

namespace pcs {

namespace {

using nlohmann::json;

json count_or_infinite(const std::optional<long>& v) {
  if (v) return *v;
  return "infinite";
}

json count_or_null(const std::optional<long>& v) {
  if (v) return *v;
  return nullptr;
}

}  // namespace

std::string InvariantReport::to_json() const {
  json j;
  j["char"] = field->characteristic();
  j["ext"] = field->extension_degree();
  j["poly"] = poly_text;
  j["irreducible"] = irreducible;
  j["mu"] = count_or_infinite(mu);
  j["tau"] = count_or_infinite(tau);
  j["e0_tjurina"] = count_or_null(curve_mu);
  j["delta"] = count_or_null(delta);
  if (semigroup) {
    j["semigroup"] = {{"gens", semigroup->generators()},
                      {"conductor", semigroup->conductor()},
                      {"tame", semigroup->tame(field->characteristic())}};
  } else {
    j["semigroup"] = nullptr;
  }
  j["conductor"] = count_or_null(conductor);
  j["tame"] = tame ? json(*tame) : json(nullptr);
  j["mu_stable_at"] = mu_stable_at ? json(*mu_stable_at) : json(nullptr);
  j["wild_gap"] = count_or_null(wild_gap);
  json checks_json = json::object();
  for (const auto& [name, c] : checks)
    checks_json[name] = {{"pass", c.pass}, {"details", c.details}};
  j["checks"] = checks_json;
  if (!mu && !mu_infinite_reason.empty()) j["mu_infinite_reason"] = mu_infinite_reason;
  if (branch_count > 1) {
    j["branches"] = branch_count;
    if (milnor_formula) {
      j["milnor_formula"] = {{"mu", count_or_infinite(mu)},
                             {"two_delta_plus_one_minus_r", milnor_formula->rhs},
                             {"equal", milnor_formula->equal},
                             {"delta", milnor_formula->delta},
                             {"r", milnor_formula->r},
                             {"pairwise_intersections", milnor_formula->pairwise_intersections}};
    }
  }
  return j.dump(2);
}

std::string InvariantReport::to_text() const {
  std::ostringstream os;
  auto show = [](const std::optional<long>& v) { return v ? std::to_string(*v) : "infinite"; };
  os << "field:        " << field->to_string() << "\n";
  os << "equation:     " << poly_text << "\n";
  if (branch_count > 1) os << "branches:     " << branch_count << "\n";
  os << "irreducible:  " << (irreducible ? "yes" : "no") << "\n";
  os << "mu:           " << show(mu);
  if (!mu && !mu_infinite_reason.empty()) os << "  (" << mu_infinite_reason << ")";
  os << "\n";
  os << "tau:          " << show(tau) << "\n";
  if (curve_mu) os << "e0(T):        " << *curve_mu << "\n";
  if (delta) os << "delta:        " << *delta << "\n";
  if (semigroup) {
    os << "semigroup:    " << semigroup->to_string() << "\n";
    os << "conductor:    " << semigroup->conductor() << "\n";
    os << "tame:         " << (*tame ? "yes" : "no") << "\n";
  }
  if (wild_gap) os << "wild gap:     " << *wild_gap << "\n";
  if (mu_stability_bound > 0) {
    os << "mu-stable at: ";
    if (mu_stable_at)
      os << *mu_stable_at << "\n";
    else
      os << "unknown up to l = " << mu_stability_bound << "\n";
  }
  if (milnor_formula) {
    os << "milnor formula: mu = " << show(mu) << " vs 2*delta+1-r = " << milnor_formula->rhs
       << (milnor_formula->equal ? "  (holds)" : "  (fails)") << "\n";
  }
  for (const auto& [name, c] : checks)
    os << "check " << name << ": " << (c.pass ? "pass" : "FAIL") << "  [" << c.details << "]\n";
  return os.str();
}

}  // namespace pcs
