#include "pcs/cli.hpp"

#include <atomic>
#include <cctype>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pcs/keytheorem.hpp"
#include "pcs/parse.hpp"
#include "pcs/prep.hpp"

namespace pcs {

namespace {

using nlohmann::json;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case errc::syntax_error:
      return exit_parse_error;
    case errc::precision_exhausted:
    case errc::bound_exhausted:
      return exit_precision_exhausted;
    case errc::internal:
      return exit_check_falsified;
    default:
      return exit_unsupported_input;
  }
}

std::string show(const std::optional<long>& v) { return v ? std::to_string(*v) : "infinite"; }

std::vector<BivariatePolynomial> load_factors(const std::string& path, const FieldSpec& F,
                                              ParseNotes* notes) {
  std::ifstream in(path);
  if (!in) fail(errc::unsupported_input, "cannot open factors file " + path);
  std::vector<BivariatePolynomial> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string trimmed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c)) || !trimmed.empty()) trimmed += c;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
      trimmed.pop_back();
    if (trimmed.empty() || trimmed[0] == '#') continue;
    out.push_back(parse_expression(trimmed, F, notes));
  }
  if (out.empty()) fail(errc::unsupported_input, "factors file " + path + " is empty");
  return out;
}

RunResult run_invariants(const Command& cmd) {
  const FieldSpec& F = FieldSpec::parse(cmd.field_text);
  ParseNotes notes;
  AnalyzeOptions opts;
  opts.stability_lmax = cmd.lmax;
  InvariantReport rep;
  if (!cmd.factors_file.empty()) {
    rep = analyze_multibranch(load_factors(cmd.factors_file, F, &notes), opts);
  } else {
    rep = analyze_curve(parse_expression(cmd.expressions.at(0), F, &notes), opts);
  }
  std::ostringstream os;
  for (const auto& n : notes.reduced_literals) os << "note: literal " << n << "\n";
  os << (cmd.json ? rep.to_json() : rep.to_text()) << "\n";
  return {rep.all_checks_pass() ? exit_ok : exit_check_falsified, os.str()};
}

RunResult run_semigroup(const Command& cmd) {
  const FieldSpec& F = FieldSpec::parse(cmd.field_text);
  BivariatePolynomial f = parse_expression(cmd.expressions.at(0), F, nullptr);
  Branch branch(f);
  ValueSemigroup S = semigroup_of(branch);
  std::ostringstream os;
  if (cmd.json) {
    json j = {{"gens", S.generators()},
              {"conductor", S.conductor()},
              {"tame", S.tame(F.characteristic())}};
    os << j.dump(2) << "\n";
  } else {
    os << "semigroup: " << S.to_string() << "\n";
    os << "conductor: " << S.conductor() << "\n";
    os << "tame:      " << (S.tame(F.characteristic()) ? "yes" : "no") << "\n";
  }
  return {exit_ok, os.str()};
}

RunResult run_param(const Command& cmd) {
  const FieldSpec& F = FieldSpec::parse(cmd.field_text);
  BivariatePolynomial f = parse_expression(cmd.expressions.at(0), F, nullptr);
  Branch branch(f);
  const Parametrization& par = branch.parametrization(cmd.precision);
  std::ostringstream os;
  if (cmd.json) {
    json j = {{"x", par.x.truncated(cmd.precision).to_string()},
              {"y", par.y.truncated(cmd.precision).to_string()},
              {"precision", std::min(cmd.precision, par.precision())},
              {"multiplicity", branch.multiplicity()},
              {"conductor", branch.conductor()}};
    os << j.dump(2) << "\n";
  } else {
    os << "x(t) = " << par.x.truncated(cmd.precision).to_string() << "\n";
    os << "y(t) = " << par.y.truncated(cmd.precision).to_string() << "\n";
  }
  return {exit_ok, os.str()};
}

RunResult run_prepare(const Command& cmd) {
  const FieldSpec& F = FieldSpec::parse(cmd.field_text);
  BivariatePolynomial f = parse_expression(cmd.expressions.at(0), F, nullptr);
  WeierstrassResult w = weierstrass_by_coords(f, std::max(16, cmd.precision / 2));
  std::ostringstream os;
  if (cmd.json) {
    json j = {{"image_x", w.phi.image_x().to_string()},
              {"image_y", w.phi.image_y().to_string()},
              {"prepared", w.prepared.to_string()},
              {"x_precision", w.x_precision},
              {"field", w.field->to_string()},
              {"escalated", w.escalated}};
    os << j.dump(2) << "\n";
  } else {
    if (w.escalated) os << "field escalated to " << w.field->to_string() << "\n";
    os << "X -> " << w.phi.image_x().to_string() << "\n";
    os << "Y -> " << w.phi.image_y().to_string() << "\n";
    os << "prepared (mod X^" << w.x_precision << "): " << w.prepared.to_string() << "\n";
  }
  return {exit_ok, os.str()};
}

RunResult run_check(const Command& cmd) {
  const FieldSpec& F = FieldSpec::parse(cmd.field_text);
  std::ostringstream os;
  switch (cmd.check_kind) {
    case Command::CheckKind::gorenstein: {
      Branch branch(parse_expression(cmd.expressions.at(0), F, nullptr));
      CheckOutcome c = check_gorenstein(branch);
      os << "gorenstein: " << (c.pass ? "pass" : "FAIL") << "  [" << c.details << "]\n";
      return {c.pass ? exit_ok : exit_check_falsified, os.str()};
    }
    case Command::CheckKind::delgado: {
      if (cmd.expressions.size() < 2)
        fail(errc::unsupported_input, "check delgado needs expressions for f and g");
      Branch branch(parse_expression(cmd.expressions.at(0), F, nullptr));
      BivariatePolynomial g = parse_expression(cmd.expressions.at(1), F, nullptr);
      CheckOutcome c = check_delgado(branch, g);
      os << "delgado: " << (c.pass ? "pass" : "FAIL") << "  [" << c.details << "]\n";
      return {c.pass ? exit_ok : exit_check_falsified, os.str()};
    }
    case Command::CheckKind::key: {
      BivariatePolynomial f = parse_expression(cmd.expressions.at(0), F, nullptr);
      std::vector<QsRow> rows;
      KeyTheoremVerdict verdict = verify_key_theorem(f, &rows);
      os << "s\tI(f,q_s)\tdeg_Y\tin J(f)\n";
      for (const auto& r : rows)
        os << r.s << "\t" << r.value << "\t" << r.deg_y << "\t" << (r.in_jacobian ? "yes" : "NO")
           << "\n";
      os << "mu = " << verdict.mu << ", conductor = " << verdict.conductor << "\n";
      os << "mu == c: " << (verdict.mu_equals_conductor ? "pass" : "FAIL") << "\n";
      os << "family independent mod J(f): "
         << (verdict.family_independent_mod_jacobian ? "pass" : "FAIL") << "\n";
      os << "q elements valid: " << (verdict.q_elements_valid ? "pass" : "FAIL") << " ("
         << verdict.q_count << " elements)\n";
      for (const auto& msg : verdict.failures) os << "  " << msg << "\n";
      return {verdict.pass() ? exit_ok : exit_check_falsified, os.str()};
    }
    case Command::CheckKind::main: {
      BivariatePolynomial f = parse_expression(cmd.expressions.at(0), F, nullptr);
      Branch branch(f);
      ValueSemigroup S = semigroup_of(branch);
      auto mu = milnor_number(f);
      long e0 = curve_milnor(f);
      bool tame = S.tame(F.characteristic());
      os << "mu(f) = " << show(mu) << ", e0(T(f)) = " << e0 << ", c = " << S.conductor()
         << ", tame = " << (tame ? "yes" : "no") << "\n";
      if (!tame) {
        os << "semigroup is wild; recording mu - c = "
           << (mu ? std::to_string(*mu - S.conductor()) : "infinite") << "\n";
        return {exit_ok, os.str()};
      }
      bool ok = mu && *mu == S.conductor() && e0 == S.conductor();
      os << "tame equality mu = e0(T) = c: " << (ok ? "pass" : "FAIL") << "\n";
      return {ok ? exit_ok : exit_check_falsified, os.str()};
    }
    case Command::CheckKind::milnor_formula: {
      if (cmd.factors_file.empty())
        fail(errc::unsupported_input, "check milnor-formula needs --factors FILE");
      auto factors = load_factors(cmd.factors_file, F, nullptr);
      MilnorFormulaReport rep = milnor_formula_report(factors);
      if (cmd.json) {
        json j = {{"mu", rep.mu ? json(*rep.mu) : json("infinite")},
                  {"rhs", rep.two_delta_plus_one_minus_r},
                  {"equal", rep.equal},
                  {"delta", rep.delta},
                  {"r", rep.r},
                  {"pairwise_intersections", rep.pairwise_intersections}};
        os << j.dump(2) << "\n";
      } else {
        os << "mu = " << show(rep.mu) << ", 2*delta+1-r = " << rep.two_delta_plus_one_minus_r
           << ", equal = " << (rep.equal ? "true" : "false") << " (delta = " << rep.delta
           << ", r = " << rep.r << ")\n";
      }
      return {exit_ok, os.str()};
    }
    case Command::CheckKind::mu_stable: {
      BivariatePolynomial f = parse_expression(cmd.expressions.at(0), F, nullptr);
      auto l = mu_stability(f, cmd.lmax);
      if (l)
        os << "stable at l = " << *l << "\n";
      else
        os << "unknown up to l = " << cmd.lmax << "\n";
      return {exit_ok, os.str()};
    }
    case Command::CheckKind::counting: {
      BivariatePolynomial f = parse_expression(cmd.expressions.at(0), F, nullptr);
      Branch branch(f);
      ValueSemigroup S = semigroup_of(branch);
      auto sweep = S.sweep_set();
      bool ok = static_cast<long>(sweep.size()) == S.conductor();
      os << "#(S \\ (S + c - 1)) = " << sweep.size() << ", c = " << S.conductor() << ": "
         << (ok ? "pass" : "FAIL") << "\n";
      return {ok ? exit_ok : exit_check_falsified, os.str()};
    }
  }
  fail(errc::internal, "unhandled check kind");
}

// one corpus entry, compared against its expectations
struct CorpusOutcome {
  bool pass = true;
  std::string text;
};

json expected_value(const InvariantReport& rep, const std::string& key) {
  auto count = [](const std::optional<long>& v) { return v ? json(*v) : json("infinite"); };
  if (key == "mu") return count(rep.mu);
  if (key == "tau") return count(rep.tau);
  if (key == "e0_tjurina") return rep.curve_mu ? json(*rep.curve_mu) : json(nullptr);
  if (key == "delta") return rep.delta ? json(*rep.delta) : json(nullptr);
  if (key == "conductor") return rep.conductor ? json(*rep.conductor) : json(nullptr);
  if (key == "semigroup")
    return rep.semigroup ? json(rep.semigroup->generators()) : json(nullptr);
  if (key == "tame") return rep.tame ? json(*rep.tame) : json(nullptr);
  if (key == "irreducible") return rep.irreducible;
  if (key == "mu_stable_at") return rep.mu_stable_at ? json(*rep.mu_stable_at) : json(nullptr);
  if (key == "wild_gap") return rep.wild_gap ? json(*rep.wild_gap) : json(nullptr);
  if (key == "milnor_formula_rhs")
    return rep.milnor_formula ? json(rep.milnor_formula->rhs) : json(nullptr);
  if (key == "milnor_formula_holds")
    return rep.milnor_formula ? json(rep.milnor_formula->equal) : json(nullptr);
  if (key == "pairwise_intersections")
    return rep.milnor_formula ? json(rep.milnor_formula->pairwise_intersections) : json(nullptr);
  if (key == "checks_pass") return rep.all_checks_pass();
  fail(errc::unsupported_input, "unknown corpus expectation key '" + key + "'");
}

CorpusOutcome run_corpus_entry(const json& entry) {
  CorpusOutcome out;
  std::ostringstream os;
  std::string name = entry.value("name", "(unnamed)");
  const FieldSpec& F = FieldSpec::parse(entry.at("field").get<std::string>());
  json expected = entry.value("expected", json::object());
  json reference = entry.value("reference", json::object());

  AnalyzeOptions opts;
  opts.with_stability = expected.contains("mu_stable_at") || reference.contains("mu_stable_at");
  opts.with_curve_mu = expected.contains("e0_tjurina") || reference.contains("e0_tjurina") ||
                       expected.contains("checks_pass");
  opts.stability_lmax = entry.value("lmax", 5);

  InvariantReport rep;
  if (entry.contains("factors")) {
    std::vector<BivariatePolynomial> factors;
    for (const auto& e : entry.at("factors")) factors.push_back(parse_expression(e, F, nullptr));
    rep = analyze_multibranch(factors, opts);
  } else {
    rep = analyze_curve(parse_expression(entry.at("expr"), F, nullptr), opts);
  }

  os << name << " [" << F.to_string() << "]: ";
  std::vector<std::string> mismatches;
  for (const auto& [key, want] : expected.items()) {
    json got = expected_value(rep, key);
    if (got != want)
      mismatches.push_back(key + " = " + got.dump() + " (expected " + want.dump() + ")");
  }
  for (const auto& [key, want] : reference.items()) {
    json got = expected_value(rep, key);
    if (got != want)
      os << "\n    reference " << key << ": computed " << got.dump() << " vs recorded "
         << want.dump() << " (reported, not asserted)";
  }
  if (mismatches.empty()) {
    os << "pass";
  } else {
    out.pass = false;
    os << "FAIL";
    for (const auto& m : mismatches) os << "\n    " << m;
  }
  out.text = os.str();
  return out;
}

}  // namespace

RunResult corpus_run(const std::string& path, int workers) {
  std::ifstream in(path);
  if (!in) return {exit_unsupported_input, "cannot open corpus file " + path + "\n"};
  std::vector<json> entries;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank || line[0] == '#') continue;
    try {
      entries.push_back(json::parse(line));
    } catch (const json::exception& e) {
      return {exit_parse_error,
              "corpus line " + std::to_string(lineno) + ": " + std::string(e.what()) + "\n"};
    }
  }
  if (entries.empty()) return {exit_ok, "empty corpus\n"};

  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  std::vector<CorpusOutcome> results(entries.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= entries.size()) return;
      try {
        results[i] = run_corpus_entry(entries[i]);
      } catch (const std::exception& e) {
        results[i] = {false, entries[i].value("name", "(unnamed)") + ": ERROR " + e.what()};
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < std::min<int>(workers, static_cast<int>(entries.size())); ++w)
    pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ostringstream os;
  size_t passed = 0;
  for (const auto& r : results) {
    os << r.text << "\n";
    if (r.pass) ++passed;
  }
  os << passed << "/" << results.size() << " corpus entries pass\n";
  return {passed == results.size() ? exit_ok : exit_check_falsified, os.str()};
}

RunResult run_command(const Command& cmd) {
  try {
    switch (cmd.verb) {
      case Command::Verb::invariants:
        return run_invariants(cmd);
      case Command::Verb::semigroup:
        return run_semigroup(cmd);
      case Command::Verb::param:
        return run_param(cmd);
      case Command::Verb::prepare:
        return run_prepare(cmd);
      case Command::Verb::check:
        return run_check(cmd);
      case Command::Verb::corpus:
        return corpus_run(cmd.corpus_file, cmd.workers);
    }
    return {exit_unsupported_input, "unknown verb\n"};
  } catch (const Error& e) {
    return {exit_code_for(e), std::string("error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {exit_unsupported_input, std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace pcs
