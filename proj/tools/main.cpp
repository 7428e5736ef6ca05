#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pcs/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"invariants of plane algebroid curve singularities over exact fields"};
  app.require_subcommand(1);

  pcs::Command cmd;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--field", cmd.field_text, "coefficient field: QQ, GF(p) or GF(p^k)")
        ->default_val("QQ");
    sub->add_option("--prec", cmd.precision, "series working precision")->default_val(128);
    sub->add_flag("--json", cmd.json, "emit JSON");
  };

  auto* inv = app.add_subcommand("invariants", "Milnor/Tjurina numbers, semigroup, checks");
  add_common(inv);
  inv->add_option("expr", cmd.expressions, "equation f(X,Y)");
  inv->add_option("--factors", cmd.factors_file, "file with one irreducible factor per line");
  inv->add_option("--lmax", cmd.lmax, "mu-stability search bound")->default_val(5);

  auto* sg = app.add_subcommand("semigroup", "semigroup of values of a branch");
  add_common(sg);
  sg->add_option("expr", cmd.expressions, "equation f(X,Y)")->required();

  auto* par = app.add_subcommand("param", "parametrization x(t), y(t) of a branch");
  add_common(par);
  par->add_option("expr", cmd.expressions, "equation f(X,Y)")->required();

  auto* prep = app.add_subcommand("prepare", "Weierstrass form by coordinate changes only");
  add_common(prep);
  prep->add_option("expr", cmd.expressions, "equation f(X,Y)")->required();

  auto* chk = app.add_subcommand("check", "verify one of the classical identities");
  add_common(chk);
  std::string kind;
  chk->add_option("kind", kind,
                  "gorenstein | delgado | key | main | milnor-formula | mu-stable | counting")
      ->required();
  chk->add_option("expr", cmd.expressions, "equation(s)");
  chk->add_option("--factors", cmd.factors_file, "factors file for milnor-formula");
  chk->add_option("--lmax", cmd.lmax, "mu-stability search bound")->default_val(5);

  auto* cor = app.add_subcommand("corpus", "run a line-JSON corpus of expectations");
  cor->add_option("file", cmd.corpus_file, "corpus path")->required();
  cor->add_option("--workers", cmd.workers, "parallel workers (0 = hardware)")->default_val(0);

  CLI11_PARSE(app, argc, argv);

  if (inv->parsed()) cmd.verb = pcs::Command::Verb::invariants;
  if (sg->parsed()) cmd.verb = pcs::Command::Verb::semigroup;
  if (par->parsed()) cmd.verb = pcs::Command::Verb::param;
  if (prep->parsed()) cmd.verb = pcs::Command::Verb::prepare;
  if (cor->parsed()) cmd.verb = pcs::Command::Verb::corpus;
  if (chk->parsed()) {
    cmd.verb = pcs::Command::Verb::check;
    if (kind == "gorenstein") cmd.check_kind = pcs::Command::CheckKind::gorenstein;
    else if (kind == "delgado") cmd.check_kind = pcs::Command::CheckKind::delgado;
    else if (kind == "key") cmd.check_kind = pcs::Command::CheckKind::key;
    else if (kind == "main") cmd.check_kind = pcs::Command::CheckKind::main;
    else if (kind == "milnor-formula") cmd.check_kind = pcs::Command::CheckKind::milnor_formula;
    else if (kind == "mu-stable") cmd.check_kind = pcs::Command::CheckKind::mu_stable;
    else if (kind == "counting") cmd.check_kind = pcs::Command::CheckKind::counting;
    else {
      std::cerr << "unknown check kind '" << kind << "'\n";
      return pcs::exit_unsupported_input;
    }
  }

  if (cmd.verb != pcs::Command::Verb::corpus && cmd.verb != pcs::Command::Verb::invariants &&
      cmd.expressions.empty() && cmd.factors_file.empty()) {
    std::cerr << "an equation is required\n";
    return pcs::exit_unsupported_input;
  }
  if (cmd.verb == pcs::Command::Verb::invariants && cmd.expressions.empty() &&
      cmd.factors_file.empty()) {
    std::cerr << "an equation or --factors is required\n";
    return pcs::exit_unsupported_input;
  }

  pcs::RunResult r = pcs::run_command(cmd);
  std::cout << r.output;
  return r.exit_code;
}
