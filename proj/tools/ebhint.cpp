// ebhint: check Event-B models, list their proof obligations, and prove them.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ebhint/cli/commands.hpp"

namespace {

void addHintMode(CLI::App* app, ebhint::cli::RunOptions& opts) {
  static const std::map<std::string, ebhint::HintMode> modes{{"pog", ebhint::HintMode::Pog},
                                                             {"tactic", ebhint::HintMode::Tactic}};
  app->add_option("--hint-mode", opts.hintMode, "how hints are interpreted: pog or tactic")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
}

void addFormat(CLI::App* app, ebhint::cli::RunOptions& opts) {
  static const std::map<std::string, ebhint::cli::Format> formats{{"text", ebhint::cli::Format::Text},
                                                                  {"json", ebhint::cli::Format::Json}};
  app->add_option("--format", opts.format, "output format: text or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ebhint: Event-B proof obligations with proof hints"};
  app.require_subcommand(1);

  ebhint::cli::RunOptions opts;
  std::vector<std::string> files;
  std::string file;
  std::string poName;
  bool respectSelection = false;

  auto* check = app.add_subcommand("check", "parse and check models");
  check->add_option("files", files, "model files")->required();

  auto* pos = app.add_subcommand("pos", "list proof obligations");
  pos->add_option("file", file, "model file")->required();
  addHintMode(pos, opts);
  addFormat(pos, opts);
  pos->add_flag("--no-hints", opts.noHints, "ignore the hints in the model");

  auto* prove = app.add_subcommand("prove", "discharge proof obligations");
  prove->add_option("file", file, "model file")->required();
  addHintMode(prove, opts);
  addFormat(prove, opts);
  prove->add_flag("--lasso", opts.lasso, "select hypotheses related to the goal before deciding");
  prove->add_flag("--all-hyps", opts.allHyps, "decide with all hypotheses, not only selected ones");
  prove->add_option("--timeout-ms", opts.timeoutMillis, "per-obligation timeout")->check(CLI::PositiveNumber);
  prove->add_option("--json", opts.jsonOut, "write a JSON report to this file");
  prove->add_flag("--no-hints", opts.noHints, "ignore the hints in the model");
  prove->add_option("--jobs", opts.jobs, "worker threads (0: one per core)");

  auto* smt = app.add_subcommand("export-smt", "print one obligation as an SMT-LIB v2 script");
  smt->add_option("file", file, "model file")->required();
  smt->add_option("po-name", poName, "obligation name")->required();
  smt->add_flag("--respect-selection", respectSelection, "assert only the selected hypotheses");
  addHintMode(smt, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (check->parsed()) return ebhint::cli::cmdCheck(files, std::cout, std::cerr);
  if (pos->parsed()) return ebhint::cli::cmdPos(file, opts, std::cout, std::cerr);
  if (prove->parsed()) return ebhint::cli::cmdProve(file, opts, std::cout, std::cerr);
  if (smt->parsed()) {
    return ebhint::cli::cmdExportSmt(file, poName, respectSelection, opts, std::cout, std::cerr);
  }
  return 2;
}
