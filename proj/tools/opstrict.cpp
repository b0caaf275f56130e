// opstrict: command-line front end over the library commands.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "opstrict/commands.hpp"

namespace {

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace opstrict;

  CLI::App app{"Weak P-categories over plain operads and their strictification"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string format = "text";
  std::string out_path;
  std::string emit_path;
  app.add_option("--arity-cap", config.arity_cap, "Largest operad arity admitted")
      ->capture_default_str();
  app.add_option("--tree-size-cap", config.tree_size_cap, "Largest tree size quantified over")
      ->capture_default_str();
  app.add_option("--term-size-cap", config.term_size_cap, "Largest term size in theory closure")
      ->capture_default_str();
  app.add_option("--uniqueness-bound", config.uniqueness_bound,
                 "Candidate evaluations allowed in the uniqueness search")
      ->capture_default_str();
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "Write the report here instead of standard output");
  app.add_option("--emit", emit_path, "Write the produced artifact here");
  app.add_flag("--timing", config.timing, "Add wall time to the report");

  std::string theory, wpc, target, functor, operad;
  std::size_t arity = 0;

  auto* compile = app.add_subcommand("compile-theory", "Compile a strongly regular theory");
  compile->add_option("theory", theory, ".theory file")->required();
  auto* validate = app.add_subcommand("validate", "Validate a weak P-category");
  validate->add_option("wpc", wpc, ".wpc file")->required();
  auto* strictify = app.add_subcommand("strictify", "Strictify and check the equivalence");
  strictify->add_option("wpc", wpc, ".wpc file")->required();
  auto* factorize = app.add_subcommand("factorize", "Factor a weak functor through st A");
  factorize->add_option("source", wpc, "source .wpc")->required();
  factorize->add_option("target", target, "strict target .wpc")->required();
  factorize->add_option("functor", functor, ".wfun file")->required();
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate trees and their two-cell classes");
  enumerate->add_option("operad", operad, ".operad file")->required();
  enumerate->add_option("arity", arity, "tree arity")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::ParseError);
  }
  config.json = format == "json";

  CommandResult result;
  if (*compile)
    result = cmd_compile_theory(theory, config);
  else if (*validate)
    result = cmd_validate(wpc, config);
  else if (*strictify)
    result = cmd_strictify(wpc, config);
  else if (*factorize)
    result = cmd_factorize(wpc, target, functor, config);
  else
    result = cmd_enumerate(operad, arity, config);

  if (!emit_path.empty() && result.artifact && !write_file(emit_path, *result.artifact)) {
    std::cerr << "opstrict: cannot write " << emit_path << "\n";
    return static_cast<int>(ExitCode::Failure);
  }
  auto text = render(result.report);
  if (out_path.empty()) {
    std::cout << text;
  } else if (!write_file(out_path, text)) {
    std::cerr << "opstrict: cannot write " << out_path << "\n";
    return static_cast<int>(ExitCode::Failure);
  }
  return static_cast<int>(result.report.exit_code());
}
