#include <chrono>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "stringtop/cli.hpp"

namespace {

const std::map<std::string, std::string> kSummaries{
    {"check-pd", "verify the Poincare duality axioms of a finite algebra"},
    {"betti", "Betti numbers of the algebra"},
    {"loop-betti", "Betti numbers of the free loop space"},
    {"loop-product", "loop product table on H_*(LM) and its module property"},
    {"loop-coproduct", "loop coproduct model and its triviality verdict"},
    {"fiber-intersection", "intersection with the based loop fiber"},
    {"diagonal-class", "diagonal class D and its symmetry"},
    {"module-property", "module property of the dual loop product"},
    {"bg-loop-product", "loop product model of a classifying space"},
    {"bg-loop-coproduct", "loop coproduct model of a classifying space"},
    {"ext-diagonal", "Ext of X over its n-fold product and the Gorenstein shift"},
};

}  // namespace

int main(int argc, char** argv) {
  using namespace stringtop::cli;
  CLI::App app{"Rational string topology workbench"};
  app.require_subcommand(1);
  std::string file, json_path;
  int max_degree = -1, copies = 2, expected_d = 0;
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name, kSummaries.at(name));
    sub->add_option("file", file, "algebra file")->required()->check(CLI::ExistingFile);
    sub->add_option("--max-degree,-N", max_degree, "truncation degree N");
    sub->add_option("--json", json_path, "write a JSON result document to this path");
    if (name == "ext-diagonal") {
      sub->add_option("--copies,-n", copies, "number of tensor copies")->capture_default_str();
      sub->add_option("--expected-d", expected_d, "Gorenstein dimension to test against");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  CommandOptions options;
  options.command = app.get_subcommands().front()->get_name();
  options.input = file;
  const auto* sub = app.get_subcommands().front();
  if (sub->count("--max-degree")) options.max_degree = max_degree;
  options.copies = copies;
  if (options.command == "ext-diagonal" && sub->count("--expected-d")) options.expected_d = expected_d;

  const auto start = std::chrono::steady_clock::now();
  auto result = run_command(options);
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::cout << result.text;
  if (!result.error.empty()) std::cerr << "stringtop: " << result.error << "\n";
  if (!json_path.empty()) {
    result.document["timing"] = {{"elapsed_ms", elapsed}};
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "stringtop: cannot write " << json_path << "\n";
      return kUsage;
    }
    out << result.document.dump(2) << "\n";
  }
  return result.exit_code;
}
