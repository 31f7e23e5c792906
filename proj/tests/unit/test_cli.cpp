#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "stringtop/cli.hpp"

using namespace stringtop::cli;

namespace {

const std::filesystem::path kFixtures = STRINGTOP_FIXTURES;

CommandResult run(const std::string& command, const std::string& file, std::optional<int> n = std::nullopt) {
  CommandOptions o;
  o.command = command;
  o.input = kFixtures / file;
  o.max_degree = n;
  return run_command(o);
}

}  // namespace

TEST_CASE("cli verdicts and exit codes") {
  auto r = run("loop-coproduct", "s3.alg", 8);
  CHECK(r.exit_code == kOk);
  CHECK(r.document["verdicts"]["summary"] == "trivial (χ = 0)");

  r = run("bg-loop-product", "bs1.alg", 10);
  CHECK(r.exit_code == kOk);
  CHECK(r.document["verdicts"]["summary"] == "loop product trivial up to degree 10");

  r = run("check-pd", "cp2-bad.alg");
  CHECK(r.exit_code == kVerdictFail);
  CHECK(r.document["verdicts"]["failed_axiom"] == "(i)");

  CHECK(run("check-pd", "s3.alg").exit_code == kOk);
  CHECK(run("check-pd", "s2-sullivan.alg").exit_code == kUsage);
  CHECK(run("loop-betti", "s3-sullivan.alg").exit_code == kUsage);
  CHECK(run("no-such-command", "s3.alg").exit_code == kUsage);
  CHECK(run("check-pd", "missing.alg").exit_code == kUsage);

  CommandOptions o;
  o.command = "ext-diagonal";
  o.input = kFixtures / "s2-sullivan.alg";
  o.max_degree = 4;
  CHECK(run_command(o).exit_code == kUsage);
}

TEST_CASE("cli tables") {
  auto r = run("loop-betti", "s3-sullivan.alg", 6);
  REQUIRE(r.exit_code == kOk);
  CHECK(r.document["betti"] == nlohmann::json::array({1, 0, 1, 1, 1, 1, 1}));
  CHECK(r.document["tables"]["betti"]["6"] == 1);

  r = run("diagonal-class", "s3.alg");
  CHECK(r.document["tables"]["diagonal"] == "1⊗x - x⊗1");
  r = run("diagonal-class", "cp2.alg");
  CHECK(r.document["tables"]["diagonal"] == "1⊗x2 + x⊗x + x2⊗1");

  CommandOptions o;
  o.command = "ext-diagonal";
  o.input = kFixtures / "bs1.alg";
  o.max_degree = 5;
  r = run_command(o);
  CHECK(r.exit_code == kOk);
  CHECK(r.document["tables"]["dimensions"]["-1"] == 1);
  CHECK(r.document["tables"]["dimensions"]["-2"] == 0);
  CHECK(r.document["verdicts"]["gorenstein_dimension"] == -1);
  o.expected_d = 2;
  CHECK(run_command(o).exit_code == kVerdictFail);
}

TEST_CASE("cli output is deterministic") {
  for (const auto& [cmd, file] : std::vector<std::pair<std::string, std::string>>{
           {"loop-product", "s3.alg"}, {"fiber-intersection", "s2.alg"}, {"loop-betti", "cp2-sullivan.alg"}}) {
    const auto a = run(cmd, file, 6);
    const auto b = run(cmd, file, 6);
    CHECK(a.exit_code == kOk);
    CHECK(a.document.dump() == b.document.dump());
    CHECK(a.text == b.text);
  }
}

TEST_CASE("truncation errors exit with code 3") {
  // mixed parities make every Hom degree of the diagonal resolution infinite
  const auto path = std::filesystem::temp_directory_path() / "stringtop-mixed.alg";
  {
    std::ofstream out(path);
    out << "kind = sullivan\n[generators]\nx = 2\ny = 3\n";
  }
  CommandOptions o;
  o.command = "ext-diagonal";
  o.input = path;
  o.max_degree = 4;
  const auto r = run_command(o);
  CHECK(r.exit_code == kTruncation);
  CHECK(r.error.find("insufficient truncation") == 0);
  std::filesystem::remove(path);

  o.command = "loop-product";
  o.input = kFixtures / "s3.alg";
  o.max_degree = -1;
  CHECK(run_command(o).exit_code == kUsage);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
