#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <sstream>
#include <unistd.h>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = usp::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(nlohmann::json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("sigma") {
  const auto r = run({"sigma", "9"});
  CHECK(r.code == 0);
  CHECK(r.out.find("sigma*    10") != std::string::npos);
  CHECK(r.out.find("unitary   1 9") != std::string::npos);

  const auto j = json_lines(run({"--json", "sigma", "165"}).out).at(0);
  CHECK(j["sigma_star"] == 288);
  CHECK(j["sigma"] == 288);
  CHECK(j["unitary_divisors"].size() == 8);
  CHECK(j["divisors"].size() == 8);
}

TEST_CASE("factor, decompose, zsigmondy") {
  CHECK(run({"factor", "288"}).out == "288 = 2^5 * 3^2\n");
  const auto f = json_lines(run({"factor", "432", "--json"}).out).at(0);
  CHECK(f["factors"] == nlohmann::json::parse(R"([{"p":2,"e":4},{"p":3,"e":3}])"));

  CHECK(run({"decompose", "288"}).out == "288 = 2^5 * 3^2\n");
  CHECK(run({"decompose", "30"}).out.find("not of the form") != std::string::npos);
  const auto d = json_lines(run({"--json", "decompose", "10"}).out).at(0);
  CHECK(d["a"] == 1);
  CHECK(d["q"] == 5);
  CHECK(d["b"] == 1);

  const auto z = json_lines(run({"--json", "zsigmondy", "2", "1", "4"}).out).at(0);
  CHECK(z["prime"] == 5);
  const auto e = json_lines(run({"--json", "zsigmondy", "2", "1", "6"}).out).at(0);
  CHECK(e["prime"].is_null());
  CHECK(run({"zsigmondy", "4", "2", "3"}).code == 1);
}

TEST_CASE("verify-lemma") {
  const auto r = run({"verify-lemma", "2.5", "--xmax", "60"});
  CHECK(r.code == 0);
  CHECK(r.out.find("solution e=1 x=1") != std::string::npos);
  CHECK(r.out.find("solution e=2 x=3") != std::string::npos);

  const auto lines = json_lines(run({"--json", "verify-lemma", "5.1", "--q", "5", "--q", "7", "--bmax", "6"}).out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0]["lemma_id"] == "5.1");
  CHECK(lines[1]["counterexamples"].empty());

  CHECK(run({"verify-lemma", "3.1"}).code == 1);
  CHECK(run({"verify-lemma", "2.2", "--pmax", "50", "--emax", "4"}).code == 0);
}

TEST_CASE("bounds, qscan and case13") {
  const auto b = run({"--json", "bounds"});
  CHECK(b.code == 0);
  const auto records = json_lines(b.out);
  CHECK(records.size() == 7);
  for (const auto& r : records) CHECK(r["verdict"] != "NotBelow2");

  const auto one = json_lines(run({"--json", "bounds", "--id", "T54-q7"}).out);
  REQUIRE(one.size() == 1);
  CHECK(one[0]["verdict"] == "DiscrepancyFlagged");
  CHECK(run({"bounds", "--id", "nope"}).code == 1);

  const auto q = run({"qscan", "--qmax", "100"});
  CHECK(q.out.find("f2 = 1: {5 7 11 13}") != std::string::npos);
  CHECK(q.out.find("f2 >= 2: {5 7}") != std::string::npos);
  CHECK(json_lines(run({"--json", "qscan", "--qmax", "13"}).out).size() == 8);

  const auto c = run({"case13"});
  CHECK(c.code == 0);
  CHECK(c.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("search") {
  const auto r = run({"search", "usp", "--limit", "300"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("# search usp --limit 300", 0) == 0);
  std::vector<std::uint64_t> got;
  for (const auto& j : json_lines(run({"--json", "search", "usp", "--limit", "300"}).out))
    got.push_back(j["n"]);
  CHECK(got == std::vector<std::uint64_t>{2, 9, 165, 238});

  const auto odd = json_lines(
      run({"--json", "search", "usp", "--limit", "1000000", "--parity", "odd", "--workers", "2"}).out);
  REQUIRE(odd.size() == 2);
  CHECK(odd[1]["structure"]["ok"] == true);

  const auto up = json_lines(run({"--json", "search", "unitary-perfect", "--limit", "100"}).out);
  CHECK(up.size() == 3);

  CHECK(run({"search", "amicable"}).code == 1);
  CHECK(run({"search", "usp", "--limit", "20000000000"}).code == 1);
  CHECK(run({"search", "usp", "--workers", "0"}).code == 1);
  CHECK(run({"search", "usp", "--bogus"}).code == 1);
}

TEST_CASE("search checkpoint round trip through the CLI") {
  const auto path = std::filesystem::temp_directory_path() /
                    ("usp-cli-" + std::to_string(::getpid()) + ".ckpt");
  std::filesystem::remove(path);
  const std::vector<std::string> base = {"--json", "search", "usp", "--limit", "1000000",
                                         "--segment-size", "65536", "--checkpoint", path.string()};
  const std::string reference = run({"--json", "search", "usp", "--limit", "1000000"}).out;

  auto first = base;
  first.insert(first.end(), {"--stop-after", "8"});
  const auto partial = run(first);
  CHECK(partial.code == 0);
  CHECK(partial.err.find("stopped after 8/16") != std::string::npos);

  auto resume = base;
  resume.push_back("--resume");
  CHECK(run(resume).out == reference);

  std::ofstream(path, std::ios::app) << "junk\n";
  CHECK(run(resume).code == 1);
  std::filesystem::remove(path);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"sigma"}).code == 1);
  CHECK(run({"sigma", "x"}).code == 1);
  CHECK(run({"factor", "0"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("every subcommand's JSON output parses") {
  const std::vector<std::vector<std::string>> commands = {
      {"--json", "sigma", "12"},       {"--json", "factor", "97"},
      {"--json", "decompose", "12"},   {"--json", "zsigmondy", "5", "3", "2"},
      {"--json", "verify-lemma", "2.6"}, {"--json", "bounds"},
      {"--json", "qscan"},             {"--json", "case13"},
      {"--json", "search", "perfect", "--limit", "10000"}};
  for (const auto& cmd : commands) {
    const auto r = run(cmd);
    CAPTURE(cmd[1]);
    CHECK(r.code == 0);
    CHECK_NOTHROW(json_lines(r.out));
    CHECK_FALSE(r.out.empty());
  }
}
