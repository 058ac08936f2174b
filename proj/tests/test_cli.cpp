#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct RunResult {
  int status = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(FIBGCD_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.output.append(buf.data(), got);
  }
  const int rc = pclose(pipe);
  result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("enumerate --limit 37 --format csv emits the golden 16 rows") {
  const RunResult r = run_cli("enumerate --limit 37 --format csv");
  REQUIRE(r.status == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 17);
  CHECK(lines[0] == "n");
  const std::vector<std::string> expected = {"1",  "2",  "5",  "7",  "10", "12",
                                             "13", "17", "24", "25", "26", "29",
                                             "34", "35", "36", "37"};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(lines[i + 1] == expected[i]);
  }
}

TEST_CASE("zeta --m 2 --format json") {
  const RunResult r = run_cli("zeta --m 2 --format json");
  REQUIRE(r.status == 0);
  const auto obj = nlohmann::json::parse(r.output);
  CHECK(obj["m"] == 2);
  CHECK(obj["num"] == 2);
  CHECK(obj["den"] == 3);
  CHECK(obj["value"].get<double>() == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("member --n 3 --format json carries the intermediates") {
  const RunResult r = run_cli("member --n 3 --format json");
  REQUIRE(r.status == 0);
  const auto obj = nlohmann::json::parse(r.output);
  CHECK(obj["n"] == 3);
  CHECK(obj["z"] == 4);
  CHECK(obj["ell"] == 12);
  CHECK(obj["g_of_ell"] == 12);
  CHECK(obj["in_A"] == false);
}

TEST_CASE("rank command") {
  const RunResult r = run_cli("rank --n 10 --format csv");
  REQUIRE(r.status == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "n,z,ell");
  CHECK(lines[1] == "10,15,30");
}

TEST_CASE("identical configs produce identical bytes") {
  const std::string cmd = "prime-density --m 2 --x 2000 --jobs 2 --format json";
  const RunResult a = run_cli(cmd);
  const RunResult b = run_cli(cmd);
  REQUIRE(a.status == 0);
  CHECK(a.output == b.output);
  // worker count must not change the report
  const RunResult c = run_cli("prime-density --m 2 --x 2000 --jobs 1 --format json");
  CHECK(c.output == a.output);
}

TEST_CASE("CSV and JSON outputs carry identical numeric content") {
  const std::vector<std::string> commands = {
      "p1-density --y 5 --x 2000", "member --n 56", "zeta --m 40",
      "gcd-seq --limit 25"};
  for (const std::string& cmd : commands) {
    const RunResult csv = run_cli(cmd + " --format csv");
    const RunResult json = run_cli(cmd + " --format json");
    REQUIRE(csv.status == 0);
    REQUIRE(json.status == 0);
    const auto csv_lines = lines_of(csv.output);
    const auto json_lines = lines_of(json.output);
    REQUIRE(csv_lines.size() == json_lines.size() + 1);  // CSV header
    std::vector<std::string> headers;
    {
      std::istringstream head(csv_lines[0]);
      std::string col;
      while (std::getline(head, col, ',')) headers.push_back(col);
    }
    for (std::size_t i = 0; i < json_lines.size(); ++i) {
      const auto obj = nlohmann::ordered_json::parse(json_lines[i]);
      std::vector<std::string> cells;
      std::istringstream row(csv_lines[i + 1]);
      std::string cell;
      while (std::getline(row, cell, ',')) cells.push_back(cell);
      REQUIRE(cells.size() == headers.size());
      std::size_t col = 0;
      for (auto it = obj.begin(); it != obj.end(); ++it, ++col) {
        REQUIRE(headers[col] == it.key());
        const std::string expected = it.value().is_string()
                                         ? it.value().get<std::string>()
                                         : it.value().dump();
        REQUIRE(cells[col] == expected);
      }
    }
  }
}

TEST_CASE("--out writes the same bytes as stdout") {
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "fibgcd_cli_out_test.csv";
  std::filesystem::remove(path);
  const RunResult direct = run_cli("fixed-points --limit 100");
  const RunResult filed =
      run_cli("fixed-points --limit 100 --out " + path.string());
  REQUIRE(filed.status == 0);
  CHECK(filed.output.empty());
  std::ifstream in(path, std::ios::binary);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == direct.output);
  std::filesystem::remove(path);
}

TEST_CASE("exit statuses: usage, overflow") {
  CHECK(run_cli("no-such-command").status == 2);
  CHECK(run_cli("enumerate").status == 2);              // missing --limit
  CHECK(run_cli("enumerate --limit 10 --format xml").status == 2);
  CHECK(run_cli("member --n 0").status == 2);           // rejects 0
  // z(2^62) = 3 * 2^60, lcm(2^62, z) >= 2^63
  CHECK(run_cli("member --n 4611686018427387904").status == 3);
  CHECK(run_cli("rank --n 4611686018427387904").status == 3);
}

TEST_CASE("gcd-seq golden prefix") {
  const RunResult r = run_cli("gcd-seq --limit 6 --format csv");
  REQUIRE(r.status == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 7);
  CHECK(lines[0] == "n,g");
  const std::vector<std::string> expected = {"1,1", "2,1", "3,1",
                                             "4,1", "5,5", "6,2"};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(lines[i + 1] == expected[i]);
  }
}

TEST_CASE("coprime-count scalar row") {
  const RunResult r = run_cli("coprime-count --limit 6 --format json");
  REQUIRE(r.status == 0);
  const auto obj = nlohmann::json::parse(r.output);
  CHECK(obj["x"] == 6);
  CHECK(obj["count"] == 4);
}
