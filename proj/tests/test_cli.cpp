#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef MABRAVO_CLI_PATH
#error "MABRAVO_CLI_PATH must point at the built binary"
#endif

namespace {

struct CommandResult {
  int exit_code;
  std::string output;  // stdout
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CommandResult run_cli(const std::string& args) {
  std::string out_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                         "/mabravo_cli_out.txt";
  std::string cmd = std::string(MABRAVO_CLI_PATH) + " " + args + " > " +
                    out_path + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return CommandResult{code, slurp(out_path)};
}

std::size_t count_occurrences(const std::string& text,
                              const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = 0; (pos = text.find(needle, pos)) != std::string::npos;
       pos += needle.size())
    ++count;
  return count;
}

}  // namespace

TEST_CASE("graphical mode renders the documented scene deterministically") {
  std::string svg_path = "/tmp/mabravo_test_scene.svg";
  CommandResult first =
      run_cli("--out " + svg_path + " 100 10 1000");
  CHECK(first.exit_code == 0);
  CHECK(first.output.find("sites=100") != std::string::npos);
  CHECK(first.output.find("check exactly-once-delivery: pass") !=
        std::string::npos);
  CHECK(first.output.find("FAIL") == std::string::npos);

  std::string svg = slurp(svg_path);
  std::size_t cells = count_occurrences(svg, "stroke=\"green\"") +
                      count_occurrences(svg, "stroke=\"blue\"");
  CHECK(cells == 100);
  CHECK(count_occurrences(svg, "stroke=\"red\"") == 1);
  CHECK(count_occurrences(svg, "stroke=\"magenta\"") == 1);
  CHECK(count_occurrences(svg, "stroke=\"cyan\"") >= 1);
  CHECK(count_occurrences(svg, "<circle") >= 100);

  std::string svg_path2 = "/tmp/mabravo_test_scene2.svg";
  CommandResult second =
      run_cli("--out " + svg_path2 + " 100 10 1000");
  CHECK(second.exit_code == 0);
  CHECK(svg == slurp(svg_path2));
  // summaries agree except for the output path on the final line
  auto strip_last_line = [](const std::string& s) {
    return s.substr(0, s.rfind("svg written"));
  };
  CHECK(strip_last_line(first.output) == strip_last_line(second.output));
}

TEST_CASE("graphical mode handles a single-site world") {
  std::string svg_path = "/tmp/mabravo_single.svg";
  CommandResult r = run_cli("--out " + svg_path + " 1 3 7");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("sites=1") != std::string::npos);
  CHECK(r.output.find("hops=0") != std::string::npos);
  std::string svg = slurp(svg_path);
  CHECK(count_occurrences(svg, "stroke=\"green\"") == 1);  // one cell, in AoI
}

TEST_CASE("batch mode emits one row per process") {
  CommandResult r = run_cli("2 3 1 1 9");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("network,route,", 0) == 0);
  // header + exactly one data row before the summary block
  std::size_t header_end = r.output.find('\n');
  std::size_t row_end = r.output.find('\n', header_end + 1);
  std::string row =
      r.output.substr(header_end + 1, row_end - header_end - 1);
  CHECK(row.find('#') == std::string::npos);
  CHECK(r.output.find('\n', row_end + 1) != std::string::npos);
  CHECK(r.output.substr(row_end + 1, 1) == "#");

  // messages_sent is the second-to-last field: 0 or 1 with two sites
  std::size_t last_comma = row.rfind(',');
  std::size_t prev_comma = row.rfind(',', last_comma - 1);
  std::string messages =
      row.substr(prev_comma + 1, last_comma - prev_comma - 1);
  CHECK((messages == "0" || messages == "1"));
}

TEST_CASE("batch mode output is byte-identical across runs and thread counts") {
  CommandResult a = run_cli("50 10 5 5 3");
  CommandResult b = run_cli("50 10 5 5 3");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);

  std::string with_env =
      "OMP_NUM_THREADS=3 " + std::string(MABRAVO_CLI_PATH) +
      " 50 10 5 5 3 > /tmp/mabravo_threads.txt 2>/dev/null";
  REQUIRE(std::system(with_env.c_str()) == 0);
  CHECK(slurp("/tmp/mabravo_threads.txt") == a.output);
}

TEST_CASE("usage errors exit with the usage status") {
  CHECK(run_cli("1 2 3 4").exit_code == 2);          // wrong arity
  CHECK(run_cli("").exit_code == 2);                 // no parameters
  CHECK(run_cli("--bogus-flag 1 2 3").exit_code == 2);
  CHECK(run_cli("--world-min 5 --world-max 5 1 2 3").exit_code == 2);
  CHECK(run_cli("0 3 7").exit_code == 2);            // zero sites
}

TEST_CASE("unwritable output exits with the io status") {
  CHECK(run_cli("--out /nonexistent-dir/x.svg 10 4 1").exit_code == 3);
  CHECK(run_cli("--out /nonexistent-dir/x.csv 10 4 1 1 1").exit_code == 3);
}

TEST_CASE("--no-verify marks rows as skipped") {
  CommandResult r = run_cli("--no-verify 20 5 2 2 11");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find(",skipped\n") != std::string::npos);
  CHECK(r.output.find(",true\n") == std::string::npos);
}

TEST_CASE("a custom world box and epsilon are honored") {
  CommandResult r = run_cli("--world-min -100 --world-max 100 --epsilon 1e-7 "
                            "30 6 2 2 5");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("network,route,", 0) == 0);
  CHECK(r.output.find("checks_failed=0") != std::string::npos);
}
