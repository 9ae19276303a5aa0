#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "cvpa/acceptance.hpp"
#include "cvpa/format.hpp"

using namespace cvpa;

namespace {

constexpr double kCliLimit = 120;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CVPA_BIN) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

CriterionResult criterion_cli() {
  CriterionResult res{8, "CLI contract", false, 0, kCliLimit, ""};
  const auto t0 = std::chrono::steady_clock::now();
  std::string why;

  const Run self = run("selftest");
  if (self.code != 0) why += "selftest exit " + std::to_string(self.code) + "; ";
  int lines = 0;
  for (std::size_t pos = 0; (pos = self.out.find(" PASS ", pos)) != std::string::npos; ++pos) ++lines;
  if (lines != 7) why += "selftest passed " + std::to_string(lines) + "/7; ";

  const Run broken = run("check courant " + std::string(FIXTURE_DIR) + "/broken_c5.cvpa");
  if (broken.code != 1) why += "broken fixture exit " + std::to_string(broken.code) + "; ";
  if (broken.out.find("c5") == std::string::npos) why += "broken fixture does not name c5; ";

  const Run bad = run("check courant " + std::string(FIXTURE_DIR) + "/does_not_exist.cvpa");
  if (bad.code != 2) why += "missing file exit " + std::to_string(bad.code) + "; ";

  int fixtures = 0;
  for (const auto& entry : std::filesystem::directory_iterator(FIXTURE_DIR)) {
    if (entry.path().extension() != ".cvpa") continue;
    ++fixtures;
    try {
      const std::string once = print(parse_file(entry.path().string()));
      if (print(parse(once)) != once) why += entry.path().filename().string() + " is not a fixpoint; ";
    } catch (const std::exception& e) {
      why += entry.path().filename().string() + ": " + e.what() + "; ";
    }
  }

  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (res.seconds > res.limit) why += "over time; ";
  res.passed = why.empty();
  res.detail = res.passed ? "selftest 7/7, broken_c5 exit 1 naming c5, " + std::to_string(fixtures) +
                                " fixtures round-trip through the printer"
                          : why;
  return res;
}

}  // namespace

int main() {
  const Exec exec = Exec::from_env();
  bool ok = true;
  for (const auto& r : run_acceptance(exec)) {
    ok = ok && r.passed;
    std::cout << format_result(r) << std::endl;
  }
  const CriterionResult cli = criterion_cli();
  ok = ok && cli.passed;
  std::cout << format_result(cli) << std::endl;
  return ok ? 0 : 1;
}
