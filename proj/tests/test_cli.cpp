#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string data(const char* name) { return std::string(OUTERSPACE_DATA_DIR) + "/" + name; }

Run run(const std::string& args) {
  const std::string cmd = std::string(OUTERSPACE_CLI) + " " + args + " 2>/dev/null";
  Run r;
  std::FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, TranslationLength) {
  const auto r = run("translen --graph " + data("rose3.json") + " --word 'a b'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0.6666666667\n");
}

TEST(Cli, DistanceWithWitness) {
  const auto r = run("dist --from " + data("rose3.json") + " --to " + data("rose3_y.json") + " --witness");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0.4054651081\nwitness a\n");
}

TEST(Cli, JsonOutputParses) {
  const auto r = run("--json systole --graph " + data("parallel4.json"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("command"), "systole");
  EXPECT_DOUBLE_EQ(j.at("value").get<double>(), 0.5);
}

TEST(Cli, CsvHeader) {
  const auto r = run("--csv axis --from -1 --to 1 --step 0.5 --mu " + data("dual_a.json") + " --nu " +
                     data("dual_b.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "s,value,d_sym_to_prev,point_file");
  int lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(lines, 6);
}

TEST(Cli, ErrorsExitWithTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("translen --graph " + data("rose3.json")).code, 2);
  EXPECT_EQ(run("translen --graph " + data("missing.json") + " --word a").code, 2);
  EXPECT_EQ(run("translen --graph " + data("rose3.json") + " --word 'a q'").code, 2);
  EXPECT_EQ(run("dist --from " + data("rose3.json") + " --to " + data("dual_a.json")).code, 2);
}

TEST(Cli, MinislineOnTheBundledPair) {
  const auto r = run("check-minisline --mu " + data("tribonacci_mu.json") + " --nu " + data("tribonacci_nu.json"));
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, MinislineFailureExitsWithThree) {
  const auto r =
      run("check-minisline --B 1 --mu " + data("tribonacci_mu.json") + " --nu " + data("tribonacci_nu.json"));
  EXPECT_EQ(r.code, 3) << r.out;
}

TEST(Cli, SeededRunsAreByteIdentical) {
  const std::string args = "--json check-contracting --seed 4 --walks 5 --mu " + data("dual_a.json") + " --nu " +
                           data("dual_b.json");
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_FALSE(a.out.empty());
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(a.out, b.out);
}
