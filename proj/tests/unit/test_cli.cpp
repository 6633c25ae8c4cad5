#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kExe = FOPA_LAB_EXE;
const std::string kData = FOPA_TEST_DATA;

int run(const std::string& args) {
  const std::string cmd = "\"" + kExe + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string tmp(const std::string& name) { return testing::TempDir() + "/" + name; }

std::string write_file(const std::string& name, const std::string& text) {
  const std::string path = tmp(name);
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, Version) { EXPECT_EQ(run("--version"), 0); }

TEST(Cli, NeedsSubcommand) {
  EXPECT_NE(run(""), 0);
  EXPECT_NE(run("sweep --config " + kData + "/minimal.ini"), 0);
}

TEST(Cli, PresetWritesCsv) {
  const std::string out = tmp("cli_fig1.csv");
  std::remove(out.c_str());
  ASSERT_EQ(run("preset --id fig1 --out " + out), 0);
  const std::string text = slurp(out);
  EXPECT_EQ(text.rfind("# tool: fopa-lab 0.1.0\n", 0), 0u);
  EXPECT_NE(text.find("\ndetuning_THz,g_psa_noraman_dB,"), std::string::npos);
  EXPECT_EQ(run("preset --id fig9 --out " + out), 1);
}

TEST(Cli, SweepFromConfig) {
  const std::string out = tmp("cli_minimal.csv");
  ASSERT_EQ(run("--threads 2 sweep --config " + kData + "/minimal.ini --out " + out), 0);
  const std::string text = slurp(out);
  EXPECT_NE(text.find("# config_hash: "), std::string::npos);
  EXPECT_NE(text.find("# pump.power: 500 mW -> 0.5 W"), std::string::npos) << text;
  EXPECT_NE(text.find("\ndetuning_THz,g_psa_dB,g_input_dB,g_psd_dB,nf_dB\n"), std::string::npos);
}

TEST(Cli, ValidationErrorsExitOne) {
  const std::string out = tmp("cli_bad.csv");
  EXPECT_EQ(run("sweep --config " + kData + "/missing.ini --out " + out), 1);
  const std::string bad = write_file("cli_bad.ini", slurp(kData + "/minimal.ini") + "\n[numerics]\nthreads = 0\n");
  EXPECT_EQ(run("sweep --config " + bad + " --out " + out), 1);
  const std::string unknown = write_file("cli_unknown.ini", slurp(kData + "/minimal.ini") + "\n[extra]\ncolour = red\n");
  EXPECT_EQ(run("sweep --config " + unknown + " --out " + out), 1);
  EXPECT_EQ(run("sweep --config " + kData + "/minimal.ini --out /nonexistent-dir/x.csv"), 1);
}

TEST(Cli, NumericalFailureExitsTwo) {
  std::string text = slurp(kData + "/minimal.ini");
  text.insert(text.find("[pump]"), "loss = 0.5 dB/km\n\n");
  text += "\n[numerics]\nquad_max_evaluations = 15\nquad_rel_tolerance = 1e-12\n";
  EXPECT_EQ(run("sweep --config " + write_file("cli_budget.ini", text) + " --out " + tmp("cli_budget.csv")), 2);
}

TEST(Cli, VerifySuite) {
  EXPECT_EQ(run("verify --suite degenerate_limits"), 0);
  EXPECT_NE(run("verify --suite everything"), 0);
}
