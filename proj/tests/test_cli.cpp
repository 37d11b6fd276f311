#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("kinex-cli-test-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CliResult cli(const std::string& args) {
  fs::path out = scratch_dir() / "stdout.txt", err = scratch_dir() / "stderr.txt";
  std::string cmd = std::string("'") + KINEX_CLI_PATH + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
  int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string sample(const std::string& name) { return std::string("'") + KINEX_SAMPLES_DIR + "/" + name + "'"; }

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, ComputeNao) {
  auto r = cli("compute @nao");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("K(all) = 238 bits (rounded)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("4.1x10^71"), std::string::npos);
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, ComputeExactPrintsEveryDigit) {
  auto r = cli("compute @nao --exact");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("exact = 413444625556718775492782324728322688694362272172467745532608000000000000"),
            std::string::npos)
      << r.out;
}

TEST(Cli, ComputeSampleMechanicalOnly) {
  auto r = cli("compute " + sample("simple-robot.mechx") + " --mechanical-only");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("K(mechanical) = 25 bits (rounded)"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("K(all)"), std::string::npos);
}

TEST(Cli, MissingFileExitsTwo) {
  auto r = cli("compute nonexistent.mechx");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("not found"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(cli("compute @no-such-platform").exit_code, 2);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(cli("").exit_code, 1);
  EXPECT_EQ(cli("frobnicate").exit_code, 1);
  EXPECT_EQ(cli("compute @nao --exact --log-space").exit_code, 1);
  fs::path csv = scratch_dir() / "bad.csv";
  EXPECT_EQ(cli("plot --figure 9 --out-csv '" + csv.string() + "'").exit_code, 1);
}

TEST(Cli, StubIsAParseLevelError) {
  auto r = cli("compute @human-wa-eval");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("not computable"), std::string::npos);
}

TEST(Cli, JsonIsStableAndParseable) {
  auto a = cli("compute @nao --json");
  auto b = cli("compute @nao --json");
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(count_lines(a.out), 1u);
  auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["platform"], "NAO");
  EXPECT_EQ(j["k_all_rounded"], 238);
  EXPECT_EQ(j["computational_config_digits"], "14148410");

  auto c = nlohmann::json::parse(cli("compare @nao @cat --json").out);
  EXPECT_EQ(c["a"], "NAO");
  EXPECT_LT(c["delta_bits"].get<double>(), 0);
}

TEST(Cli, CompareText) {
  auto r = cli("compare @nao @nao");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("delta_bits = 0"), std::string::npos) << r.out;
}

TEST(Cli, DatasetList) {
  auto r = cli("dataset-list");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(count_lines(r.out), 29u);
  EXPECT_NE(r.out.find("@nao\tartificial\tNAO"), std::string::npos);
}

TEST(Cli, PlotFigure3) {
  fs::path csv = scratch_dir() / "fig3.csv", svg = scratch_dir() / "fig3.svg";
  auto r = cli("plot --figure 3 --out-csv '" + csv.string() + "' --out-svg '" + svg.string() + "'");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  std::string text = slurp(csv);
  EXPECT_EQ(text.rfind("label,series,x,y\n", 0), 0u);
  EXPECT_EQ(count_lines(text), 20u);  // header + 19 robots
  std::string drawing = slurp(svg);
  std::size_t circles = 0;
  for (std::size_t pos = 0; (pos = drawing.find("<circle class=\"point\"", pos)) != std::string::npos; ++pos) ++circles;
  EXPECT_EQ(circles, 19u);
}

TEST(Cli, PlotIsDeterministic) {
  fs::path a = scratch_dir() / "a.svg", b = scratch_dir() / "b.svg";
  ASSERT_EQ(cli("plot --figure 5 --out-svg '" + a.string() + "' --width 640 --height 480").exit_code, 0);
  ASSERT_EQ(cli("plot --figure 5 --out-svg '" + b.string() + "' --width 640 --height 480").exit_code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_NE(slurp(a).find("viewBox=\"0 0 640 480\""), std::string::npos);
}

TEST(Cli, Validate) {
  auto ok = cli("validate @nao");
  EXPECT_EQ(ok.exit_code, 0);
  fs::path bad = scratch_dir() / "bad.mechx";
  std::ofstream(bad) << "platform \"p\"\ngroup \"a\" count 1 range 0 10.05 resolution 0.1\n";
  auto lenient = cli("validate '" + bad.string() + "'");
  EXPECT_EQ(lenient.exit_code, 0);
  EXPECT_NE(lenient.out.find(":2: warning:"), std::string::npos) << lenient.out;
  EXPECT_EQ(cli("validate '" + bad.string() + "' --strict").exit_code, 2);
  std::ofstream(bad) << "platform \"p\"\nwidget\n";
  auto broken = cli("validate '" + bad.string() + "'");
  EXPECT_EQ(broken.exit_code, 2);
  EXPECT_NE(broken.out.find(":2: error:"), std::string::npos) << broken.out;
}

TEST(Cli, AemRun) {
  auto r = cli("aem-run " + sample("unary_incrementer.aem") + " --max-steps 100 --trace");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out,
            "1 scan 1 1 1 R\n2 scan 2 1 1 R\n3 scan 3 1 1 R\n4 scan 4 _ 1 S\n"
            "outcome halted\nsteps 4\nstate done\nhead 4\ntape 1:1 2:1 3:1 4:1\n");
  auto twin = cli("aem-run " + sample("unary_incrementer_mech.aem") + " --max-steps 100");
  EXPECT_NE(twin.out.find("tape 1:extension 2:extension 3:extension 4:extension"), std::string::npos) << twin.out;

  auto cut = cli("aem-run " + sample("unary_incrementer.aem") + " --max-steps 2");
  EXPECT_EQ(cut.exit_code, 0);
  EXPECT_NE(cut.out.find("outcome budget_exhausted"), std::string::npos);
  EXPECT_EQ(cli("aem-run " + sample("unary_incrementer.aem") + " --max-steps 2 --strict-halt").exit_code, 3);
  EXPECT_EQ(cli("aem-run " + sample("wave_tool.aem") + " --max-steps 10").exit_code, 0);
  EXPECT_EQ(cli("aem-run " + sample("unary_incrementer.aem") + " --max-steps 0").exit_code, 1);
}
