#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct Cli {
  int code;
  std::string out;
};

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("wavelab_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Cli wavelab(const std::string& args, const fs::path& dir) {
  const auto log = dir / "stdout.txt";
  const std::string cmd = std::string(WAVELAB_TOOL) + " " + args + " > " + log.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, slurp(log)};
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& text) {
  const auto p = dir / name;
  std::ofstream(p) << text;
  return p;
}

fs::path only_run(const fs::path& runs) {
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(runs)) dirs.push_back(e.path());
  EXPECT_EQ(dirs.size(), 1u);
  return dirs.at(0);
}

std::map<std::string, std::string> csv_files(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.path().extension() == ".csv") out[fs::relative(e.path(), dir).string()] = slurp(e.path());
  }
  return out;
}

int manifests_in(const fs::path& dir) {
  int n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.path().filename() == "manifest.json";
  return n;
}

}  // namespace

TEST(Cli, CheckExponentsFromFlags) {
  const auto d = scratch("check");
  const auto r = wavelab("check-exponents --alpha 1 --b 1/4 --out " + (d / "runs").string(), d);
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("theta1 = (4 - alpha)/2 = 3/2"), std::string::npos);
  EXPECT_NE(r.out.find("sign anomaly"), std::string::npos);
  const auto run = only_run(d / "runs");
  EXPECT_EQ(manifests_in(run), 1);
  const auto m = nlohmann::json::parse(slurp(run / "manifest.json"));
  EXPECT_EQ(m["derived"]["theta1"], "3/2");
  EXPECT_EQ(m["derived"]["theta2"], "29/28");
  EXPECT_FALSE(m["partial"].get<bool>());
}

TEST(Cli, IneligibleCheckIsExperimentFailure) {
  const auto d = scratch("inelig");
  const auto r = wavelab("check-exponents --alpha 2 --b 1 --out " + (d / "runs").string(), d);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("[FAIL] alpha < (4-2b)/3"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitTwo) {
  const auto d = scratch("bad");
  const auto cfg = write_config(d, "bad.cfg", "eq.alphaa = 1\ngrid.n = 7x\n");
  const auto r = wavelab("picard --config " + cfg.string() + " --out " + (d / "runs").string(), d);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("line 1"), std::string::npos);
  EXPECT_NE(r.out.find("line 2"), std::string::npos);
  EXPECT_FALSE(fs::exists(d / "runs"));

  const auto missing = wavelab("picard --config " + (d / "nope.cfg").string(), d);
  EXPECT_EQ(missing.code, 2);
  const auto nosub = wavelab("", d);
  EXPECT_EQ(nosub.code, 2);
}

TEST(Cli, PicardOnZeroData) {
  const auto d = scratch("zero");
  const auto cfg = write_config(d, "z.cfg", "eq.b = 1/4\ndata.kind = zero\ntime.snapshots = 17\n");
  const auto r = wavelab("picard --config " + cfg.string() + " --out " + (d / "runs").string(), d);
  EXPECT_EQ(r.code, 0) << r.out;
  const auto run = only_run(d / "runs");
  EXPECT_NE(r.out.find(run.string()), std::string::npos);
  const auto m = nlohmann::json::parse(slurp(run / "manifest.json"));
  EXPECT_EQ(m["outcome"]["iterations"], 1);
  EXPECT_EQ(slurp(run / "picard.csv").substr(0, 19), "k,d,ratio,ball_norm");
}

TEST(Cli, SweepWritesThreeManifestsAndAggregate) {
  const auto d = scratch("sweep");
  const auto cfg = write_config(d, "s.cfg",
                                "eq.b = 1/4\ngrid.n = 256\ndata.amplitude = 1\ntime.T = 1\n"
                                "time.snapshots = 17\noutput.formats = csv, svg\n");
  const auto r = wavelab("sweep --config " + cfg.string() + " --out " + (d / "runs").string(), d);
  EXPECT_EQ(r.code, 0) << r.out;
  const auto run = only_run(d / "runs");
  EXPECT_EQ(manifests_in(run), 1);
  for (const char* sub : {"T0", "T1", "T2"}) {
    EXPECT_EQ(manifests_in(run / sub), 1) << sub;
    EXPECT_TRUE(fs::exists(run / sub / "contraction.svg"));
  }
  const auto agg = slurp(run / "sweep.csv");
  EXPECT_EQ(std::count(agg.begin(), agg.end(), '\n'), 4);
}

TEST(Cli, ProbeSeedRequiredAndOverridable) {
  const auto d = scratch("seed");
  const auto cfg = write_config(d, "p.cfg",
                                "eq.b = 1/4\ngrid.n = 256\nprobes.name = product_rule\nprobes.samples = 5\n");
  EXPECT_EQ(wavelab("probe --config " + cfg.string() + " --out " + (d / "runs").string(), d).code, 2);
  const auto r = wavelab("probe --config " + cfg.string() + " --seed 17 --out " + (d / "runs").string(), d);
  EXPECT_NE(r.code, 2) << r.out;
  const auto m = nlohmann::json::parse(slurp(only_run(d / "runs") / "manifest.json"));
  EXPECT_EQ(m["config"]["probes.seed"], "17");
}

TEST(Cli, RerunsReproduceCsvBitForBit) {
  const auto d = scratch("repro");
  const auto cfg = write_config(d, "r.cfg",
                                "eq.b = 1/4\ngrid.n = 256\ntime.snapshots = 17\n"
                                "probes.name = nonlinear\nprobes.samples = 5\nprobes.seed = 99\n");
  for (const char* sub : {"picard", "probe", "norms"}) {
    const auto a = d / (std::string(sub) + "_a"), b = d / (std::string(sub) + "_b");
    wavelab(std::string(sub) + " --config " + cfg.string() + " --out " + a.string(), d);
    wavelab(std::string(sub) + " --config " + cfg.string() + " --out " + b.string(), d);
    const auto fa = csv_files(only_run(a)), fb = csv_files(only_run(b));
    EXPECT_FALSE(fa.empty()) << sub;
    EXPECT_EQ(fa, fb) << sub;
  }
}
