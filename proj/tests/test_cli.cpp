#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "rdlab/cli/commands.hpp"

using namespace rdlab;
using namespace rdlab::cli;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("rdlab-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  CommandOptions options() const {
    CommandOptions o;
    o.out = path_.string();
    o.workers = 2;
    return o;
  }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json short_cubic() {
  return json{{"scenario", "example15-cubic"},
              {"grid", {{"n", 32}}},
              {"scheme", {{"t_end", 0.5}, {"snapshot_every", 50}, {"diagnostics_every", 10}}}};
}

json inline_system_doc() {
  return json::parse(R"({
    "system": {
      "species": ["a", "b"],
      "f": [[{"c": -1, "e": [0, 1]}], []],
      "diffusion": [1, 1]
    },
    "initial": {"base": [1, 1]},
    "declares": ["A1"]
  })");
}

}  // namespace

TEST(Config, SyntaxErrorReportsLine) {
  try {
    parse_config_text("{\n  \"grid\": {\n    \"n\": ,\n  }\n}", "bad.json");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.json: line 3"), std::string::npos) << e.what();
  }
}

TEST(Config, WrongTypeNamesField) {
  json doc = short_cubic();
  doc["scheme"]["dt"] = "fast";
  try {
    resolve_config(doc);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("scheme.dt"), std::string::npos) << e.what();
  }
}

TEST(Config, InvariantsRejected) {
  json doc = short_cubic();
  doc["scheme"]["dt"] = 1.0;
  EXPECT_THROW(resolve_config(doc), ConfigError);
  doc = short_cubic();
  doc["diagnostics"]["energy_p"] = json::array({1});
  EXPECT_THROW(resolve_config(doc), ConfigError);
  EXPECT_THROW(resolve_config(json{{"scenario", "nope"}}), ConfigError);
  EXPECT_THROW(resolve_config(json::object()), ConfigError);
}

TEST(Config, OverridesSetDottedPaths) {
  json doc = short_cubic();
  apply_overrides(doc, {"scheme.dt=1e-4", "params.gamma=2", "initial.base=[2,2,2]", "scheme.mode=conservative-explicit"});
  const auto cfg = resolve_config(doc);
  EXPECT_DOUBLE_EQ(cfg.scheme.dt, 1e-4);
  EXPECT_EQ(cfg.scheme.mode, SchemeMode::ConservativeExplicit);
  EXPECT_EQ(cfg.initial.base, (std::vector<double>{2, 2, 2}));
  EXPECT_DOUBLE_EQ((*cfg.system.weights)[0], 2.0);
  EXPECT_THROW(apply_overrides(doc, {"no-equals"}), ConfigError);
}

TEST(Config, HashChangesWithEveryField) {
  const auto base = resolve_config(short_cubic());
  for (const std::string o : {"scheme.dt=0.002", "grid.n=33", "seed=1", "params.kf=2", "diagnostics.entropy=false",
                              "initial.amplitude=[0.1,0.4,0.3]"}) {
    json doc = short_cubic();
    apply_overrides(doc, {o});
    EXPECT_NE(config_hash(resolve_config(doc).resolved), config_hash(base.resolved)) << o;
  }
  json same = short_cubic();
  same["output"] = "/somewhere/else";
  EXPECT_EQ(run_id(resolve_config(same)), run_id(base));
}

TEST(Config, InlineSystemAndDiffusionForms) {
  const Grid1D g(1.0, 4);
  const auto piecewise = rdlab::cli::detail::parse_diffusion(json::parse(R"({"left": [0.1], "right": [10]})"), 1, g, "d");
  EXPECT_EQ(piecewise.raw(0), (Field{0.1, 0.1, 10, 10}));
  const auto cfg = resolve_config(inline_system_doc());
  EXPECT_EQ(cfg.system.size(), 2u);
  EXPECT_EQ(cfg.declares, (std::vector<Assumption>{Assumption::QuasiPositivity}));
}

TEST(Sha256, KnownDigest) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Scenarios, LibraryPassesDeclaredChecks) {
  for (const auto& sc : scenario_library()) {
    const auto cfg = resolve_config(json{{"scenario", sc.name}});
    const auto out = run_checks(cfg);
    if (sc.name == "blowup-demo") {
      EXPECT_EQ(out.exit_code(), exit_violated) << sc.name;
    } else {
      EXPECT_EQ(out.exit_code(), exit_ok) << sc.name;
    }
  }
}

TEST(Check, CubicReportsUnweightedMassControlViolation) {
  const auto cfg = resolve_config(json{{"scenario", "example15-cubic"}});
  std::ostringstream os;
  EXPECT_EQ(cmd_check(cfg, {}, os), exit_ok);
  const auto c = run_checks(cfg);
  bool saw = false;
  for (const auto& r : c.reports) {
    if (r.assumption == Assumption::MassControl) {
      saw = true;
      EXPECT_TRUE(r.violated());
      EXPECT_TRUE(r.witness);
    } else if (r.assumption == Assumption::Growth) {
      // Quartic terms exceed the plain growth bound; the intermediate sums carry the structure.
      EXPECT_TRUE(r.violated());
    } else {
      EXPECT_FALSE(r.violated()) << tag(r.assumption);
    }
  }
  EXPECT_TRUE(saw);
  EXPECT_NE(os.str().find("witness"), std::string::npos) << os.str();
}

TEST(Check, NonQuasiPositiveSystemExitsViolated) {
  const auto cfg = resolve_config(inline_system_doc());
  std::ostringstream os;
  EXPECT_EQ(cmd_check(cfg, {}, os), exit_violated);
  EXPECT_NE(os.str().find("witness"), std::string::npos);
}

TEST(Check, DeclaredButMissingStructureIsConfigError) {
  json doc = inline_system_doc();
  doc["declares"] = json::array({"E"});
  EXPECT_THROW(run_checks(resolve_config(doc)), ConfigError);
}

TEST(Run, DeterministicDiagnostics) {
  TempDir a, b;
  std::ostringstream os;
  const auto cfg = resolve_config(short_cubic());
  const auto s1 = execute_run(cfg, a.options(), os);
  const auto s2 = execute_run(cfg, b.options(), os);
  EXPECT_EQ(s1.id, s2.id);
  const std::string csv = slurp(s1.dir / "diagnostics.csv");
  EXPECT_EQ(csv.rfind("# rdlab-diagnostics v1", 0), 0u);
  EXPECT_EQ(csv, slurp(s2.dir / "diagnostics.csv"));
  const json m = read_json(s1.dir / "manifest.json");
  EXPECT_EQ(m["status"], "completed");
  EXPECT_EQ(m["config_hash"], config_hash(cfg.resolved));
  for (const auto& f : m["files"]) EXPECT_TRUE(fs::exists(s1.dir / f.get<std::string>())) << f;
}

TEST(Run, BlowUpHasDistinctStatus) {
  TempDir dir;
  std::ostringstream os;
  const auto cfg = resolve_config(json{{"scenario", "blowup-demo"}});
  const auto s = execute_run(cfg, dir.options(), os);
  EXPECT_EQ(s.exit_code, exit_blowup);
  const json m = read_json(s.dir / "manifest.json");
  EXPECT_EQ(m["status"], "blow-up");
  EXPECT_NEAR(m["termination"]["t"].get<double>(), 0.1, 0.02);
  std::ostringstream rep;
  EXPECT_EQ(cmd_report(s.dir, rep), exit_ok);
  EXPECT_NE(rep.str().find("blow-up"), std::string::npos);
}

TEST(Run, CrashNeverLeavesCompletedManifest) {
  TempDir dir;
  json doc = short_cubic();
  doc["scheme"]["mode"] = "conservative-explicit";
  doc["scheme"]["dt"] = 0.4;
  doc["params"]["kf"] = 1e3;
  RunConfig cfg = resolve_config(doc);
  cfg.scheme.max_refinements = 0;
  std::ostringstream os;
  EXPECT_THROW(execute_run(cfg, dir.options(), os), StiffnessError);
  const json m = read_json(dir.path() / run_id(cfg) / "manifest.json");
  EXPECT_EQ(m["status"], "crashed");
}

TEST(Run, HeatMmsReportsError) {
  TempDir dir;
  json doc{{"scenario", "heat-mms"}, {"grid", {{"n", 32}}}, {"scheme", {{"t_end", 0.05}}}};
  std::ostringstream os;
  const auto s = execute_run(resolve_config(doc), dir.options(), os);
  EXPECT_EQ(s.exit_code, exit_ok);
  const json m = read_json(s.dir / "manifest.json");
  ASSERT_TRUE(m["monitors"].contains("mms_l2_error"));
  EXPECT_LT(m["monitors"]["mms_l2_error"].get<double>(), 1e-3);
}

TEST(Report, DisabledDiagnosticsMarkedNotCollected) {
  TempDir dir;
  json doc = short_cubic();
  doc["diagnostics"]["entropy"] = false;
  doc["diagnostics"]["dual"] = false;
  std::ostringstream os;
  const auto s = execute_run(resolve_config(doc), dir.options(), os);
  std::ostringstream rep;
  EXPECT_EQ(cmd_report(s.dir, rep), exit_ok);
  EXPECT_NE(rep.str().find("not collected"), std::string::npos) << rep.str();
  EXPECT_NE(rep.str().find("mass"), std::string::npos);
}

TEST(Report, MissingManifestIsError) {
  TempDir dir;
  std::ostringstream rep;
  EXPECT_THROW(cmd_report(dir.path(), rep), Error);
}

TEST(Sweep, AxisValuesKeepBracketedCommas) {
  const auto axis = parse_axis("params.d=[1,0.5],[0.5,1],2");
  ASSERT_EQ(axis.values.size(), 3u);
  EXPECT_EQ(axis.values[0], json::parse("[1,0.5]"));
  EXPECT_EQ(axis.values[1], json::parse("[0.5,1]"));
  EXPECT_EQ(axis.values[2], 2);
  EXPECT_THROW(parse_axis("params.d=[1,0.5"), ConfigError);
}

TEST(Sweep, AxesProductAndEmptyAxis) {
  TempDir dir;
  json doc = short_cubic();
  doc["scheme"]["t_end"] = 0.1;
  const std::vector<SweepAxis> axes{parse_axis("params.gamma=1,3"), parse_axis("grid.n=16,32")};
  const auto rows = sweep(doc, axes, dir.options());
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) EXPECT_EQ(r.termination, "completed") << r.error;
  EXPECT_TRUE(sweep(doc, {parse_axis("params.gamma=")}, dir.options()).empty());
  std::ostringstream os;
  EXPECT_EQ(cmd_sweep(doc, {parse_axis("params.gamma=")}, dir.options(), os), exit_ok);
}

TEST(Sweep, FailuresAreRecordedPerRow) {
  TempDir dir;
  json doc = short_cubic();
  doc["scheme"]["t_end"] = 0.1;
  const auto rows = sweep(doc, {parse_axis("grid.n=16,0")}, dir.options());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].termination, "completed");
  EXPECT_EQ(rows[1].termination, "error");
  EXPECT_FALSE(rows[1].error.empty());
}

TEST(Sweep, SinglePointMatchesRun) {
  TempDir a, b;
  json doc = short_cubic();
  doc["scheme"]["t_end"] = 0.1;
  const auto rows = sweep(doc, {parse_axis("seed=0")}, a.options());
  std::ostringstream os;
  json single = doc;
  single["seed"] = 0;
  const auto s = execute_run(resolve_config(single), b.options(), os);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].id, s.id);
  EXPECT_EQ(slurp(a.path() / rows[0].id / "diagnostics.csv"), slurp(s.dir / "diagnostics.csv"));
}
