#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dexkin/archetype.hpp"
#include "dexkin/cli.hpp"
#include "dexkin/kinematics.hpp"
#include "dexkin/retarget.hpp"
#include "dexkin/reward.hpp"
#include "dexkin/urdf.hpp"
#include "internal.hpp"

namespace fs = std::filesystem;
using namespace dexkin;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("dexkin_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
    return path(name);
  }
  static std::string slurp(const std::string& p) { return cli::read_text_file(p); }

  fs::path dir_;
};

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_F(CliTest, FkZeroConfig) {
  const auto r = run({"fk", "--archetype", "leap", "--q", "0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 5u);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "chain,x,y,z,qw,qx,qy,qz");
  const HandModel m = build_archetype(ArchetypeKind::kLeap);
  const Eigen::Vector3d t = tip_position(m.chain("index"), m.chain_config(m.zero_config(), "index"));
  char expect[128];
  std::snprintf(expect, sizeof expect, "index,%s,%s,%s,", format_decimal9(t.x()).c_str(),
                format_decimal9(t.y()).c_str(), format_decimal9(t.z()).c_str());
  EXPECT_NE(r.out.find(expect), std::string::npos) << r.out;
  EXPECT_EQ(run({"fk", "--archetype", "leap", "--q", "0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0"}).out, r.out);
}

TEST_F(CliTest, FkWrongLength) {
  const auto r = run({"fk", "--archetype", "leap", "--q", "0,0,0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("expected 16 values"), std::string::npos) << r.err;
}

TEST_F(CliTest, ManipDefaultReport) {
  const auto r = run({"manip"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 19u);
  EXPECT_NE(r.out.find("allegro,down,angular,0.00000e+00"), std::string::npos);
  EXPECT_NE(r.out.find("allegro,up,angular,0.00000e+00"), std::string::npos);
  EXPECT_NE(r.out.find("allegro,curled,angular,0.00000e+00"), std::string::npos);
}

TEST_F(CliTest, ManipPresetFileOrder) {
  const std::string presets = write("p.json", R"({"presets":[{"name":"b","q":[0.5,0.1,0.2,0.3]},{"name":"a","q":[0,0.1,0,0]}]})");
  const auto r = run({"manip", "--archetype", "leap", "--preset-file", presets});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LT(r.out.find("leap,b,"), r.out.find("leap,a,"));
}

TEST_F(CliTest, OpposeErrors) {
  auto r = run({"oppose", "--archetype", "leap", "--n", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("n must be"), std::string::npos) << r.err;
  r = run({"oppose", "--archetype", "leap", "--finger", "pinky", "--n", "10"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("pinky"), std::string::npos) << r.err;
}

TEST_F(CliTest, OpposeWritesFilesAndReplays) {
  const auto r = run({"oppose", "--archetype", "leap-c", "--finger", "index", "--n", "2000", "--seed", "3", "--out",
                      path("a")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"oppose.json", "contacts_leap-c_index.csv", "contacts_leap-c_index.svg", "manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "a" / f)) << f;
  }
  EXPECT_NE(slurp(path("a/oppose.json")).find("\"seed\": 3"), std::string::npos);
  const auto rep = run({"replay", path("a/manifest.json"), "--out", path("b")});
  EXPECT_EQ(rep.code, 0) << rep.err << rep.out;
  for (const auto& e : fs::directory_iterator(dir_ / "a")) {
    EXPECT_EQ(slurp(e.path().string()), slurp((dir_ / "b" / e.path().filename()).string())) << e.path();
  }
}

TEST_F(CliTest, ReplayDetectsChangedInput) {
  const std::string presets = write("p.json", R"({"presets":[{"name":"x","q":[0.5,0.1,0.2,0.3]}]})");
  ASSERT_EQ(run({"manip", "--archetype", "leap", "--preset-file", presets, "--out", path("a")}).code, 0);
  write("p.json", R"({"presets":[{"name":"x","q":[0.6,0.1,0.2,0.3]}]})");
  EXPECT_NE(run({"replay", path("a/manifest.json"), "--out", path("b")}).code, 0);
}

TEST_F(CliTest, ModelExportValidateRoundTrip) {
  const auto e = run({"model", "export", "--archetype", "allegro", "--out", path("m")});
  ASSERT_EQ(e.code, 0) << e.err;
  std::string urdf;
  for (const auto& f : fs::directory_iterator(dir_ / "m")) {
    if (f.path().extension() == ".urdf") urdf = f.path().string();
  }
  ASSERT_FALSE(urdf.empty());
  EXPECT_EQ(run({"model", "validate", "--model", urdf}).code, 0);
  const auto again = run({"model", "export", "--model", urdf});
  EXPECT_EQ(again.out, slurp(urdf));
}

TEST_F(CliTest, RetargetEnergyMode) {
  const HandModel m = build_archetype(ArchetypeKind::kLeap);
  std::string frames;
  for (int i = 0; i < 3; ++i) {
    HumanHandFrame f;
    JointConfig q = m.clamp(JointConfig::Constant(16, 0.2 + 0.1 * i));
    for (const char* c : {"thumb", "index", "middle", "ring"}) {
      f.keypoints[keypoint::tip(c)] = tip_position(m.chain(c), m.chain_config(q, c));
    }
    f.timestamp = 0.05 * i;
    frames += frame_record_json(f) + "\n";
  }
  frames += "garbage\n";
  const auto r = run({"retarget", "--archetype", "leap", "--frames", write("f.jsonl", frames), "--out", path("o")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(path("o/retarget.csv"));
  EXPECT_EQ(count_lines(csv), 5u);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,q0,q1,q2,q3,q4,q5,q6,q7,q8,q9,q10,q11,q12,q13,q14,q15");
  EXPECT_NE(slurp(path("o/retarget.log")).find("frame 3"), std::string::npos);
}

TEST_F(CliTest, RetargetEmptyAndDirectMode) {
  const std::string empty = write("e.jsonl", "");
  const auto r = run({"retarget", "--archetype", "leap", "--frames", empty});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, joint_csv_header(16));
  EXPECT_EQ(run({"retarget", "--archetype", "leap", "--frames", empty, "--mode", "direct"}).code, 2);
  const HandModel m = build_archetype(ArchetypeKind::kLeap);
  const std::string map = write("map.json", joint_mapping_json(default_joint_mapping(m)));
  EXPECT_EQ(run({"retarget", "--archetype", "leap", "--frames", empty, "--mode", "direct", "--mapping", map}).code, 0);
}

TEST_F(CliTest, Reward) {
  TrajectoryStep s;
  s.q = s.q_target = s.tau = s.dq = s.q_grasp = Eigen::VectorXd::Zero(16);
  s.wz = 0.5;
  const std::string traj = write("t.csv", trajectory_csv(std::vector<TrajectoryStep>(4, s)));
  const auto r = run({"reward", "--trajectory", traj});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"total\": 1.25"), std::string::npos) << r.out;

  std::string bad = trajectory_csv({s});
  bad.replace(bad.find(",vy,"), 4, ",vw,");
  const auto e = run({"reward", "--trajectory", write("bad.csv", bad)});
  EXPECT_EQ(e.code, 2);
  EXPECT_NE(e.err.find("vy"), std::string::npos) << e.err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"fk", "--archetype", "nope"}).code, 2);
  EXPECT_EQ(run({"fk", "--model", path("missing.urdf"), "--q", "0"}).code, 2);
}
