#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "snnlab/checkpoint.h"
#include "snnlab/config.h"
#include "snnlab/csv.h"
#include "snnlab/dataset.h"
#include "snnlab/error.h"
#include "snnlab/experiment.h"
#include "snnlab/idx.h"

namespace snnlab {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("snnlab-io-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

void WriteBytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1 x 2 x 2 image file holding {0, 128, 255, 64}.
std::vector<std::uint8_t> TinyImages() {
  return {0, 0, 8, 3, 0, 0, 0, 1, 0, 0, 0, 2, 0, 0, 0, 2, 0, 128, 255, 64};
}

TEST(IdxTest, ScalesBytes) {
  TempDir dir;
  WriteBytes(dir / "img.idx", TinyImages());
  const Dataset d = LoadIdx(dir / "img.idx");
  EXPECT_EQ(d.size(), 1u);
  EXPECT_EQ(d.height, 2);
  EXPECT_EQ(d.width, 2);
  ASSERT_EQ(d.images.size(), 4u);
  EXPECT_EQ(d.images[0], 0.0);
  EXPECT_NEAR(d.images[1], 0.50196, 1e-5);
  EXPECT_EQ(d.images[2], 1.0);
  EXPECT_NEAR(d.images[3], 0.25098, 1e-5);
}

TEST(IdxTest, BadMagicAndTruncation) {
  auto bad = TinyImages();
  bad[0] = 1;
  EXPECT_THROW(ParseIdx(bad), FormatError);
  bad = TinyImages();
  bad[2] = 0x0d;  // float payloads are not supported
  EXPECT_THROW(ParseIdx(bad), FormatError);
  auto cut = TinyImages();
  cut.pop_back();
  try {
    ParseIdx(cut);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find('4'), std::string::npos) << e.what();
  }
  EXPECT_THROW(ParseIdx(std::vector<std::uint8_t>{0, 0}), FormatError);
}

TEST(IdxTest, MissingFileIsIoError) {
  EXPECT_THROW(LoadIdx("/nonexistent/snnlab.idx"), IoError);
}

TEST(IdxTest, LoadsDigits) {
  const std::string dir = std::string(SNNLAB_TEST_DATA_DIR) + "/digits/";
  const Dataset d = LoadIdxDataset(dir + "digits-test-images.idx", dir + "digits-test-labels.idx");
  EXPECT_EQ(d.size(), 597u);
  EXPECT_EQ(d.height, 8);
  EXPECT_EQ(d.num_classes, 10);
  EXPECT_NO_THROW(d.Validate());
  EXPECT_THROW(LoadIdxDataset(dir + "digits-test-images.idx", dir + "digits-train-labels.idx"),
               FormatError);
}

TEST(CsvTest, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.0, 5e-324}) {
    EXPECT_EQ(std::strtod(FormatDouble(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(FormatDouble(-0.0), "0");
  EXPECT_EQ(FormatDouble(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(FormatDouble(std::numeric_limits<double>::infinity()), "inf");
}

TEST(CsvTest, QuotingRoundTrip) {
  TempDir dir;
  const std::vector<std::string> tricky = {"plain", "a,b", "say \"hi\"", "two\nlines", ""};
  {
    CsvWriter w(dir / "t.csv", {"x", "y", "z", "w", "v"});
    w.Write(tricky);
    (w.NewRow() << 1 << 2.5 << "c" << 7UL << -3L).End();
    EXPECT_THROW(w.Write({"only one"}), DimensionError);
    w.Close();
  }
  const auto rows = ParseCsv(ReadText(dir / "t.csv"));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1], tricky);
  EXPECT_EQ(rows[2], (std::vector<std::string>{"1", "2.5", "c", "7", "-3"}));
  EXPECT_THROW(ParseCsv("a,\"open\n"), FormatError);
}

TEST(ConfigTest, SerializeRoundTrip) {
  ExperimentConfig c;
  c.seeds = {4, 9};
  c.architecture = "8x8-4C3-2P-10FC-3o";
  c.tau_m = {kInfiniteTau, 12.5};
  c.train.epochs = 3;
  c.train.lr_decay_epochs = {};
  c.data.synth.pixel_noise = 0.3;
  c.eval.severities = {0, 8};
  c.eval.kinds = {NoiseKind::kImpulse};
  c.coherence.mu = {0.8, 1.5};
  c.coherence.D = {0.1, 0.2};
  const ExperimentConfig back = ExperimentConfig::Parse(c.Serialize());
  EXPECT_EQ(back, c);
  EXPECT_EQ(back.ModelFingerprint(), c.ModelFingerprint());
  ExperimentConfig other = c;
  other.train.learning_rate *= 2;
  EXPECT_NE(other.ModelFingerprint(), c.ModelFingerprint());
  other = c;
  other.eval.severities = {3};
  EXPECT_EQ(other.ModelFingerprint(), c.ModelFingerprint());
}

TEST(ConfigTest, ParsesRangesAndComments) {
  const auto c = ExperimentConfig::Parse(
      "# comment\n[RUN]\nseeds = 1, 2\n; other\n[neuron]\ntau_m = inf, 30\n"
      "[eval]\nseverities = 0-3\n");
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{1, 2}));
  EXPECT_TRUE(std::isinf(c.tau_m[0]));
  EXPECT_EQ(c.eval.severities, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(ModelTag(kInfiniteTau), "if");
  EXPECT_EQ(ModelTag(30.0), "lif30");
}

TEST(ConfigTest, RejectsBadInput) {
  EXPECT_THROW(ExperimentConfig::Parse("[run]\nseedz = 1\n"), ConfigError);
  EXPECT_THROW(ExperimentConfig::Parse("[bogus]\n"), ConfigError);
  EXPECT_THROW(ExperimentConfig::Parse("[run]\nseeds = 1\nseeds = 2\n"), ConfigError);
  EXPECT_THROW(ExperimentConfig::Parse("[train]\nepochs = many\n"), ConfigError);
  EXPECT_THROW(ExperimentConfig::Parse("[eval]\nseverities = 9\n"), std::exception);
  EXPECT_THROW(ExperimentConfig::Load("/nonexistent/x.ini"), IoError);
}

TEST(CheckpointTest, RoundTripIsExact) {
  NeuronConfig n = NeuronConfig::Leaky(30.0);
  n.v_th = 0.9;
  const Network net = BuildNetwork(ParseArchitecture("8x8-3C3-2P-12FC-4o"), n, 3);
  const auto bytes = SerializeCheckpoint(net);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 8), "SNNLABCK");
  EXPECT_EQ(bytes[8], kCheckpointVersion);
  EXPECT_EQ(DeserializeCheckpoint(bytes), net);

  TempDir dir;
  SaveCheckpoint(dir / "m.ckpt", net);
  EXPECT_EQ(LoadCheckpoint(dir / "m.ckpt"), net);
  const Network inf_net =
      BuildNetwork(ParseArchitecture("4x4-2o"), NeuronConfig::IntegrateAndFire(), 1);
  EXPECT_EQ(DeserializeCheckpoint(SerializeCheckpoint(inf_net)), inf_net);
}

TEST(CheckpointTest, CorruptionIsDetected) {
  const Network net = BuildNetwork(ParseArchitecture("4x4-2C3-3o"), NeuronConfig{}, 3);
  const auto good = SerializeCheckpoint(net);
  auto bad = good;
  bad[0] = 'X';
  EXPECT_THROW(DeserializeCheckpoint(bad), FormatError);
  bad = good;
  bad[8] = 99;
  EXPECT_THROW(DeserializeCheckpoint(bad), FormatError);
  bad = good;
  bad.resize(good.size() - 3);
  EXPECT_THROW(DeserializeCheckpoint(bad), FormatError);
  bad = good;
  bad.push_back(0);
  EXPECT_THROW(DeserializeCheckpoint(bad), FormatError);
  EXPECT_THROW(LoadCheckpoint("/nonexistent/m.ckpt"), IoError);
}

TEST(SynthDatasetTest, DeterministicAndBalanced) {
  for (auto kind : {SynthKind::kBars, SynthKind::kTwoGaussians}) {
    const Dataset a = SynthDataset(kind, 50, 7);
    EXPECT_EQ(a, SynthDataset(kind, 50, 7));
    EXPECT_NE(a.images, SynthDataset(kind, 50, 8).images);
    int ones = 0;
    for (int l : a.labels) ones += l;
    EXPECT_EQ(ones, 25);
    for (double v : a.images) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(OutputDirTest, Precedence) {
  ExperimentConfig c;
  c.base_dir = "/cfg";
  ::setenv(kOutputDirEnv, "/env", 1);
  EXPECT_EQ(ResolveOutputDir("/cli", c), "/cli");
  EXPECT_EQ(ResolveOutputDir("", c), "/env");
  c.output_dir = "rel";
  EXPECT_EQ(ResolveOutputDir("", c), "/cfg/rel");
  c.output_dir.clear();
  ::unsetenv(kOutputDirEnv);
  EXPECT_EQ(ResolveOutputDir("", c), kDefaultOutputDir);
}

TEST(CommandTest, ParseAndExitCodes) {
  EXPECT_EQ(ParseCommand("coherence-table"), Command::kCoherenceTable);
  EXPECT_EQ(ToString(Command::kEvaluateNoise), "evaluate-noise");
  EXPECT_THROW(ParseCommand("fly"), std::exception);
  EXPECT_EQ(ExitCodeFor(ConfigError("x")), kExitConfig);
  EXPECT_EQ(ExitCodeFor(FormatError("x")), kExitFormat);
  EXPECT_EQ(ExitCodeFor(std::runtime_error("x")), kExitUnexpected);
}

ExperimentConfig TinyConfig() {
  return ExperimentConfig::Parse(
      "[run]\nseeds = 1\nthreads = 1\n"
      "[model]\narchitecture = 8x8-2C3-2P-8FC-2o\n"
      "[neuron]\ntau_m = inf, 30\n"
      "[train]\nepochs = 1\nbatch_size = 8\nlearning_rate = 0.5\nlr_decay_epochs =\nsteps = 8\n"
      "[data]\ntrain_size = 16\ntest_size = 16\nheight = 8\nwidth = 8\n"
      "[eval]\nkinds = gaussian\nseverities = 0, 4\nhistogram_bins = 5\n"
      "[coherence]\nanalytic_points = 10\nmc_duration = 2000\nmc_segment = 50\n");
}

std::size_t DataRows(const std::string& path) {
  const auto rows = ParseCsv(ReadText(path));
  return rows.empty() ? 0 : rows.size() - 1;
}

TEST(RunCommandTest, WritesExpectedTables) {
  TempDir dir;
  const ExperimentConfig c = TinyConfig();
  const std::string out = dir.path().string();

  const auto train_files = RunCommand(Command::kTrain, c, out);
  EXPECT_EQ(DataRows(out + "/train_log.csv"), 2u);  // 2 models x 1 seed x 1 epoch
  EXPECT_EQ(ExperimentConfig::Load(out + "/config.ini"), c);

  RunCommand(Command::kEvaluateNoise, c, out);
  EXPECT_EQ(DataRows(out + "/noise_sweep.csv"), 2u * 2u * 2u);  // models x scenarios x severities

  RunCommand(Command::kCoherenceTable, c, out);
  EXPECT_EQ(DataRows(out + "/coherence_analytic.csv"), 10u);
  // omega_k = 2 pi k / 50 inside [0.1, 5]: k = 1..39, for the leaky and the IF model.
  EXPECT_EQ(DataRows(out + "/coherence_table.csv"), 2u * 39u);

  RunCommand(Command::kSpectrum, c, out);
  EXPECT_GT(DataRows(out + "/input_spectrum.csv"), 0u);
  EXPECT_GT(DataRows(out + "/critical_freq_hist.csv"), 0u);

  RunCommand(Command::kReport, c, out);
  EXPECT_EQ(DataRows(out + "/report.csv"), 2u * 2u);  // per-seed row + mean, per model
  EXPECT_TRUE(fs::exists(out + "/report.txt"));
}

}  // namespace
}  // namespace snnlab
