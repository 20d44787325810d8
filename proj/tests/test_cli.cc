// tests/test_cli.cc

// Copyright 2026  MVFE Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Drives the installed binary (path in MVFE_BIN) through a shell, the
// way a user would; library-level behavior is covered elsewhere.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mvfe/base/feature_matrix.h"
#include "mvfe/util/wav.h"
#include "mvfe/view/archive.h"

using namespace mvfe;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path WorkDir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("mvfe_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string Slurp(const fs::path &path) {
  std::ifstream is(path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

RunResult Run(const std::string &args) {
  const char *bin = std::getenv("MVFE_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "MVFE_BIN must point at the mvfe binary");
  fs::path out = WorkDir() / "stdout.txt";
  fs::path err = WorkDir() / "stderr.txt";
  std::string cmd = std::string("'") + bin + "' " + args + " > '" +
                    out.string() + "' 2> '" + err.string() + "'";
  int status = std::system(cmd.c_str());
  RunResult result;
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = Slurp(out);
  result.err = Slurp(err);
  return result;
}

fs::path WriteToneWav(const std::string &name, double freq_hz,
                      double seconds = 1.0) {
  int32 n = static_cast<int32>(seconds * 8000);
  Waveform wave;
  wave.sample_rate = 8000;
  wave.samples.resize(n);
  for (int32 i = 0; i < n; i++)
    wave.samples[i] = 0.4 * std::sin(2.0 * M_PI * freq_hz * i / 8000.0);
  fs::path path = WorkDir() / name;
  WriteWav(path.string(), wave);
  return path;
}

void WriteText(const fs::path &path, const std::string &text) {
  std::ofstream os(path);
  os << text;
}

}  // namespace

TEST_CASE("no subcommand and unknown flags are usage errors") {
  RunResult r = Run("");
  CHECK(r.code == 1);

  r = Run("--bogus");
  CHECK(r.code == 1);
  CHECK(r.err.find("bogus") != std::string::npos);

  r = Run("mfb --bogus");
  CHECK(r.code == 1);
  CHECK(r.err.find("bogus") != std::string::npos);

  r = Run("--help");
  CHECK(r.code == 0);
  CHECK(r.out.find("mfb") != std::string::npos);
}

TEST_CASE("mfb on one second of audio yields a 98 x 40 archive") {
  fs::path wav = WriteToneWav("one_second.wav", 440.0);
  fs::path out = WorkDir() / "f.mvf";
  RunResult r = Run("mfb --in '" + wav.string() + "' --out '" +
                    out.string() + "'");
  REQUIRE_MESSAGE(r.code == 0, r.err);
  FeatureArchive archive = FeatureArchive::Read(out.string());
  REQUIRE(archive.NumUtts() == 1);
  CHECK(archive.Utt(0).utt_id == "one_second");
  CHECK(archive.Utt(0).rows == 98);
  CHECK(archive.Utt(0).cols == 40);
}

TEST_CASE("missing input file exits 2 and names it") {
  fs::path out = WorkDir() / "never.mvf";
  RunResult r = Run("mfb --in '/no/such/file.wav' --out '" + out.string() +
                    "'");
  CHECK(r.code == 2);
  CHECK(r.err.find("file.wav") != std::string::npos);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("scoring a file against itself gives zero WER") {
  fs::path ref = WorkDir() / "ref.txt";
  WriteText(ref, "u1 the cat sat\nu2 on the mat\n");
  RunResult r = Run("score --hyp '" + ref.string() + "' --ref '" +
                    ref.string() + "'");
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(r.out.find("TOTAL\t0\t0\t0\t6\t0.000000") != std::string::npos);
}

TEST_CASE("score detects a missing hypothesis utterance") {
  fs::path ref = WorkDir() / "ref2.txt";
  fs::path hyp = WorkDir() / "hyp2.txt";
  WriteText(ref, "u1 a\nu2 b\n");
  WriteText(hyp, "u1 a\n");
  RunResult r = Run("score --hyp '" + hyp.string() + "' --ref '" +
                    ref.string() + "'");
  CHECK(r.code == 2);
  CHECK(r.err.find("no hypothesis for utt 'u2'") != std::string::npos);
}

TEST_CASE("rover plus score round trip on a majority fixture") {
  fs::path s1 = WorkDir() / "s1.txt";
  fs::path s2 = WorkDir() / "s2.txt";
  fs::path s3 = WorkDir() / "s3.txt";
  WriteText(s1, "u1 1 -10.0 a b c\n");
  WriteText(s2, "u1 1 -10.0 a x c\n");
  WriteText(s3, "u1 1 -10.0 a b c\n");
  fs::path combined = WorkDir() / "rover_out.txt";
  RunResult r = Run("rover --nbest '" + s1.string() + "' --nbest '" +
                    s2.string() + "' --nbest '" + s3.string() + "' --out '" +
                    combined.string() + "'");
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(Slurp(combined) == "u1 a b c\n");

  fs::path ref = WorkDir() / "rover_ref.txt";
  WriteText(ref, "u1 a b c\n");
  r = Run("score --hyp '" + combined.string() + "' --ref '" + ref.string() +
          "'");
  CHECK(r.code == 0);
  CHECK(r.out.find("0.000000") != std::string::npos);
}

TEST_CASE("config dump is a fixed point and unknown keys are rejected") {
  fs::path c1 = WorkDir() / "c1.conf";
  fs::path c2 = WorkDir() / "c2.conf";
  RunResult r = Run("config-dump --out '" + c1.string() + "'");
  REQUIRE_MESSAGE(r.code == 0, r.err);
  r = Run("config-dump --config '" + c1.string() + "' --out '" + c2.string() +
          "'");
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(Slurp(c1) == Slurp(c2));
  CHECK(!Slurp(c1).empty());

  fs::path bad = WorkDir() / "bad.conf";
  WriteText(bad, "definitely.not.a.key = 3\n");
  r = Run("config-dump --config '" + bad.string() + "'");
  CHECK(r.code == 2);
  CHECK(r.err.find("definitely.not.a.key") != std::string::npos);
}

TEST_CASE("gmm training is reproducible under a fixed seed") {
  fs::path wav = WriteToneWav("seed_tone.wav", 700.0);
  fs::path feats = WorkDir() / "seed_feats.mvf";
  REQUIRE(Run("mfb --in '" + wav.string() + "' --out '" + feats.string() +
              "'").code == 0);
  fs::path m1 = WorkDir() / "m1.gmm";
  fs::path m2 = WorkDir() / "m2.gmm";
  std::string train = "gmm-train --feats '" + feats.string() +
                      "' --comps 2 --iters 3 --seed 7 --out '";
  REQUIRE(Run(train + m1.string() + "'").code == 0);
  REQUIRE(Run(train + m2.string() + "'").code == 0);
  CHECK(Slurp(m1) == Slurp(m2));
  CHECK(!Slurp(m1).empty());
}

TEST_CASE("non-finite training data exits 3 without partial output") {
  // Archives accept NaN cells (model files do not); training must fail
  // with a numeric error once the loss turns non-finite.
  FeatureMatrix feats(24, 720, 10.0, "u");
  for (double &v : feats.data) v = std::nan("");
  FeatureMatrix labels(24, 1, 10.0, "u");
  for (int32 t = 0; t < 24; t++) labels.At(t, 0) = t % 10;
  fs::path fpath = WorkDir() / "nan_feats.mvf";
  fs::path lpath = WorkDir() / "nan_labels.mvf";
  {
    FeatureArchive a;
    a.Add(feats);
    a.Write(fpath.string());
    FeatureArchive l;
    l.Add(labels);
    l.Write(lpath.string());
  }
  fs::path net = WorkDir() / "nan_net.mvn";
  RunResult r = Run("net-train --train-feats '" + fpath.string() +
                    "' --train-labels '" + lpath.string() + "' --cv-feats '" +
                    fpath.string() + "' --cv-labels '" + lpath.string() +
                    "' --epochs 1 --out '" + net.string() + "'");
  CHECK(r.code == 3);
  CHECK(r.err.find("non-finite") != std::string::npos);
  CHECK_FALSE(fs::exists(net));
}

TEST_CASE("failed commands leave no output file behind") {
  // Two archives that cannot be concatenated: frame counts differ.
  fs::path a1 = WorkDir() / "cat_a.mvf";
  fs::path a2 = WorkDir() / "cat_b.mvf";
  {
    FeatureArchive a;
    a.Add(FeatureMatrix(10, 4, 10.0, "u"));
    a.Write(a1.string());
    FeatureArchive b;
    b.Add(FeatureMatrix(9, 4, 10.0, "u"));
    b.Write(a2.string());
  }
  fs::path out = WorkDir() / "cat_out.mvf";
  RunResult r = Run("concat --in '" + a1.string() + "' --in '" + a2.string() +
                    "' --out '" + out.string() + "'");
  CHECK(r.code == 2);
  CHECK(r.err.find("frame count mismatch") != std::string::npos);
  CHECK_FALSE(fs::exists(out));

  // No stray temporaries either.
  for (const auto &entry : fs::directory_iterator(WorkDir()))
    CHECK(entry.path().string().find(".tmp") == std::string::npos);
}

TEST_CASE("splice widens a spliced archive to the documented width") {
  fs::path wav = WriteToneWav("splice_tone.wav", 300.0);
  fs::path feats = WorkDir() / "splice_feats.mvf";
  REQUIRE(Run("mfb --in '" + wav.string() + "' --out '" + feats.string() +
              "'").code == 0);
  fs::path wide = WorkDir() / "splice_wide.mvf";
  RunResult r = Run("splice --in '" + feats.string() + "' --out '" +
                    wide.string() + "'");
  REQUIRE_MESSAGE(r.code == 0, r.err);
  FeatureArchive archive = FeatureArchive::Read(wide.string());
  CHECK(archive.Dim() == 600);  // 40 * (7 + 1 + 7)
  CHECK(archive.Utt(0).rows == 98);
}
