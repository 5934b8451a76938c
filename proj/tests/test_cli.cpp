#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "srd/cli.hpp"
#include "srd/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = srd::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("srd_cli_" + std::to_string(counter_++))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string prefix(const std::string& name) const { return (path_ / name).string(); }
  std::size_t file_count() const {
    return static_cast<std::size_t>(std::distance(fs::directory_iterator(path_), fs::directory_iterator()));
  }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

const std::string kBundesliga = fixtures::data_path("bundesliga.csv");
const std::string kInput = fixtures::data_path("srd_input.csv");

}  // namespace

TEST_CASE("maxsrd and values") {
  const auto m = cli({"maxsrd", "4"});
  CHECK(m.status == 0);
  CHECK(m.out == "8\n");

  const auto v = cli({"values", kBundesliga, "--reference", "last"});
  CHECK(v.status == 0);
  CHECK(v.out.find("SRD,0.3395062,0.7037037,0.3148148,0.3950617,0.6049383,0.6604938,0.8888889") !=
        std::string::npos);

  const auto raw = cli({"values", kInput, "-r", "synth:mixed:max,min,mean,mean", "--raw"});
  CHECK(raw.out == ",A,B,C\nSRD_raw,4,2,5\n");
  const auto named = cli({"values", kBundesliga, "-r", "Fouls"});
  CHECK(named.status == 0);
  CHECK(named.out.find(",pts") != std::string::npos);
}

TEST_CASE("help documents subcommands") {
  const auto h = cli({"--help"});
  CHECK(h.status == 0);
  for (const char* sub : {"values", "detailed", "rankmatrix", "maxsrd", "tieprob", "preprocess", "reference",
                          "crrn", "crossval", "heatmap"}) {
    CHECK(h.out.find(sub) != std::string::npos);
  }
  const auto c = cli({"crrn", "--help"});
  CHECK(c.status == 0);
  for (const char* flag : {"--option", "--tie-prob", "--samples", "--seed", "--workers", "--exact", "--plot",
                           "--cdf", "--output", "--reference", "--preprocess", "--delimiter"}) {
    CHECK(c.out.find(flag) != std::string::npos);
  }
}

TEST_CASE("usage errors exit 1 without writing files") {
  TempDir dir;
  CHECK(cli({}).status == 1);
  CHECK(cli({"frobnicate"}).status == 1);
  CHECK(cli({"values", kBundesliga, "--bogus"}).status == 1);
  CHECK(cli({"values", kBundesliga, "-d", "."}).status == 1);
  CHECK(cli({"values", kBundesliga, "-p", "log", "-o", dir.prefix("a")}).status == 1);
  CHECK(cli({"crrn", kBundesliga, "--option", "z", "-o", dir.prefix("b")}).status == 1);
  CHECK(cli({"crrn", kBundesliga, "--option", "t", "-o", dir.prefix("c")}).status == 1);
  CHECK(cli({"crrn", kBundesliga, "--tie-prob", "0.2", "-o", dir.prefix("d")}).status == 1);
  CHECK(cli({"crrn", kBundesliga, "--plot"}).status == 1);
  CHECK(cli({"crrn", kBundesliga, "--cdf", "-o", dir.prefix("e")}).status == 1);
  CHECK(cli({"crossval", kBundesliga, "--no-save", "--plot"}).status == 1);
  CHECK(cli({"crossval", kBundesliga, "--test", "sign", "-o", dir.prefix("f")}).status == 1);
  CHECK(cli({"heatmap", kBundesliga, "--palette", "#fff,#000", "-o", dir.prefix("g")}).status == 1);
  CHECK(cli({"reference", kInput, "-m", "mode", "-o", dir.prefix("h")}).status == 1);
  CHECK(cli({"tieprob"}).status == 1);
  CHECK(dir.file_count() == 0);
}

TEST_CASE("data errors exit 2 and name the file") {
  TempDir dir;
  const auto missing = cli({"values", "/no/such/file.csv"});
  CHECK(missing.status == 2);
  CHECK(missing.err.find("/no/such/file.csv") != std::string::npos);
  const auto col = cli({"values", kBundesliga, "-r", "Goals", "-o", dir.prefix("x")});
  CHECK(col.status == 2);
  CHECK(col.err.find("Goals") != std::string::npos);
  CHECK(cli({"reference", kInput, "-m", "mixed:max,min", "-o", dir.prefix("y")}).status == 2);
  CHECK(cli({"values", kBundesliga, "-o", "/no/such/dir/prefix"}).status == 2);
  CHECK(dir.file_count() == 0);
}

TEST_CASE("preprocess, reference, rankmatrix, detailed, tieprob") {
  const auto p = cli({"preprocess", kInput, "-m", "range_scale"});
  CHECK(p.status == 0);
  CHECK(p.out.rfind(";A;B;C\n1;0;", 0) == 0);
  const auto r = cli({"reference", kInput, "-m", "mixed:max,min,mean,mean"});
  CHECK(r.out == ";A;B;C;refCol\n1;2;5;6;6\n2;5;1;3;1\n3;7;6;2;5\n4;8;10;3;7\n");
  const auto rm = cli({"rankmatrix", kInput, "-r", "synth:mixed:max,min,mean,mean"});
  CHECK(rm.out == ",A,B,C\n1,1,2,4\n2,2,1,2.5\n3,3,3,1\n4,4,4,2.5\n");
  const auto d = cli({"detailed", kInput, "-r", "synth:mixed:max,min,mean,mean"});
  CHECK(d.out.find("SRD,-,-,4,-,-,2,-,-,5,-,-\n") != std::string::npos);
  const auto t = cli({"tieprob", kBundesliga, "-c", "pts"});
  CHECK(t.out == "column,tie_probability\npts,0.2352941\n");
  CHECK(cli({"tieprob", "--values", "1,3,3,2"}).out == "column,tie_probability\nvalues,0.3333333\n");
  CHECK(cli({"values", kInput, "--transpose", "-r", "last"}).status == 0);
}

TEST_CASE("crrn writes reproducible reports") {
  TempDir dir;
  const std::vector<std::string> base{"crrn", kBundesliga, "--samples", "50000", "--seed", "9", "--plot"};
  auto a = base;
  a.insert(a.end(), {"-o", dir.prefix("a")});
  auto b = base;
  b.insert(b.end(), {"-o", dir.prefix("b"), "--workers", "3"});
  const auto ra = cli(a);
  const auto rb = cli(b);
  REQUIRE(ra.status == 0);
  REQUIRE(rb.status == 0);
  CHECK(ra.out == rb.out);
  for (const char* suffix : {"_srd_distribution.csv", "_verdicts.csv", "_perm_test.svg", "_perm_test_data.csv"}) {
    const auto fa = srd::read_text_file(dir.prefix("a") + suffix);
    const auto fb = srd::read_text_file(dir.prefix("b") + suffix);
    CHECK(fa == fb);
  }
  CHECK(ra.out.find("Fouls,0.8888889,SignificantDissimilar") != std::string::npos);

  const auto exact = cli({"crrn", kInput, "--exact"});
  CHECK(exact.status == 0);
  CHECK(exact.out.find("exact,true") != std::string::npos);
}

TEST_CASE("crossval saves by default and replays") {
  TempDir dir;
  const auto prefix = dir.prefix("cv");
  const auto first = cli({"crossval", kBundesliga, "--seed", "5", "-o", prefix, "--plot"});
  REQUIRE(first.status == 0);
  CHECK(fs::exists(prefix + "_crossval.csv"));
  CHECK(fs::exists(prefix + "_crossval_folds.csv"));
  CHECK(fs::exists(prefix + "_crossval.svg"));
  const auto again = cli({"crossval", kBundesliga, "--replay", prefix + "_crossval_folds.csv", "--no-save"});
  CHECK(again.status == 0);
  CHECK(again.out == first.out);

  const auto recorded = cli({"crossval", kBundesliga, "--replay",
                             fixtures::data_path("bundesliga_wilcoxon_folds.csv"), "--no-save"});
  CHECK(recorded.out.find("3,1,4,5,6,2,7\n\ntest_statistics\n4,29,36,6,34,36\n") != std::string::npos);
  CHECK(cli({"crossval", kBundesliga, "--replay", prefix + "_crossval_folds.csv", "--seed", "1"}).status == 1);
}

TEST_CASE("heatmap") {
  TempDir dir;
  const auto h = cli({"heatmap", fixtures::data_path("mep_profiles.csv"), "-o", dir.prefix("h")});
  CHECK(h.status == 0);
  CHECK(h.out.find("Botenga,0.0000000") != std::string::npos);
  CHECK(fs::exists(dir.prefix("h") + "_heatmap.svg"));
  CHECK(fs::exists(dir.prefix("h") + "_heatmap.csv"));
  const auto quiet = cli({"heatmap", kBundesliga, "--no-save"});
  CHECK(quiet.status == 0);
}
