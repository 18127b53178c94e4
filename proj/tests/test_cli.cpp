#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "dctsteg/cli.hpp"
#include "dctsteg/config_file.hpp"
#include "dctsteg/ingest.hpp"

using namespace dctsteg;
namespace fs = std::filesystem;

namespace {

const std::string kCorpus = DCTSTEG_DATA_DIR "/synthetic_corpus.csv";

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dctsteg-cli-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dctsteg");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("embed then extract through the CLI") {
  TempDir dir;
  write_text(dir.file("key"), "cli-shared-key-0123456789abcdef-0123456789abcdef");
  write_text(dir.file("wrong"), "cli-shared-key-0123456789abcdef-0123456789abcdeF");
  write_text(dir.file("secret.bin"), "ID=STN-042;lat=51.5072;lon=-0.1276");

  const Run embedded = run({"embed", "--input", kCorpus, "--column", "environmental", "--window", "512",
                            "--key-file", dir.file("key"), "--payload", dir.file("secret.bin"), "--out",
                            dir.file("stego")});
  REQUIRE(embedded.code == 0);
  CHECK(embedded.out.find("synthetic_corpus:3585") != std::string::npos);
  CHECK(read_text(dir.file("stego/embed_report.csv")).rfind("# dctsteg report v1 embed\n", 0) == 0);
  const std::string stego_csv = dir.file("stego/stego.csv");
  CHECK(read_text(stego_csv).rfind("environmental\n", 0) == 0);
  CHECK(read_column(stego_csv, "environmental").size() == 4096);

  const Run extracted = run({"extract", "--input", stego_csv, "--column", "environmental", "--window", "512",
                             "--key-file", dir.file("key"), "--payload", dir.file("recovered.bin"), "--out",
                             dir.file("restored"), "--original", kCorpus});
  REQUIRE(extracted.code == 0);
  CHECK(read_text(dir.file("recovered.bin")) == read_text(dir.file("secret.bin")));
  CHECK(extracted.out.find("prd_recovered_percent") != std::string::npos);

  // only the reports and the recovered stream land in the output directory
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir.file("restored"))) {
    names.push_back(entry.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"extract_report.csv", "recovered.csv"});

  const Run wrong = run({"extract", "--input", stego_csv, "--column", "environmental", "--window", "512",
                         "--key-file", dir.file("wrong"), "--payload", dir.file("never.bin"), "--out",
                         dir.file("wrong-out")});
  CHECK(wrong.code == 5);
  CHECK(wrong.err == "authentication failed\n");
  CHECK(!fs::exists(dir.file("never.bin")));
}

TEST_CASE("key from the environment and reproducible nonces") {
  TempDir dir;
  setenv("DCTSTEG_TEST_KEY", "environment-key-0123456789abcdef", 1);
  write_text(dir.file("p.bin"), "payload");
  auto embed_to = [&](const std::string& out) {
    return run({"embed", "--input", kCorpus, "--column", "chemical", "--window", "1024", "--key-env",
                "DCTSTEG_TEST_KEY", "--payload", dir.file("p.bin"), "--out", dir.file(out), "--nonce-seed",
                "00ff10"});
  };
  REQUIRE(embed_to("a").code == 0);
  REQUIRE(embed_to("b").code == 0);
  CHECK(read_text(dir.file("a/stego.csv")) == read_text(dir.file("b/stego.csv")));

  const Run out = run({"extract", "--input", dir.file("a/stego.csv"), "--column", "chemical", "--window",
                       "1024", "--key-env", "DCTSTEG_TEST_KEY", "--payload", dir.file("back.bin"), "--out",
                       dir.file("x")});
  CHECK(out.code == 0);
  CHECK(read_text(dir.file("back.bin")) == "payload");

  CHECK(run({"embed", "--input", kCorpus, "--key-env", "DCTSTEG_NOT_SET_ANYWHERE", "--payload",
             dir.file("p.bin"), "--out", dir.file("c")})
            .code == 2);
}

TEST_CASE("keyinfo") {
  const Run r = run({"keyinfo", "--key-length", "64", "--symbols", "us-ascii"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("448.00") != std::string::npos);
  CHECK(r.out.find("7.2e+134") != std::string::npos);

  const Run r128 = run({"keyinfo", "--key-length", "128", "--symbols", "us-ascii", "--format", "csv-columns"});
  CHECK(r128.out.find("# dctsteg report v1 keyinfo") == 0);
  CHECK(r128.out.find("896.00,5.2e+269") != std::string::npos);

  const Run unbounded = run({"keyinfo", "--key-length", "256", "--symbols", "us-ascii"});
  CHECK(unbounded.out.find("effectively unbounded") != std::string::npos);

  CHECK(run({"keyinfo", "--key-length", "64", "--symbols", "klingon"}).code == 2);
}

TEST_CASE("capacity") {
  const Run r = run({"capacity", "--length", "8192", "--protected", "50", "--bits", "9", "--format",
                     "csv-columns"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("8192,512,16,50,9,73278,9159,9122") != std::string::npos);

  const Run defaults = run({"capacity", "--length", "512", "--format", "csv-columns"});
  CHECK(defaults.out.find("512,32,16,103,10,4090,511,474") != std::string::npos);
  CHECK(run({"capacity", "--length", "512", "--bits", "0"}).code == 2);
}

TEST_CASE("analyze, bench, calibrate-phi") {
  TempDir dir;
  write_text(dir.file("key"), "analyze-key-0123456789abcdef");
  const Run a = run({"analyze", "--input", kCorpus, "--column", "smart_home", "--window", "512", "--key-file",
                     dir.file("key"), "--format", "csv-columns", "--out", dir.file("an")});
  REQUIRE(a.code == 0);
  const std::string sweep = read_text(dir.file("an/distortion_sweep.csv"));
  CHECK(std::count(sweep.begin(), sweep.end(), '\n') == 12);
  CHECK(a.out.find("# dctsteg report v1 compaction_profile") != std::string::npos);

  const Run b = run({"bench", "--lengths", "256,1024", "--trials", "3"});
  CHECK(b.code == 0);
  CHECK(b.out.find("# machine:") == 0);
  CHECK(b.out.find("time(1024)/time(256)") != std::string::npos);
  CHECK(run({"bench", "--trials", "0"}).code == 2);

  const Run c = run({"calibrate-phi", "--input", kCorpus, "--column", "smart_home", "--window", "1024",
                     "--format", "csv-columns"});
  CHECK(c.code == 0);
  CHECK(c.out.find("segments,most_negative_coefficient,suggested_phi\n4,") != std::string::npos);
}

TEST_CASE("exit codes") {
  TempDir dir;
  write_text(dir.file("key"), "exit-code-key-0123456789abcdef");
  write_text(dir.file("big.bin"), std::string(5000, 'x'));
  write_text(dir.file("small.bin"), "x");

  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"embed", "--key", "secret-on-the-command-line"}).code == 2);
  CHECK(run({"embed", "--input", kCorpus, "--payload", dir.file("small.bin"), "--out", dir.file("o")}).code == 2);

  const Run io = run({"embed", "--input", dir.file("missing.csv"), "--key-file", dir.file("key"), "--payload",
                      dir.file("small.bin"), "--out", dir.file("o")});
  CHECK(io.code == 3);
  CHECK(io.err.find("FileNotFound") != std::string::npos);
  CHECK(std::count(io.err.begin(), io.err.end(), '\n') == 1);

  CHECK(run({"embed", "--input", kCorpus, "--column", "nope", "--key-file", dir.file("key"), "--payload",
             dir.file("small.bin"), "--out", dir.file("o")})
            .code == 3);

  CHECK(run({"embed", "--input", kCorpus, "--key-file", dir.file("key"), "--payload", dir.file("big.bin"),
             "--out", dir.file("o")})
            .code == 4);

  CHECK(run({"embed", "--input", kCorpus, "--column", "smart_home", "--phi", "0.001", "--key-file",
             dir.file("key"), "--payload", dir.file("small.bin"), "--out", dir.file("o")})
            .code == 6);

  write_text(dir.file("short"), "too-short");
  CHECK(run({"embed", "--input", kCorpus, "--key-file", dir.file("short"), "--payload", dir.file("small.bin"),
             "--out", dir.file("o")})
            .code == 2);
}

TEST_CASE("shared config file, flags win") {
  TempDir dir;
  write_text(dir.file("shared.conf"), "# both ends\nbits = 6\nprotect_fraction = 0.25\nphi=5000\ntheta = 10000\ncols = 8\nwindow = 256\nstride = 256\n");
  const SharedConfig parsed = load_shared_config(dir.file("shared.conf"));
  CHECK(parsed.embed.bits_per_coeff == 6);
  CHECK(parsed.embed.protect_fraction == 0.25);
  CHECK(parsed.embed.phi == 5000.0);
  CHECK(parsed.embed.matrix_cols == 8);
  CHECK(parsed.window == 256);

  const SharedConfig again = parse_shared_config(format_shared_config(parsed));
  CHECK(again.embed.bits_per_coeff == parsed.embed.bits_per_coeff);
  CHECK(again.embed.protect_fraction == parsed.embed.protect_fraction);
  CHECK(again.window == parsed.window);

  try {
    parse_shared_config("bits = 4\ncolour = blue\n");
    FAIL("expected InvalidConfig");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidConfig);
  }

  const Run from_file = run({"capacity", "--config", dir.file("shared.conf"), "--format", "csv-columns"});
  CHECK(from_file.out.find("256,32,8,64,6,1152,") != std::string::npos);
  const Run overridden =
      run({"capacity", "--config", dir.file("shared.conf"), "--bits", "2", "--format", "csv-columns"});
  CHECK(overridden.out.find("256,32,8,64,2,384,") != std::string::npos);
}
