#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "okg/grid.hh"
#include "okg/io.hh"
#include "okg/norms.hh"

using namespace okg;
namespace fs = std::filesystem;
using cplx = std::complex<double>;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("okg_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

Spectrum random_dense(const GridSpec& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Spectrum F = make_spectrum(g);
  for (std::int64_t i = 0; i < g.size(); ++i) F.coeffs[i] = cplx(gauss(rng), gauss(rng));
  return F;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs a command line, returns its exit code, captures stdout into out.
int run(const std::string& cmd, std::string* out = nullptr) {
  static int counter = 0;
  const std::string capture =
      (fs::temp_directory_path() / ("okg_cli_out_" + std::to_string(::getpid()) + "_" +
                                    std::to_string(counter++)))
          .string();
  const int status = std::system((cmd + " > " + capture + " 2>&1").c_str());
  if (out) *out = slurp(capture);
  std::remove(capture.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("spectrum files round trip bit for bit") {
  TempDir dir;
  const GridSpec g{2, 32, 5.5};
  const Spectrum F = random_dense(g, 61);
  const std::string path = dir.file("a.okg");
  write_spectrum(path, F);

  const Spectrum back = read_spectrum(path);
  CHECK(back.grid == g);
  REQUIRE(back.coeffs.size() == F.coeffs.size());
  for (std::int64_t i = 0; i < g.size(); ++i) CHECK(back.coeffs[i] == F.coeffs[i]);

  // A spectrum file refuses to open as a physical-domain field.
  CHECK_THROWS_AS(read_field(path), std::runtime_error);
}

TEST_CASE("field files round trip and preserve the domain tag") {
  TempDir dir;
  const GridSpec g{1, 128, 2 * pi};
  Field f = make_field(g);
  for (int i = 0; i < g.n; ++i) f.samples[i] = cplx(std::sin(0.1 * i), std::cos(0.2 * i));
  const std::string path = dir.file("f.okg");
  write_field(path, f);

  const Field back = read_field(path);
  CHECK(back.grid == g);
  for (int i = 0; i < g.n; ++i) CHECK(back.samples[i] == f.samples[i]);
  CHECK_THROWS_AS(read_spectrum(path), std::runtime_error);
}

TEST_CASE("corrupt containers are rejected with a reason") {
  TempDir dir;
  const std::string bad = dir.file("junk.okg");
  atomic_write(bad, "OKGX not really a container");
  CHECK_THROWS_AS(read_spectrum(bad), std::runtime_error);

  // Truncation after the header is caught too.
  const GridSpec g{1, 64, 2 * pi};
  write_spectrum(dir.file("ok.okg"), random_dense(g, 62));
  const std::string whole = slurp(dir.file("ok.okg"));
  atomic_write(bad, std::string_view(whole).substr(0, whole.size() / 2));
  CHECK_THROWS_AS(read_spectrum(bad), std::runtime_error);
}

TEST_CASE("time series files round trip") {
  TempDir dir;
  const GridSpec g{1, 64, 2 * pi};
  TimeSeriesField u;
  u.grid = g;
  u.time = uniform_time_grid(0, 2, 8);
  for (std::size_t i = 0; i < u.time.times.size(); ++i)
    u.snapshots.push_back(random_dense(g, 70 + i));

  const std::string path = dir.file("run.okgs");
  write_series(path, u);
  const TimeSeriesField back = read_series(path);

  CHECK(back.grid == g);
  REQUIRE(back.time.times.size() == u.time.times.size());
  REQUIRE(back.snapshots.size() == u.snapshots.size());
  for (std::size_t i = 0; i < u.time.times.size(); ++i) {
    CHECK(back.time.times[i] == u.time.times[i]);
    for (std::int64_t m = 0; m < g.size(); ++m)
      CHECK(back.snapshots[i].coeffs[m] == u.snapshots[i].coeffs[m]);
  }
}

TEST_CASE("config files parse flat key=value lines") {
  TempDir dir;
  const std::string path = dir.file("run.cfg");
  atomic_write(path,
               "# comment line\n"
               "\n"
               "alpha = 2\n"
               "data=file:some=path.okg\n"
               "  spaced   =  value  \n");
  const auto kv = load_config(path);
  REQUIRE(kv.size() == 3);
  CHECK(kv.at("alpha") == "2");
  CHECK(kv.at("data") == "file:some=path.okg");  // split at the first equals only
  CHECK(kv.at("spaced") == "value");

  atomic_write(path, "good = 1\nbad line\n");
  try {
    load_config(path);
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);  // 1-based line number
  }

  CHECK_THROWS_AS(load_config(dir.file("missing.cfg")), std::runtime_error);
}

TEST_CASE("g17 formatting survives a parse round trip bit for bit") {
  for (double x : {1.0 / 3, 0.1, 2 * pi, 1e300, 5e-324, -0.0, 1115664.0625}) {
    const std::string text = format_g17(x);
    // strtod instead of stod: the latter throws on subnormal input.
    const double back = std::strtod(text.c_str(), nullptr);
    CHECK(std::memcmp(&back, &x, sizeof x) == 0);
  }
}

TEST_CASE("atomic writes leave no temporaries behind") {
  TempDir dir;
  const std::string path = dir.file("out.txt");
  atomic_write(path, "payload");
  CHECK(slurp(path) == "payload");
  int entries = 0;
  for (const auto& e : fs::directory_iterator(dir.path)) {
    (void)e;
    ++entries;
  }
  CHECK(entries == 1);

  // Overwrite replaces content wholesale.
  atomic_write(path, "second");
  CHECK(slurp(path) == "second");
}

TEST_CASE("command line interface honors its exit code contract") {
  const char* bin = std::getenv("OKG_CLI_BIN");
  if (!bin) return;  // only meaningful under the test harness
  const std::string cli = bin;
  TempDir dir;

  std::string out;
  CHECK(run(cli + " --help", &out) == 0);
  CHECK(out.find("solve") != std::string::npos);

  CHECK(run(cli + " exponents --no-such-flag", &out) == 2);
  CHECK(run(cli, &out) == 2);  // a verb is required

  CHECK(run(cli + " exponents --d 2 --theta 1 --p 4", &out) == 0);
  CHECK(out.find("delta = 0.25") != std::string::npos);
  CHECK(out.find("gamma = 4") != std::string::npos);
  CHECK(out.find("sigma = 0.5") != std::string::npos);

  // Unknown config keys are usage errors.
  atomic_write(dir.file("bad.cfg"), "not_a_key = 3\n");
  CHECK(run(cli + " exponents --config " + dir.file("bad.cfg"), &out) == 2);

  // Norm pipeline: generate, then measure; a missing input exits 1.
  CHECK(run(cli + " gen-data --d 1 --n 128 --data gaussian --center 5 --width 0.75"
                  " --amplitude 0.01 --out " + dir.file("u0.okg"), &out) == 0);
  CHECK(run(cli + " norm --in " + dir.file("u0.okg") + " --spec 1,-0.5,2,2", &out) == 0);
  CHECK(std::stod(out) > 0);
  CHECK(run(cli + " norm --in " + dir.file("nope.okg"), &out) == 1);

  // Verification pass and failure channels.
  CHECK(run(cli + " verify --suite partition --tier small --report " + dir.file("v.json"),
            &out) == 0);
  CHECK(out.find("PASS") != std::string::npos);
  CHECK(run(cli + " verify --suite no-such-suite --tier small --report " + dir.file("v2.json"),
            &out) == 2);
}

TEST_CASE("reports are byte identical for identical invocations") {
  const char* bin = std::getenv("OKG_CLI_BIN");
  if (!bin) return;
  const std::string cli = bin;
  TempDir dir;

  const std::string report = dir.file("exp.json");
  const std::string cmd =
      cli + " exponents --d 3 --theta 0.5 --p 4 --alpha 2 --report " + report;
  REQUIRE(run(cmd) == 0);
  const std::string first = slurp(report);
  REQUIRE(run(cmd) == 0);
  CHECK(first == slurp(report));
  CHECK(first.find("\"format_version\": 1") != std::string::npos);
  CHECK(first.find("\"config\"") != std::string::npos);
  CHECK(first.find("wall") == std::string::npos);  // no timing in report files
}
