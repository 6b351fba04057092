#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "stlcst/stcf_io.hpp"

using namespace stlcst;
namespace fs = std::filesystem;

namespace {

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::current_path() / "cli_scratch";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string p(const std::string& name) { return (scratch() / name).string(); }

int run(const std::string& args) {
  const std::string cmd = std::string(STLCST_CLI_PATH) + " " + args + " >/dev/null 2>/dev/null";
  const int st = std::system(cmd.c_str());
  REQUIRE(st != -1);
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double rel_err(const std::vector<Multivector>& a, const std::vector<Multivector>& b) {
  REQUIRE(a.size() == b.size());
  double num = 0, den = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (int i = 0; i < kNumBlades; ++i) {
      num += (a[j][i] - b[j][i]) * (a[j][i] - b[j][i]);
      den += b[j][i] * b[j][i];
    }
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("delta generation puts the single record at index zero") {
  REQUIRE(run("gen --dims 4,3,3,3 --spacing 0.5,0.5,0.5,0.5 --kind delta --amp e12:2.5 --out " +
              p("d.stcf")) == 0);
  const auto f = read_signal(p("d.stcf"));
  int nonzero = 0;
  for (const auto& h : f.data) {
    for (int i = 0; i < kNumBlades; ++i) {
      if (h[i] != 0.0) ++nonzero;
    }
  }
  CHECK(nonzero == 1);
  CHECK(f.data.front()[kE12] == 2.5);
}

TEST_CASE("random generation is reproducible byte for byte") {
  const std::string flags = "gen --dims 4,4,4,4 --spacing 0.5,0.5,0.5,0.5 --kind random --seed 5 ";
  REQUIRE(run(flags + "--out " + p("r1.stcf")) == 0);
  REQUIRE(run(flags + "--out " + p("r2.stcf")) == 0);
  CHECK(slurp(p("r1.stcf")) == slurp(p("r2.stcf")));
  REQUIRE(run("gen --dims 4,4,4,4 --spacing 0.5,0.5,0.5,0.5 --kind random --seed 6 --out " +
              p("r3.stcf")) == 0);
  CHECK(slurp(p("r1.stcf")) != slurp(p("r3.stcf")));
}

TEST_CASE("fast path matches direct quadrature through files") {
  REQUIRE(run("gen --dims 6,6,6,6 --spacing 0.6,0.5,0.55,0.45 --kind random --seed 11 --out " +
              p("f.stcf")) == 0);
  REQUIRE(run("transform --kind lcst --params 2,1,1,1 --in " + p("f.stcf") + " --out " +
              p("Ff.stcf")) == 0);
  REQUIRE(run("transform --kind lcst --params 2,1,1,1 --path direct --in " + p("f.stcf") +
              " --out " + p("Fd.stcf")) == 0);
  const auto Ff = read_spectrum(p("Ff.stcf"));
  const auto Fd = read_spectrum(p("Fd.stcf"));
  REQUIRE(Ff.grid == Fd.grid);
  CHECK(rel_err(Ff.data, Fd.data) <= 1e-10);
}

TEST_CASE("transform inverse round trip through files") {
  REQUIRE(run("gen --dims 8,8,8,8 --spacing 0.8,0.75,0.75,0.8 --kind gaussian "
              "--width 0.5,0.5,0.5,0.5 --amp 1:1,e2:0.6 --tfreq 1.3 --sfreq 0.8,0,0.5 --out " +
              p("g.stcf")) == 0);
  REQUIRE(run("transform --kind lcst2 --params 1,0.5,2,2,0,2,-0.5,0 --in " + p("g.stcf") +
              " --out " + p("G.stcf")) == 0);
  REQUIRE(run("transform --kind lcst2 --params 1,0.5,2,2,0,2,-0.5,0 --inverse --in " + p("G.stcf") +
              " --out " + p("gb.stcf")) == 0);
  const auto f = read_signal(p("g.stcf"));
  const auto b = read_signal(p("gb.stcf"));
  REQUIRE(f.grid.n == b.grid.n);
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(f.grid.spacing[k] - b.grid.spacing[k]) <= 1e-12);
  }
  CHECK(rel_err(b.data, f.data) <= 1e-6);
}

TEST_CASE("zero-diagonal parameters reduce to the plain transform") {
  REQUIRE(run("transform --kind sft --path direct --in " + p("g.stcf") + " --out " +
              p("S.stcf")) == 0);
  REQUIRE(run("transform --kind lcst --params 0,1,-1,0 --in " + p("g.stcf") + " --out " +
              p("R.stcf")) == 0);
  const auto S = read_spectrum(p("S.stcf"));
  const auto R = read_spectrum(p("R.stcf"));
  REQUIRE(S.grid == R.grid);
  auto scaled = S.data;
  const double c = std::pow(2.0 * 3.14159265358979323846 * 1.0, -1.5);
  for (auto& h : scaled) h = h * c;
  CHECK(rel_err(scaled, R.data) <= 1e-10);
}

TEST_CASE("mustard convolution agrees with its eight-term layout through files") {
  REQUIRE(run("gen --dims 4,4,4,4 --spacing 0.5,0.45,0.55,0.6 --kind random --seed 21 --out " +
              p("a.stcf")) == 0);
  REQUIRE(run("gen --dims 4,4,4,4 --spacing 0.5,0.45,0.55,0.6 --kind random --seed 22 --out " +
              p("b.stcf")) == 0);
  REQUIRE(run("convolve --kind mustard --a " + p("a.stcf") + " --b " + p("b.stcf") + " --out " +
              p("m1.stcf")) == 0);
  REQUIRE(run("convolve --kind mustard --method eight --a " + p("a.stcf") + " --b " + p("b.stcf") +
              " --out " + p("m2.stcf")) == 0);
  const auto m1 = read_signal(p("m1.stcf"));
  const auto m2 = read_signal(p("m2.stcf"));
  CHECK(rel_err(m2.data, m1.data) <= 1e-8);
}

TEST_CASE("exit codes follow the contract") {
  CHECK(run("transform --kind lcst --params 1,0,0,1 --in " + p("g.stcf") + " --out " +
            p("x.stcf")) == 2);
  CHECK(run("transform --kind lcst --params 2,1,1,1.001 --in " + p("g.stcf") + " --out " +
            p("x.stcf")) == 2);
  CHECK(run("export --in " + p("no_such_file.stcf") + " --out " + p("x.csv")) == 3);
  CHECK(run("nonsense") == 2);
  CHECK(run("gen --dims 4,4,4,4 --kind random --out " + p("x.stcf")) == 2);
  CHECK(run("convolve --kind starn --method direct --params 0,1.5,-0.66666666666666663,0,0,2,-0.5,0"
            " --a " + p("f.stcf") + " --b " + p("f.stcf") + " --out " + p("x.stcf")) == 2);
  CHECK(run("--help") == 0);
}

TEST_CASE("export slices pin axes and count rows") {
  REQUIRE(run("export --in " + p("g.stcf") + " --out " + p("s.csv") + " --slice t=0,x3=0") == 0);
  const std::string csv = slurp(p("s.csv"));
  std::size_t rows = 0;
  for (char ch : csv) rows += ch == '\n';
  CHECK(rows == 64 + 1);
  CHECK(run("export --in " + p("g.stcf") + " --out " + p("s2.csv") + " --slice t=9") == 2);
}

TEST_CASE("csv export round-trips every double exactly") {
  REQUIRE(run("gen --dims 3,3,3,3 --spacing 0.7,0.6,0.5,0.8 --kind random --seed 31 --out " +
              p("c.stcf")) == 0);
  REQUIRE(run("export --in " + p("c.stcf") + " --out " + p("c.csv")) == 0);
  const auto f = read_signal(p("c.stcf"));
  std::ifstream in(p("c.csv"));
  std::string line;
  REQUIRE(std::getline(in, line));
  std::size_t row = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string cell;
    for (int k = 0; k < 4; ++k) REQUIRE(std::getline(ls, cell, ','));
    for (int i = 0; i < kNumBlades; ++i) {
      REQUIRE(std::getline(ls, cell, ','));
      CHECK(std::stod(cell) == f.data[row][i]);
    }
    ++row;
  }
  CHECK(row == f.data.size());
}

TEST_CASE("verify subcommand writes the json report and exits clean") {
  REQUIRE(run("verify --suite algebra --report " + p("v.json")) == 0);
  const std::string text = slurp(p("v.json"));
  CHECK(text.find("\"all_ok\": true") != std::string::npos);
  CHECK(text.find("\"failed_hard\": 0") != std::string::npos);
  CHECK(run("verify --suite nonsense --report " + p("v2.json")) == 2);
}

TEST_CASE("bench emits the csv table with the deviation column") {
  REQUIRE(run("bench --kind lcst --dims-sweep 4,6 --repeat 1 --out " + p("bench.csv")) == 0);
  std::ifstream in(p("bench.csv"));
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header == "kind,n,direct_seconds,fast_seconds,speedup,max_rel_deviation");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kind, n, td, tf, sp, dev;
    REQUIRE(std::getline(ls, kind, ','));
    REQUIRE(std::getline(ls, n, ','));
    REQUIRE(std::getline(ls, td, ','));
    REQUIRE(std::getline(ls, tf, ','));
    REQUIRE(std::getline(ls, sp, ','));
    REQUIRE(std::getline(ls, dev, ','));
    CHECK(std::stod(dev) <= 1e-10);
    ++rows;
  }
  CHECK(rows == 2);
}
