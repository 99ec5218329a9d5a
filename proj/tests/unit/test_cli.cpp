#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "elliptic_oam/beams.hpp"

using namespace elliptic_oam;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const cli::CliHooks& hooks = {}) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(args, out, err, hooks);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "elliptic_oam_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

double to_double(const std::string& s) {
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("sha256 and number formatting") {
  CHECK(cli::sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(cli::format_double(0.1) == "0.10000000000000001");
  CHECK(cli::format_double(2.0) == "2");
  CHECK(cli::format_double(-1.5e-20) == "-1.5000000000000001e-20");
}

TEST_CASE("solve-ince") {
  auto r = run({"solve-ince", "-p", "0", "-m", "0", "--parity", "even", "-e", "1.0"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["fourier"] == json::array({1.0}));
  CHECK(doc["eigenvalue"].get<double>() == 0.0);
  json manifest = json::parse(r.err);
  CHECK(manifest["checksum"] == cli::sha256_hex(r.out));
  CHECK(manifest["subcommand"] == "solve-ince");
  CHECK(manifest["tool_version"] == ELLIPTIC_OAM_VERSION);

  r = run({"solve-ince", "-p", "2", "-m", "2", "--parity", "even", "-e", "0.5"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["residual"].get<double>() <= 1e-9);

  CHECK(run({"solve-ince", "-p", "3", "-m", "2", "-e", "1"}).code == 2);
  CHECK(run({"solve-ince", "-p", "3", "-m", "1", "--parity", "diagonal", "-e", "1"}).code == 2);
  CHECK(run({"solve-ince", "-p", "3"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("decompose sorts terms by l descending") {
  const auto r = run({"decompose", "-p", "6", "-m", "2", "--parity", "even", "-e", "2"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  int previous = 1000;
  double sum = 0.0;
  for (const auto& t : doc["terms"]) {
    CHECK(t["l"].get<int>() < previous);
    previous = t["l"].get<int>();
    CHECK(2 * t["n"].get<int>() + previous == 6);
    sum += t["D"].get<double>() * t["D"].get<double>();
  }
  CHECK(doc["sum_sq"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(run({"decompose", "-p", "2", "-m", "0", "--parity", "odd", "-e", "2"}).code == 2);
}

TEST_CASE("oam-curve writes CSV, manifest and sidecar") {
  const fs::path out = scratch() / "curve22.csv";
  auto r = run({"oam-curve", "-p", "2", "-m", "2", "--sign", "plus", "--eps-min", "1e-4",
                "--eps-max", "30", "--steps", "512", "-o", out.string()});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 513);
  CHECK(rows[0] == std::vector<std::string>{"epsilon", "oam"});
  CHECK(to_double(rows[1][1]) == doctest::Approx(2.0).epsilon(1e-3));
  const json manifest = json::parse(slurp(out.string() + ".manifest.json"));
  CHECK(manifest["checksum"] == cli::sha256_hex(slurp(out)));
  CHECK(manifest["parameters"]["steps"] == 512);
  CHECK(fs::exists(out.string() + ".sidecar.json"));
  CHECK(fs::exists(out.string() + ".sidecar.json.manifest.json"));

  r = run({"oam-curve", "-p", "7", "-m", "7", "--eps-min", "0.01", "--eps-max", "30", "--steps",
           "512", "--log-spacing"});
  REQUIRE(r.code == 0);
  const auto c77 = parse_csv(r.out);
  for (std::size_t i = 2; i < c77.size(); ++i) CHECK(to_double(c77[i][1]) < to_double(c77[i - 1][1]));

  const fs::path out75 = scratch() / "curve75.csv";
  r = run({"oam-curve", "-p", "7", "-m", "5", "--eps-min", "0.01", "--eps-max", "30", "--steps",
           "512", "--log-spacing", "--cross", "7", "7", "-o", out75.string()});
  REQUIRE(r.code == 0);
  const json side = json::parse(slurp(out75.string() + ".sidecar.json"));
  REQUIRE(side["crossings"]["epsilon"].size() >= 1);
  CHECK(side["crossings"]["epsilon"][0].get<double>() == doctest::Approx(12.0969).epsilon(1e-4));
  CHECK(side["turning_points"][0]["kind"] == "minimum");

  CHECK(run({"oam-curve", "-p", "2", "-m", "2", "--eps-min", "0"}).code == 2);
  CHECK(run({"oam-curve", "-p", "2", "-m", "0"}).code == 2);
  CHECK(run({"oam-curve", "-p", "3", "-m", "1", "--cross", "3", "0"}).code == 2);
}

TEST_CASE("field csv round-trips through sample_grid bit-exactly") {
  const auto r = run({"field", "-p", "5", "-m", "3", "--kind", "helical_plus", "-e", "2",
                      "--window", "2.5", "--resolution", "32", "--z", "0.3"});
  REQUIRE(r.code == 0);
  BeamGeometry g;
  g.z = 0.3;
  const HigBeam beam(5, 3, Helicity::plus, 2.0, g);
  const BatchField batch = [&](auto x, auto y, auto out) { beam.evaluate(x, y, out); };
  const ComplexField ref = sample_grid(batch, 2.5, 32);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 32 * 32 + 1);
  CHECK(rows[0] == std::vector<std::string>{"x", "y", "re", "im"});
  for (int j = 0; j < 32; ++j) {
    for (int i = 0; i < 32; ++i) {
      const auto& row = rows[static_cast<std::size_t>(j * 32 + i + 1)];
      CHECK(to_double(row[0]) == ref.x(i));
      CHECK(to_double(row[1]) == ref.y(j));
      CHECK(to_double(row[2]) == ref.at(i, j).real());
      CHECK(to_double(row[3]) == ref.at(i, j).imag());
    }
  }
}

TEST_CASE("field center value of the fundamental mode") {
  const auto r = run({"field", "-p", "0", "-m", "0", "--kind", "even", "-e", "1", "--resolution", "16"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  const auto& center = rows[8 * 16 + 8 + 1];
  CHECK(to_double(center[0]) == 0.0);
  CHECK(to_double(center[1]) == 0.0);
  CHECK(to_double(center[2]) == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-14));
  CHECK(to_double(center[3]) == 0.0);
}

TEST_CASE("field output is deterministic and pgm is well formed") {
  const fs::path a = scratch() / "a.pgm";
  const fs::path b = scratch() / "b.pgm";
  for (const auto& path : {a, b}) {
    REQUIRE(run({"field", "-p", "5", "-m", "3", "--kind", "helical_plus", "-e", "2", "--format",
                 "pgm", "--resolution", "64", "-o", path.string()})
                .code == 0);
  }
  const std::string bytes = slurp(a);
  CHECK(bytes == slurp(b));
  CHECK(slurp(a.string() + ".manifest.json") == slurp(b.string() + ".manifest.json"));
  const std::string header = "P5\n64 64\n65535\n";
  REQUIRE(bytes.size() == header.size() + 2 * 64 * 64);
  CHECK(bytes.substr(0, header.size()) == header);

  CHECK(run({"field", "-p", "4", "-m", "0", "--kind", "odd", "-e", "1"}).code == 2);
  CHECK(run({"field", "-p", "4", "-m", "0", "--kind", "helical_minus", "-e", "1"}).code == 2);
  CHECK(run({"field", "-p", "4", "-m", "2", "--kind", "sideways", "-e", "1"}).code == 2);
  CHECK(run({"field", "-p", "4", "-m", "2", "-e", "1", "--format", "png"}).code == 2);
  CHECK(run({"field", "-p", "4", "-m", "2", "-e", "1", "--waist", "-1"}).code == 2);
}

TEST_CASE("vortices") {
  const auto r = run({"vortices", "-p", "5", "-m", "3", "--sign", "plus", "-e", "2",
                      "--resolution", "256"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["foci"][0][0].get<double>() == doctest::Approx(-1.0));
  CHECK(doc["foci"][1][0].get<double>() == doctest::Approx(1.0));
  int on_axis_plus = 0;
  for (const auto& v : doc["vortices"]) {
    if (std::fabs(v["y"].get<double>()) < 1e-6 && v["charge"] == 1) ++on_axis_plus;
  }
  CHECK(on_axis_plus == 3);
  CHECK(run({"vortices", "-p", "4", "-m", "0", "-e", "2"}).code == 2);
}

TEST_CASE("verify exit codes") {
  const fs::path out = scratch() / "verify.txt";
  CHECK(run({"verify", "--level", "fast", "-o", out.string()}).code == 0);
  CHECK(slurp(out).find("verify: ok") != std::string::npos);
  cli::CliHooks corrupted;
  corrupted.decomposer = [](const ModeIndex& mode, double eps) {
    Decomposition d = decompose(mode, eps);
    for (auto& t : d.terms) {
      if ((t.index.n + t.index.l) % 2 == 1) t.weight = -t.weight;
    }
    return d;
  };
  const auto r = run({"verify"}, corrupted);
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL decomposition.overlap_quadrature") != std::string::npos);
  CHECK(run({"verify", "--level", "medium"}).code == 2);
}

}
