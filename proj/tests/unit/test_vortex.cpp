#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "elliptic_oam/error.hpp"
#include "elliptic_oam/vortex.hpp"

using namespace elliptic_oam;
using cd = std::complex<double>;

namespace {

ComplexField grid_of(const std::function<cd(double, double)>& f, double h = 1.0, int res = 64) {
  return sample_grid(f, h, res, GridAlignment::cell_centered);
}

}  // namespace

TEST_SUITE("vortex") {

TEST_CASE("synthetic point vortices") {
  const double a = 0.123;
  const double b = -0.0456;
  auto v = find_vortices(grid_of([&](double x, double y) { return cd(x - a, y - b); }));
  REQUIRE(v.size() == 1);
  CHECK(v[0].charge == 1);
  CHECK(v[0].x == doctest::Approx(a).epsilon(1e-12));
  CHECK(v[0].y == doctest::Approx(b).epsilon(1e-12));

  v = find_vortices(grid_of([&](double x, double y) { return cd(x - a, -(y - b)); }));
  REQUIRE(v.size() == 1);
  CHECK(v[0].charge == -1);

  // a double zero centred in a plaquette: every edge jumps by pi, so the
  // charge is recovered from the cluster boundary
  const auto scan = scan_vortices(grid_of([](double x, double y) { return cd(x, y) * cd(x, y); }));
  REQUIRE(scan.vortices.size() == 1);
  CHECK(scan.vortices[0].charge == 2);
  CHECK(std::hypot(scan.vortices[0].x, scan.vortices[0].y) < 1e-12);
  CHECK(scan.skipped_ambiguous == 0);
  CHECK(scan.max_quantization_error < 1e-9);

  // two separated unit charges of opposite sign
  v = find_vortices(grid_of([](double x, double y) { return cd(x - 0.3, y) * cd(x + 0.3, -y); }));
  REQUIRE(v.size() == 2);
  CHECK(v[0].charge == -1);
  CHECK(std::fabs(v[0].x + 0.3) < 0.25 * (2.0 / 64));
  CHECK(v[1].charge == 1);
}

TEST_CASE("real fields carry no vortices") {
  const auto scan = scan_vortices(grid_of([](double x, double y) { return cd(x * y - 0.1, 0.0); }));
  CHECK(scan.vortices.empty());
  CHECK(scan.skipped_ambiguous > 0);
  for (const ModeIndex mode : {make_mode(5, 3, Parity::even), make_mode(5, 3, Parity::odd)}) {
    const IgBeam ig(mode, 2.0);
    CHECK(find_vortices(grid_of([&](double x, double y) { return ig(x, y); }, 3.0, 256)).empty());
  }
}

TEST_CASE("amplitude floor") {
  const auto scan = scan_vortices(grid_of([](double, double) { return cd{}; }));
  CHECK(scan.vortices.empty());
  CHECK(scan.skipped_low_amplitude == 63u * 63u);
  // a vortex far out in a Gaussian tail is ignored once the floor is raised
  auto tail = [](double x, double y) { return cd(x - 0.8, y - 0.8) * std::exp(-20.0 * (x * x + y * y)); };
  CHECK(find_vortices(grid_of(tail), 0.0).size() == 1);
  CHECK(find_vortices(grid_of(tail), 1e-3).empty());
}

TEST_CASE("tiny grids are rejected") {
  const ComplexField f = sample_grid([](double x, double y) { return cd(x, y); }, 1.0, 16);
  ComplexField small = f;
  small.nx = 4;
  small.ny = 4;
  small.values.resize(16);
  CHECK_THROWS_AS(scan_vortices(small), Error);
}

TEST_CASE("merge_charges clusters by distance") {
  const std::vector<Vortex> v = {{0.0, 0.0, 1}, {0.05, 0.0, 1}, {0.1, 0.02, -1}, {1.0, 1.0, 1}};
  const auto regions = merge_charges(v, 0.06);
  REQUIRE(regions.size() == 2);
  int charges = 0;
  for (const auto& r : regions) charges += r.total_charge;
  CHECK(charges == 2);
  CHECK((regions[0].members == 3 || regions[1].members == 3));
}

TEST_CASE("LG helical charge") {
  const BeamGeometry g;
  const auto v = find_vortices(grid_of(
      [&](double x, double y) { return eval_lg(0, 2, LgKind::helical_minus, g, x, y); }, 3.0, 200));
  int total = 0;
  for (const Vortex& q : v) total += q.charge;
  CHECK(total == -2);
  REQUIRE(v.size() == 1);
  CHECK(std::hypot(v[0].x, v[0].y) < 1e-12);
}

TEST_CASE("HIG(5,3) at eps = 2: on-axis vortex set") {
  const double eps = 2.0;
  const auto census = vortex_census(5, 3, Helicity::plus, std::span<const double>(&eps, 1), 512);
  REQUIRE(census.size() == 1);
  const CensusEntry& e = census[0];
  CHECK(e.semifocal == doctest::Approx(1.0));
  CHECK(e.window_half_width == doctest::Approx(3.0));
  std::vector<Vortex> plus_on_axis;
  std::vector<Vortex> minus_on_axis;
  for (const Vortex& v : e.vortices) {
    if (std::fabs(v.y) > e.spacing) continue;
    (v.charge > 0 ? plus_on_axis : minus_on_axis).push_back(v);
  }
  REQUIRE(plus_on_axis.size() == 3);
  CHECK(plus_on_axis[0].x == doctest::Approx(-0.6259).epsilon(1e-3));
  CHECK(std::fabs(plus_on_axis[1].x) < 1e-9);
  CHECK(plus_on_axis[2].x == doctest::Approx(0.6259).epsilon(1e-3));
  REQUIRE(minus_on_axis.size() == 2);
  CHECK(std::fabs(minus_on_axis[1].x) == doctest::Approx(1.5422).epsilon(1e-3));
  int total = 0;
  for (const Vortex& v : e.vortices) total += v.charge;
  CHECK(total == 3);
}

TEST_CASE("census window grows with the focal separation") {
  CHECK(census_half_width(0.5, {}) == doctest::Approx(3.0));
  CHECK(census_half_width(18.0, {}) == doctest::Approx(4.5));
  const std::vector<double> eps = {0.5, 4.0};
  const auto census = vortex_census(4, 2, Helicity::minus, eps, 128);
  REQUIRE(census.size() == 2);
  for (const auto& entry : census) {
    int total = 0;
    for (const Vortex& v : entry.vortices) total += v.charge;
    CHECK(total == -2);
  }
}

}
