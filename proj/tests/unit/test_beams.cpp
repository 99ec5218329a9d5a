#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "elliptic_oam/beams.hpp"
#include "elliptic_oam/error.hpp"
#include "elliptic_oam/verify.hpp"

using namespace elliptic_oam;
using cd = std::complex<double>;

namespace {

double overlap_abs(const std::function<cd(double, double)>& a,
                   const std::function<cd(double, double)>& b, double half_width = 8.0) {
  const linalg::PlaneQuadrature quad(half_width, 96);
  const auto sa = sample_on(quad, a);
  const auto sb = sample_on(quad, b);
  return std::abs(quad.inner(sa.re, sa.im, sb.re, sb.im));
}

double norm_sq(const std::function<cd(double, double)>& f, double half_width) {
  const linalg::PlaneQuadrature quad(half_width, 128);
  const auto s = sample_on(quad, f);
  return quad.inner(s.re, s.im, s.re, s.im).real();
}

}  // namespace

TEST_SUITE("beams") {

TEST_CASE("geometry validation and derived quantities") {
  BeamGeometry g;
  CHECK(g.rayleigh_range() == doctest::Approx(std::numbers::pi));
  g.z = g.rayleigh_range();
  CHECK(g.width() == doctest::Approx(std::sqrt(2.0)));
  CHECK(g.gouy_angle() == doctest::Approx(std::numbers::pi / 4));
  BeamGeometry bad;
  bad.waist = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad.waist = 1.0;
  bad.wavenumber = -1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("elliptic coordinates round-trip") {
  const double f = 1.3;
  for (double x = -3.0; x <= 3.0; x += 0.37) {
    for (double y = -2.5; y <= 2.5; y += 0.41) {
      const EllipticPoint e = cartesian_to_elliptic(x, y, f);
      CHECK(e.xi >= 0.0);
      CHECK(e.eta >= 0.0);
      CHECK(e.eta < 2.0 * std::numbers::pi);
      CHECK(f * std::cosh(e.xi) * std::cos(e.eta) == doctest::Approx(x).epsilon(1e-12).scale(1.0));
      CHECK(f * std::sinh(e.xi) * std::sin(e.eta) == doctest::Approx(y).epsilon(1e-12).scale(1.0));
    }
  }
  CHECK(semifocal_distance(2.0, BeamGeometry{}) == doctest::Approx(1.0));
}

TEST_CASE("closed forms of low-order modes") {
  const BeamGeometry g;
  const double c = std::sqrt(2.0 / std::numbers::pi);
  CHECK(std::abs(eval_gaussian(g, 0.0, 0.0) - 1.0) < 1e-15);
  for (auto [x, y] : {std::pair{0.3, -0.2}, std::pair{-1.1, 0.7}}) {
    const double r2 = x * x + y * y;
    CHECK(std::abs(eval_lg(0, 0, LgKind::even, g, x, y) - c * std::exp(-r2)) < 1e-14);
    const cd lg01 = c * std::sqrt(2.0) * cd(x, y) * std::exp(-r2);
    CHECK(std::abs(eval_lg(0, 1, LgKind::helical_plus, g, x, y) - lg01) < 1e-14);
    CHECK(std::abs(eval_lg(0, 1, LgKind::helical_minus, g, x, y) - std::conj(lg01)) < 1e-14);
    // HG_10 and HG_01 are the even and odd LG_01
    CHECK(std::abs(eval_hg(1, 0, g, x, y) - eval_lg(0, 1, LgKind::even, g, x, y)) < 1e-14);
    CHECK(std::abs(eval_hg(0, 1, g, x, y) - eval_lg(0, 1, LgKind::odd, g, x, y)) < 1e-14);
  }
  CHECK_THROWS_AS(eval_lg(0, 0, LgKind::odd, g, 0.1, 0.1), Error);
  CHECK_THROWS_AS(eval_hg(-1, 0, g, 0.1, 0.1), Error);
}

TEST_CASE("LG family is orthonormal") {
  CHECK(oracles::lg_gram_deviation(6) <= 1e-10);
}

TEST_CASE("IG family is orthonormal at eps = 2") {
  CHECK(oracles::ig_gram_deviation(4, 2.0) <= 1e-8);
}

TEST_CASE("IG tends to LG as eps -> 0 and to HG as eps -> infinity") {
  const BeamGeometry g;
  for (const ModeIndex mode : {make_mode(4, 2, Parity::even), make_mode(5, 1, Parity::odd),
                               make_mode(6, 6, Parity::even)}) {
    const IgBeam ig(mode, 1e-6);
    const LgKind kind = mode.parity == Parity::even ? LgKind::even : LgKind::odd;
    const int n = (mode.p - mode.m) / 2;
    CHECK(overlap_abs([&](double x, double y) { return eval_lg(n, mode.m, kind, g, x, y); },
                      [&](double x, double y) { return ig(x, y); }) ==
          doctest::Approx(1.0).epsilon(1e-6));
    const IgBeam wide(mode, 1e4);
    const int nx = mode.parity == Parity::even ? mode.m : mode.m - 1;
    CHECK(overlap_abs([&](double x, double y) { return eval_hg(nx, mode.p - nx, g, x, y); },
                      [&](double x, double y) { return wide(x, y); }) >= 0.999);
  }
}

TEST_CASE("fields stay normalized off the waist and for other waists") {
  BeamGeometry g;
  g.waist = 0.7;
  g.z = 1.3;
  const IgBeam ig(make_mode(5, 3, Parity::even), 2.0, g);
  CHECK(norm_sq([&](double x, double y) { return ig(x, y); }, 8.0 * g.width()) ==
        doctest::Approx(1.0).epsilon(1e-10));
  const HigBeam hig(4, 2, Helicity::minus, 0.8, g);
  CHECK(norm_sq([&](double x, double y) { return hig(x, y); }, 8.0 * g.width()) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(norm_sq([&](double x, double y) { return eval_lg(2, 3, LgKind::helical_plus, g, x, y); },
                8.0 * g.width()) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("waist rescaling is a similarity") {
  BeamGeometry g;
  g.waist = 0.5;
  const IgBeam unit(make_mode(6, 2, Parity::odd), 1.7);
  const IgBeam half(make_mode(6, 2, Parity::odd), 1.7, g);
  for (auto [x, y] : {std::pair{0.1, 0.2}, std::pair{-0.4, 0.05}}) {
    CHECK(std::abs(half(x, y) - unit(x / 0.5, y / 0.5) / 0.5) < 1e-13);
  }
}

TEST_CASE("Gouy phase and LG limit off the waist") {
  BeamGeometry g;
  g.z = 0.8;
  const cd center = eval_lg(0, 0, LgKind::even, g, 0.0, 0.0);
  CHECK(std::arg(center) == doctest::Approx(-g.gouy_angle()));
  const IgBeam ig(make_mode(3, 1, Parity::even), 1e-7, g);
  for (auto [x, y] : {std::pair{0.3, 0.2}, std::pair{-0.9, 0.4}}) {
    CHECK(std::abs(ig(x, y) - eval_lg(1, 1, LgKind::even, g, x, y)) < 1e-6);
  }
}

TEST_CASE("helical field is the even/odd combination") {
  const HigBeam plus(5, 3, Helicity::plus, 2.0);
  const HigBeam minus(5, 3, Helicity::minus, 2.0);
  for (auto [x, y] : {std::pair{0.3, 0.2}, std::pair{-0.9, 0.4}}) {
    const cd e = plus.even()(x, y);
    const cd o = plus.odd()(x, y);
    CHECK(std::abs(plus(x, y) - (e + cd(0, 1) * o) / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(minus(x, y) - (e - cd(0, 1) * o) / std::sqrt(2.0)) < 1e-15);
    const ModeIndex mode = make_mode(5, 3, Parity::even);
    CHECK(std::abs(eval_ig(mode, 2.0, {}, x, y) - e) < 1e-15);
    CHECK(std::abs(eval_hig(mode, Helicity::plus, 2.0, {}, x, y) - plus(x, y)) < 1e-15);
  }
  CHECK_THROWS_AS(HigBeam(4, 0, Helicity::plus, 1.0), Error);
  CHECK_THROWS_AS(IgBeam(make_mode(2, 2, Parity::even), 0.0), Error);
}

TEST_CASE("HIG22 at eps = 2 vanishes between the foci, not at them") {
  const HigBeam hig(2, 2, Helicity::plus, 2.0);
  const double f = hig.semifocal();
  CHECK(f == doctest::Approx(1.0));
  CHECK(std::abs(hig(f, 0.0)) > 0.05);
  // bisection for the even-field zero on the positive x axis
  double lo = 0.2;
  double hi = 0.8;
  REQUIRE(hig.even()(lo, 0.0).real() * hig.even()(hi, 0.0).real() < 0.0);
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((hig.even()(mid, 0.0).real() < 0.0) == (hig.even()(lo, 0.0).real() < 0.0)) lo = mid; else hi = mid;
  }
  CHECK(lo == doctest::Approx(0.437).epsilon(2e-3));
  CHECK(std::abs(hig(lo, 0.0)) < 1e-12);
  CHECK(std::abs(hig(-lo, 0.0)) < 1e-12);
}

TEST_CASE("batch and point evaluation agree") {
  const HigBeam hig(7, 3, Helicity::plus, 3.0);
  std::vector<double> x, y;
  for (int i = 0; i < 23; ++i) {
    x.push_back(-2.0 + 0.17 * i);
    y.push_back(1.5 - 0.11 * i);
  }
  std::vector<cd> out(x.size());
  hig.evaluate(x, y, out);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(out[i] - hig(x[i], y[i])) < 1e-14);
}

TEST_CASE("sample_grid layout") {
  const BeamGeometry g;
  const auto f = sample_grid([&](double x, double y) { return eval_gaussian(g, x, y); }, 2.0, 64);
  CHECK(f.nx == 64);
  CHECK(f.spacing == doctest::Approx(4.0 / 64));
  CHECK(f.x(0) == -2.0);
  CHECK(std::abs(f.at(32, 32) - 1.0) < 1e-15);
  CHECK(std::abs(f.at(40, 20) - eval_gaussian(g, f.x(40), f.y(20))) == 0.0);
  const auto c = sample_grid([&](double x, double y) { return eval_gaussian(g, x, y); }, 2.0, 64,
                             GridAlignment::cell_centered);
  CHECK(c.x(31) == doctest::Approx(-c.x(32)));
  CHECK_THROWS_AS(sample_grid([](double, double) { return cd{}; }, 1.0, 8), Error);
  CHECK_THROWS_AS(sample_grid([](double, double) { return cd{}; }, -1.0, 32), Error);
}

TEST_CASE("enum parsing") {
  CHECK(parse_helicity("minus") == Helicity::minus);
  CHECK(parse_lg_kind("helical_plus") == LgKind::helical_plus);
  CHECK_THROWS_AS(parse_lg_kind("spiral"), Error);
  CHECK(to_string(LgKind::odd) == "odd");
}

}
