#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "elliptic_oam/error.hpp"
#include "elliptic_oam/ince.hpp"

using namespace elliptic_oam;

namespace {

std::vector<ModeIndex> all_modes(int max_order) {
  std::vector<ModeIndex> out;
  for (int p = 0; p <= max_order; ++p) {
    for (int m = p % 2; m <= p; m += 2) {
      out.push_back(make_mode(p, m, Parity::even));
      if (m >= 1) out.push_back(make_mode(p, m, Parity::odd));
    }
  }
  return out;
}

// Term-by-term evaluation of the series, independent of the Chebyshev path.
double direct_angular(const IncePolynomial& poly, double eta) {
  const bool sine = poly.series() == SeriesClass::sin_even_harmonics ||
                    poly.series() == SeriesClass::sin_odd_harmonics;
  double sum = 0.0;
  for (std::size_t r = 0; r < poly.fourier.size(); ++r) {
    const double k = poly.harmonic(r);
    sum += poly.fourier[r] * (sine ? std::sin(k * eta) : std::cos(k * eta));
  }
  return sum;
}

double direct_radial(const IncePolynomial& poly, double xi) {
  const bool sine = poly.mode.parity == Parity::odd;
  double sum = 0.0;
  for (std::size_t r = 0; r < poly.fourier.size(); ++r) {
    const double k = poly.harmonic(r);
    sum += poly.fourier[r] * (sine ? std::sinh(k * xi) : std::cosh(k * xi));
  }
  return sum;
}

}  // namespace

TEST_SUITE("ince") {

TEST_CASE("mode validation") {
  CHECK_NOTHROW(make_mode(0, 0, Parity::even));
  CHECK_NOTHROW(make_mode(5, 3, Parity::odd));
  CHECK_THROWS_AS(make_mode(3, 2, Parity::even), Error);
  CHECK_THROWS_AS(make_mode(2, 4, Parity::even), Error);
  CHECK_THROWS_AS(make_mode(2, 0, Parity::odd), Error);
  CHECK_THROWS_AS(make_mode(-2, 0, Parity::even), Error);
  try {
    make_mode(3, 2, Parity::even);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_mode);
  }
  CHECK(parse_parity("odd") == Parity::odd);
  CHECK_THROWS_AS(parse_parity("sideways"), Error);
}

TEST_CASE("series dimensions") {
  CHECK(series_length(make_mode(6, 2, Parity::even)) == 4);
  CHECK(series_length(make_mode(7, 3, Parity::even)) == 4);
  CHECK(series_length(make_mode(6, 2, Parity::odd)) == 3);
  CHECK(series_length(make_mode(7, 3, Parity::odd)) == 4);
  CHECK(first_harmonic(SeriesClass::sin_even_harmonics) == 2);
  CHECK(first_harmonic(SeriesClass::cos_odd_harmonics) == 1);
}

TEST_CASE("trivial mode") {
  const IncePolynomial poly = solve_ince(make_mode(0, 0, Parity::even), 1.0);
  REQUIRE(poly.fourier.size() == 1);
  CHECK(poly.fourier[0] == 1.0);
  CHECK(poly.eigenvalue == doctest::Approx(0.0));
}

TEST_CASE("ODE residual vanishes for every mode up to p = 12") {
  for (const ModeIndex& mode : all_modes(12)) {
    for (double eps : {0.01, 0.5, 1.0, 2.0, 5.0, 10.0}) {
      const IncePolynomial poly = solve_ince(mode, eps);
      CHECK_MESSAGE(ince_ode_residual(poly) <= 1e-9, mode.label(), " eps=", eps);
    }
  }
}

TEST_CASE("residual detects a perturbed solution") {
  IncePolynomial poly = solve_ince(make_mode(5, 3, Parity::odd), 2.0);
  const double clean = ince_ode_residual(poly);
  poly.fourier[0] *= 1.0 + 1e-6;
  CHECK(ince_ode_residual(poly) > 100.0 * clean);
  CHECK(ince_ode_residual(poly) > 1e-8);
}

TEST_CASE("eigenvalues tend to m^2 as eps -> 0") {
  for (const ModeIndex& mode : all_modes(12)) {
    CHECK(solve_ince(mode, 1e-10).eigenvalue == doctest::Approx(mode.m * mode.m).epsilon(1e-8));
    CHECK(solve_ince(mode, 0.0).eigenvalue == doctest::Approx(mode.m * mode.m).epsilon(1e-14));
  }
}

TEST_CASE("eigenvalues increase with m inside one series class") {
  for (int p : {6, 7}) {
    for (Parity parity : {Parity::even, Parity::odd}) {
      double previous = -1e300;
      for (int m = parity == Parity::odd ? (p % 2 == 0 ? 2 : 1) : p % 2; m <= p; m += 2) {
        const double a = solve_ince(make_mode(p, m, parity), 3.0).eigenvalue;
        CHECK(a > previous);
        previous = a;
      }
    }
  }
}

TEST_CASE("coefficients follow the sign convention continuously in eps") {
  for (const ModeIndex& mode : all_modes(7)) {
    std::vector<double> previous;
    for (double eps = 1e-3; eps <= 1e4; eps *= 1.25) {
      const IncePolynomial poly = solve_ince(mode, eps);
      CHECK(poly.fourier[0] > 0.0);
      if (!previous.empty()) {
        double dot = 0.0;
        for (std::size_t r = 0; r < previous.size(); ++r) dot += previous[r] * poly.fourier[r];
        CHECK_MESSAGE(dot > 0.5, mode.label(), " eps=", eps);
      }
      previous = poly.fourier;
    }
  }
}

TEST_CASE("Chebyshev evaluation equals term-by-term summation") {
  for (const ModeIndex& mode : all_modes(9)) {
    const IncePolynomial poly = solve_ince(mode, 2.5);
    for (double eta = 0.0; eta < 2.0 * std::numbers::pi; eta += 0.173) {
      CHECK(eval_angular(poly, eta) == doctest::Approx(direct_angular(poly, eta)).epsilon(1e-12).scale(1.0));
    }
    for (double xi = 0.0; xi < 2.5; xi += 0.31) {
      const double ref = direct_radial(poly, xi);
      CHECK(eval_radial(poly, xi) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
    }
    std::vector<double> c, s, out(3);
    for (double eta : {0.3, 1.1, 4.0}) {
      c.push_back(std::cos(eta));
      s.push_back(std::sin(eta));
    }
    eval_angular_batch(poly, c, s, out);
    CHECK(out[1] == doctest::Approx(direct_angular(poly, 1.1)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("coefficient lookup by harmonic") {
  const IncePolynomial poly = solve_ince(make_mode(6, 4, Parity::odd), 1.0);
  CHECK(poly.coefficient_of_harmonic(2) == poly.fourier[0]);
  CHECK(poly.coefficient_of_harmonic(6) == poly.fourier[2]);
  CHECK(poly.coefficient_of_harmonic(3) == 0.0);
  CHECK(poly.coefficient_of_harmonic(0) == 0.0);
}

TEST_CASE("negative ellipticity is rejected") {
  CHECK_THROWS_AS(solve_ince(make_mode(2, 2, Parity::even), -1.0), Error);
}

}
