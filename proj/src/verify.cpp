#include "elliptic_oam/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <memory>
#include <sstream>
#include <tuple>

#include "elliptic_oam/error.hpp"
#include "elliptic_oam/kernels.hpp"
#include "elliptic_oam/linalg.hpp"
#include "elliptic_oam/vortex.hpp"

namespace elliptic_oam {

namespace {

using cd = std::complex<double>;

std::vector<ModeIndex> modes_up_to(int max_order) {
  std::vector<ModeIndex> out;
  for (int p = 0; p <= max_order; ++p) {
    for (int m = p % 2; m <= p; m += 2) {
      out.push_back(make_mode(p, m, Parity::even));
      if (m >= 1) out.push_back(make_mode(p, m, Parity::odd));
    }
  }
  return out;
}

BatchField ig_field(const ModeIndex& mode, double eps, const BeamGeometry& geometry = {}) {
  auto beam = std::make_shared<IgBeam>(mode, eps, geometry);
  return [beam](std::span<const double> x, std::span<const double> y, std::span<cd> out) {
    beam->evaluate(x, y, out);
  };
}

BatchField hig_field(int p, int m, Helicity sign, double eps, const BeamGeometry& geometry = {}) {
  auto beam = std::make_shared<HigBeam>(p, m, sign, eps, geometry);
  return [beam](std::span<const double> x, std::span<const double> y, std::span<cd> out) {
    beam->evaluate(x, y, out);
  };
}

double gram_deviation(const std::vector<PlaneSamples>& samples,
                      const linalg::PlaneQuadrature& quad) {
  double worst = 0.0;
  for (std::size_t a = 0; a < samples.size(); ++a) {
    for (std::size_t b = a; b < samples.size(); ++b) {
      const cd g = quad.inner(samples[a].re, samples[a].im, samples[b].re, samples[b].im);
      const double target = a == b ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(g - target));
    }
  }
  return worst;
}

double frac(double v) { return v - std::floor(v); }

// Zeros of the angular Ince function on (0, pi/2], located by bisection.
std::vector<double> angular_zeros(const IncePolynomial& poly) {
  std::vector<double> zeros;
  const int n = 4000;
  const double hi = 0.5 * std::numbers::pi;
  double a = 1e-9;
  double fa = eval_angular(poly, a);
  for (int i = 1; i <= n; ++i) {
    double b = hi * i / n;
    double fb = eval_angular(poly, b);
    if (fa == 0.0 || fa * fb < 0.0) {
      double lo = a;
      double up = b;
      for (int it = 0; it < 200 && up - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + up);
        if ((eval_angular(poly, lo) < 0.0) == (eval_angular(poly, mid) < 0.0)) {
          lo = mid;
        } else {
          up = mid;
        }
      }
      zeros.push_back(0.5 * (lo + up));
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

// Frozen from the first verified run on the 512-point log grid over
// [0.01, 30]; a dense linear grid puts the true minima at 1.9337 and 5.8228.
constexpr double kGoldenMinimum73 = 1.9338218872264372;
constexpr double kGoldenMinimum75 = 5.823406216836473;
constexpr double kGoldenCrossing75 = 12.096941607615294;

}  // namespace

namespace oracles {

double decomposition_overlap_error(const ModeIndex& mode, double ellipticity,
                                   const Decomposer& decomposer, int nodes) {
  const linalg::PlaneQuadrature quad(kOverlapHalfWidth, nodes);
  const PlaneSamples ig = sample_on(quad, ig_field(mode, ellipticity));
  const Decomposition dec = decomposer(mode, ellipticity);
  const LgKind kind = mode.parity == Parity::even ? LgKind::even : LgKind::odd;
  const BeamGeometry geometry;
  double worst = 0.0;
  for (int l = mode.p % 2; l <= mode.p; l += 2) {
    if (mode.parity == Parity::odd && l == 0) continue;
    const int n = (mode.p - l) / 2;
    const PlaneSamples lg = sample_on(
        quad, [&](double x, double y) { return eval_lg(n, l, kind, geometry, x, y); });
    const cd overlap = quad.inner(lg.re, lg.im, ig.re, ig.im);
    worst = std::max(worst, std::abs(overlap - dec.weight(n, l)));
  }
  return worst;
}

double ig_gram_deviation(int max_order, double ellipticity, int nodes) {
  const linalg::PlaneQuadrature quad(kOverlapHalfWidth, nodes);
  std::vector<PlaneSamples> samples;
  for (const ModeIndex& mode : modes_up_to(max_order)) {
    samples.push_back(sample_on(quad, ig_field(mode, ellipticity)));
  }
  return gram_deviation(samples, quad);
}

double lg_gram_deviation(int max_order, int nodes) {
  const linalg::PlaneQuadrature quad(kOverlapHalfWidth, nodes);
  const BeamGeometry geometry;
  std::vector<PlaneSamples> samples;
  for (int p = 0; p <= max_order; ++p) {
    for (int l = p % 2; l <= p; l += 2) {
      const int n = (p - l) / 2;
      for (LgKind kind : {LgKind::even, LgKind::odd}) {
        if (kind == LgKind::odd && l == 0) continue;
        samples.push_back(sample_on(
            quad, [&](double x, double y) { return eval_lg(n, l, kind, geometry, x, y); }));
      }
    }
  }
  return gram_deviation(samples, quad);
}

double field_oam(const BatchField& field, double half_width, int nodes) {
  const linalg::PlaneQuadrature quad(half_width, nodes);
  const std::size_t size = quad.size();
  std::vector<double> x(size);
  std::vector<double> y(size);
  for (std::size_t k = 0; k < size; ++k) {
    x[k] = quad.x(k);
    y[k] = quad.y(k);
  }
  std::vector<cd> psi(size);
  field(x, y, psi);

  constexpr double delta = 1e-3;
  const double steps[4] = {-2.0, -1.0, 1.0, 2.0};
  const double stencil[4] = {1.0, -8.0, 8.0, -1.0};
  std::vector<cd> dphi(size, cd{});
  std::vector<double> xr(size);
  std::vector<double> yr(size);
  std::vector<cd> rotated(size);
  for (int s = 0; s < 4; ++s) {
    const double c = std::cos(steps[s] * delta);
    const double sn = std::sin(steps[s] * delta);
    for (std::size_t k = 0; k < size; ++k) {
      xr[k] = c * x[k] - sn * y[k];
      yr[k] = sn * x[k] + c * y[k];
    }
    field(xr, yr, rotated);
    for (std::size_t k = 0; k < size; ++k) dphi[k] += stencil[s] * rotated[k];
  }

  double numerator = 0.0;
  double norm = 0.0;
  const auto w = quad.weights();
  for (std::size_t k = 0; k < size; ++k) {
    const cd lz = cd{0.0, -1.0} * dphi[k] / (12.0 * delta);
    numerator += w[k] * (std::conj(psi[k]) * lz).real();
    norm += w[k] * std::norm(psi[k]);
  }
  return numerator / norm;
}

std::pair<double, double> ig22_closed_form(double ellipticity) {
  const double r = (1.0 - std::sqrt(1.0 + ellipticity * ellipticity)) / ellipticity;
  const double d02 = 1.0 / std::sqrt(1.0 + r * r);
  return {d02, r * d02};
}

std::pair<double, double> ig22_closed_form_minus_radical(double ellipticity) {
  const double r = (1.0 - std::sqrt(1.0 - ellipticity * ellipticity)) / ellipticity;
  const double d02 = 1.0 / std::sqrt(1.0 + r * r);
  return {d02, r * d02};
}

QuantumModeState quasi_random_state(int seed_index, int max_order) {
  const double a = std::numbers::phi * (seed_index + 1);
  const double b = std::numbers::sqrt2 * (seed_index + 3);
  QuantumModeState state;
  int k = 1;
  double norm2 = 0.0;
  for (int p = 0; p <= max_order; ++p) {
    for (int l = p % 2; l <= p; l += 2) {
      for (Parity parity : {Parity::even, Parity::odd}) {
        if (parity == Parity::odd && l == 0) continue;
        const cd c{frac(k * a) - 0.5, frac(k * b) - 0.5};
        state.amplitudes[LGIndex{parity, (p - l) / 2, l}] = c;
        norm2 += std::norm(c);
        ++k;
      }
    }
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& [index, c] : state.amplitudes) c *= inv;
  return state;
}

}  // namespace oracles

bool VerifyReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed || !c.gating; });
}

std::size_t VerifyReport::gating_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.gating; }));
}

std::string VerifyReport::to_text() const {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const CheckResult& c : checks) {
    const char* status = c.passed ? "PASS" : (c.gating ? "FAIL" : "INFO");
    if (!c.passed && c.gating) ++failed;
    char line[512];
    std::snprintf(line, sizeof line, "%-4s %-40s measured %.6e %s %.3e", status, c.name.c_str(),
                  c.measured, c.relation.c_str(), c.threshold);
    out << line;
    if (!c.note.empty()) out << "  (" << c.note << ')';
    out << '\n';
  }
  for (const std::string& note : notes) out << "note: " << note << '\n';
  out << (failed == 0 ? "verify: ok" : "verify: FAILED") << ", " << checks.size()
      << " checks, " << gating_count() << " gating, " << failed << " failed\n";
  return out.str();
}

VerifyReport run_verification(const VerifyOptions& options) {
  const bool full = options.level == VerifyLevel::full;
  const Decomposer& decomposer = options.decomposer;
  VerifyReport report;
  report.level = options.level;

  auto add = [&](std::string name, double measured, std::string relation, double threshold,
                 std::string note = {}, bool gating = true) {
    bool ok = false;
    if (relation == "<=") ok = measured <= threshold;
    else if (relation == ">=") ok = measured >= threshold;
    else if (relation == "==") ok = measured == threshold;
    report.checks.push_back({std::move(name), measured, threshold, std::move(relation), ok,
                             gating, std::move(note)});
  };
  // Runs a check body; exceptions turn into a failed check instead of aborting the suite.
  auto guarded = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(name, std::numeric_limits<double>::infinity(), "<=", 0.0,
          std::string("threw: ") + e.what());
    }
  };

  const int residual_order = full ? 12 : 8;
  const std::vector<double> residual_eps =
      full ? std::vector<double>{1e-3, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}
           : std::vector<double>{0.1, 1.0, 2.0, 5.0, 20.0};

  guarded("ince.ode_residual", [&] {
    double worst = 0.0;
    for (const ModeIndex& mode : modes_up_to(residual_order)) {
      for (double eps : residual_eps) {
        worst = std::max(worst, ince_ode_residual(solve_ince(mode, eps)));
      }
    }
    add("ince.ode_residual", worst, "<=", 1e-9, "p <= " + std::to_string(residual_order));
  });

  guarded("ince.residual_sensitivity", [&] {
    IncePolynomial poly = solve_ince(make_mode(6, 2, Parity::even), 2.0);
    poly.eigenvalue += 1e-6;
    add("ince.residual_sensitivity", ince_ode_residual(poly), ">=", 1e-8,
        "eigenvalue shifted by 1e-6");
  });

  guarded("ince.small_eps_eigenvalue", [&] {
    double worst = 0.0;
    for (const ModeIndex& mode : modes_up_to(12)) {
      const IncePolynomial poly = solve_ince(mode, 1e-10);
      worst = std::max(worst, std::fabs(poly.eigenvalue - mode.m * mode.m));
    }
    add("ince.small_eps_eigenvalue", worst, "<=", 1e-8, "|a - m^2| at eps = 1e-10");
  });

  guarded("ince.eigenvalue_separation", [&] {
    double gap = std::numeric_limits<double>::infinity();
    for (int p = 1; p <= residual_order; ++p) {
      for (Parity parity : {Parity::even, Parity::odd}) {
        for (double eps : residual_eps) {
          const auto solution = linalg::eigen_tridiagonal(
              build_recurrence_matrix(make_mode(p, p, parity), eps));
          for (std::size_t i = 1; i < solution.eigenvalues.size(); ++i) {
            gap = std::min(gap, solution.eigenvalues[i] - solution.eigenvalues[i - 1]);
          }
        }
      }
    }
    add("ince.eigenvalue_separation", gap, ">=", 1e-6, "simple spectrum per class");
  });

  const int decomposition_order = full ? 8 : 4;
  const std::vector<double> decomposition_eps =
      full ? std::vector<double>{0.1, 0.5, 1.0, 2.0, 5.0, 10.0} : std::vector<double>{0.5, 2.0, 5.0};

  guarded("decomposition.unit_norm", [&] {
    double worst = 0.0;
    for (const ModeIndex& mode : modes_up_to(12)) {
      for (double eps : decomposition_eps) {
        worst = std::max(worst, std::fabs(decomposer(mode, eps).sum_sq() - 1.0));
      }
    }
    add("decomposition.unit_norm", worst, "<=", 1e-12, "|sum D^2 - 1|");
  });

  guarded("decomposition.overlap_quadrature", [&] {
    double worst = 0.0;
    for (const ModeIndex& mode : modes_up_to(decomposition_order)) {
      for (double eps : decomposition_eps) {
        worst = std::max(worst, oracles::decomposition_overlap_error(mode, eps, decomposer));
      }
    }
    add("decomposition.overlap_quadrature", worst, "<=", 1e-7,
        "p <= " + std::to_string(decomposition_order));
  });

  guarded("decomposition.ig22_closed_form", [&] {
    double worst = 0.0;
    for (double eps : {0.25, 0.5, 2.0, 7.0}) {
      const auto [d02, d10] = oracles::ig22_closed_form(eps);
      const Decomposition dec = decomposer(make_mode(2, 2, Parity::even), eps);
      worst = std::max({worst, std::fabs(dec.weight(0, 2) - d02), std::fabs(dec.weight(1, 0) - d10)});
    }
    add("decomposition.ig22_closed_form", worst, "<=", 1e-12, "radical sqrt(1 + eps^2)");
    const auto variant = oracles::ig22_closed_form_minus_radical(0.5);
    const auto fixed = oracles::ig22_closed_form(0.5);
    char line[256];
    std::snprintf(line, sizeof line,
                  "IG^e_22 closed form: with sqrt(1 - eps^2) D10(0.5) = %.6f (undefined for eps > 1); "
                  "with sqrt(1 + eps^2) D10(0.5) = %.6f, matching the solver",
                  variant.second, fixed.second);
    report.notes.emplace_back(line);
  });

  guarded("decomposition.small_eps_lg", [&] {
    double worst = 0.0;
    for (const ModeIndex& mode : modes_up_to(12)) {
      const double d = decomposer(mode, 1e-6).weight((mode.p - mode.m) / 2, mode.m);
      worst = std::max(worst, 1.0 - d);
    }
    add("decomposition.small_eps_lg", worst, "<=", 1e-5, "1 - D at eps = 1e-6");
  });

  guarded("beams.lg_gram", [&] {
    add("beams.lg_gram", oracles::lg_gram_deviation(full ? 8 : 5), "<=", 1e-10);
  });

  guarded("beams.ig_gram", [&] {
    const int order = full ? 6 : 3;
    double worst = 0.0;
    for (double eps : {0.5, 2.0}) worst = std::max(worst, oracles::ig_gram_deviation(order, eps));
    add("beams.ig_gram", worst, "<=", 1e-8, "p <= " + std::to_string(order));
  });

  guarded("beams.ig_norm_rescaled_waist", [&] {
    BeamGeometry geometry;
    geometry.waist = 0.6;
    const linalg::PlaneQuadrature quad(oracles::kOverlapHalfWidth * geometry.waist, 128);
    const PlaneSamples s = sample_on(quad, ig_field(make_mode(5, 3, Parity::odd), 3.0, geometry));
    const double norm = quad.inner(s.re, s.im, s.re, s.im).real();
    add("beams.ig_norm_rescaled_waist", std::fabs(norm - 1.0), "<=", 1e-10, "w0 = 0.6");
  });

  guarded("beams.hg_limit", [&] {
    const linalg::PlaneQuadrature quad(oracles::kOverlapHalfWidth, oracles::kOverlapNodes);
    const BeamGeometry geometry;
    double worst = 1.0;
    for (const ModeIndex mode : {make_mode(2, 2, Parity::even), make_mode(3, 1, Parity::odd)}) {
      const PlaneSamples ig = sample_on(quad, ig_field(mode, 1e4));
      const int nx = mode.parity == Parity::even ? mode.m : mode.m - 1;
      const int ny = mode.p - nx;
      const PlaneSamples hg = sample_on(
          quad, [&](double x, double y) { return eval_hg(nx, ny, geometry, x, y); });
      worst = std::min(worst, std::abs(quad.inner(hg.re, hg.im, ig.re, ig.im)));
    }
    add("beams.hg_limit", worst, ">=", 0.999, "|<HG, IG>| at eps = 1e4");
  });

  guarded("beams.lg_limit", [&] {
    const linalg::PlaneQuadrature quad(oracles::kOverlapHalfWidth, oracles::kOverlapNodes);
    const BeamGeometry geometry;
    double worst = 1.0;
    for (const ModeIndex mode : {make_mode(4, 2, Parity::even), make_mode(5, 3, Parity::odd)}) {
      const PlaneSamples ig = sample_on(quad, ig_field(mode, 1e-6));
      const LgKind kind = mode.parity == Parity::even ? LgKind::even : LgKind::odd;
      const PlaneSamples lg = sample_on(quad, [&](double x, double y) {
        return eval_lg((mode.p - mode.m) / 2, mode.m, kind, geometry, x, y);
      });
      worst = std::min(worst, quad.inner(lg.re, lg.im, ig.re, ig.im).real());
    }
    add("beams.lg_limit", 1.0 - worst, "<=", 1e-4, "1 - <LG, IG> at eps = 1e-6");
  });

  guarded("oam.parity_states_zero", [&] {
    double worst = 0.0;
    for (const ModeIndex& mode : modes_up_to(7)) {
      QuantumModeState state;
      for (const auto& term : decomposer(mode, 2.0).terms) state.amplitudes[term.index] = term.weight;
      worst = std::max(worst, std::fabs(oam_expectation(state)));
    }
    add("oam.parity_states_zero", worst, "==", 0.0);
  });

  guarded("oam.helicity_antisymmetry", [&] {
    double worst = 0.0;
    for (int p = 1; p <= 8; ++p) {
      for (int m = p % 2 == 0 ? 2 : 1; m <= p; m += 2) {
        for (double eps : {0.3, 2.0, 9.0}) {
          worst = std::max(worst,
                           std::fabs(oam_expectation(helical_state(p, m, Helicity::plus, eps)) +
                                     oam_expectation(helical_state(p, m, Helicity::minus, eps))));
        }
      }
    }
    add("oam.helicity_antisymmetry", worst, "<=", 1e-14);
  });

  guarded("oam.small_eps_limit", [&] {
    double worst = 0.0;
    for (int m : {1, 3, 5, 7}) {
      worst = std::max(worst, std::fabs(oam_expectation(helical_state(7, m, Helicity::plus, 1e-6)) - m));
    }
    add("oam.small_eps_limit", worst, "<=", 1e-5, "|<Lz> - m| for p = 7, eps = 1e-6");
  });

  guarded("oam.non_integer", [&] {
    const double v = oam_expectation(helical_state(2, 2, Helicity::plus, 2.0));
    add("oam.non_integer", std::fabs(v - 1.70130161670408), "<=", 1e-9,
        "(2,2,+) at eps = 2, golden 1.70130161670408");
  });

  guarded("oam.moment_identity", [&] {
    double worst = 0.0;
    for (int s = 0; s < 200; ++s) {
      const QuantumModeState state = oracles::quasi_random_state(s, 4 + s % 5);
      double moment = 0.0;
      for (const auto& [l, prob] : oam_distribution(state)) moment += l * prob;
      worst = std::max(worst, std::fabs(oam_expectation(state) - moment));
    }
    add("oam.moment_identity", worst, "<=", 1e-12, "200 deterministic states");
  });

  guarded("oam.field_quadrature", [&] {
    double worst = 0.0;
    for (const auto& [p, m, eps] : {std::tuple{2, 2, 2.0}, std::tuple{7, 3, 1.5}, std::tuple{7, 7, 6.0}}) {
      const double field = oracles::field_oam(hig_field(p, m, Helicity::plus, eps),
                                              oracles::kOverlapHalfWidth, 128);
      worst = std::max(worst,
                       std::fabs(field - oam_expectation(helical_state(p, m, Helicity::plus, eps))));
    }
    add("oam.field_quadrature", worst, "<=", 1e-7, "angular derivative of the sampled field");
  });

  guarded("oam.waist_independence", [&] {
    BeamGeometry narrow;
    narrow.waist = 0.5;
    const double a =
        oracles::field_oam(hig_field(5, 3, Helicity::plus, 2.0), oracles::kOverlapHalfWidth, 96);
    const double b = oracles::field_oam(hig_field(5, 3, Helicity::plus, 2.0, narrow),
                                        oracles::kOverlapHalfWidth * narrow.waist, 96);
    add("oam.waist_independence", std::fabs(a - b), "<=", 1e-12, "field level, w0 = 1 vs 0.5");
  });

  const std::vector<double> grid = log_grid(0.01, 30.0, 512);
  guarded("oam.curve_shapes", [&] {
    const OamCurve c77 = oam_curve(7, 7, Helicity::plus, grid);
    const OamCurve c71 = oam_curve(7, 1, Helicity::plus, grid);
    const OamCurve c73 = oam_curve(7, 3, Helicity::plus, grid);
    const OamCurve c75 = oam_curve(7, 5, Helicity::plus, grid);
    double up77 = -std::numeric_limits<double>::infinity();
    double down71 = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < grid.size(); ++i) {
      up77 = std::max(up77, c77.samples[i].oam - c77.samples[i - 1].oam);
      down71 = std::max(down71, c71.samples[i - 1].oam - c71.samples[i].oam);
    }
    add("oam.decreasing_7_7", up77, "<=", 0.0, "largest step");
    add("oam.increasing_7_1", down71, "<=", 0.0, "largest reverse step");
    auto first_minimum = [](const OamCurve& c) {
      for (const TurningPoint& t : find_turning_points(c)) {
        if (t.is_minimum) return t.epsilon;
      }
      return std::numeric_limits<double>::quiet_NaN();
    };
    const double min73 = first_minimum(c73);
    const double min75 = first_minimum(c75);
    add("oam.minimum_7_3", std::isnan(min73) ? INFINITY : std::fabs(min73 - kGoldenMinimum73), "<=", 1e-3,
        "golden eps = 1.93382");
    add("oam.minimum_7_5", std::isnan(min75) ? INFINITY : std::fabs(min75 - kGoldenMinimum75), "<=", 1e-3,
        "golden eps = 5.82341");
    const auto crossings = find_crossings(c75, c77);
    double cross = INFINITY;
    for (double e : crossings) {
      if (e > 0.0 && e <= 16.0) cross = std::min(cross, e);
    }
    add("oam.crossing_7_5_vs_7_7", cross, "<=", 16.0, "first crossing in (0, 16]");
    add("oam.crossing_golden", std::fabs(cross - kGoldenCrossing75), "<=", 1e-3,
        "golden eps = 12.09694");
  });

  guarded("oam.large_eps_convergence", [&] {
    const double gap = oam_expectation(helical_state(7, 7, Helicity::plus, 200.0)) -
                       oam_expectation(helical_state(7, 1, Helicity::plus, 200.0));
    add("oam.large_eps_convergence", std::fabs(gap), "<=", 0.02,
        "(7,7) vs (7,1) at eps = 200; gap decays like 1/eps", false);
  });

  guarded("vortex.lg_single_charge", [&] {
    const BeamGeometry geometry;
    const ComplexField f = sample_grid(
        [&](double x, double y) { return eval_lg(0, 1, LgKind::helical_plus, geometry, x, y); },
        3.0, 128, GridAlignment::cell_centered);
    const auto v = find_vortices(f);
    const double err = v.size() == 1 && v[0].charge == 1 ? std::hypot(v[0].x, v[0].y) : INFINITY;
    add("vortex.lg_single_charge", err, "<=", f.spacing, "one +1 vortex at the origin");
  });

  guarded("vortex.hig22_on_axis", [&] {
    const double eps = 2.0;
    const HigBeam beam(2, 2, Helicity::plus, eps);
    const double f = beam.semifocal();
    const ComplexField field = sample_grid(
        [&](double x, double y) { return beam(x, y); }, census_half_width(eps, {}), 256,
        GridAlignment::cell_centered);
    const auto vortices = find_vortices(field);
    double err = 0.0;
    int on_axis = 0;
    for (double eta : angular_zeros(beam.even().polynomial())) {
      for (double sx : {-1.0, 1.0}) {
        const double x0 = sx * f * std::cos(eta);
        double best = INFINITY;
        for (const Vortex& v : vortices) {
          if (v.charge == 1) best = std::min(best, std::hypot(v.x - x0, v.y));
        }
        err = std::max(err, best);
        ++on_axis;
      }
    }
    if (on_axis != 2) err = INFINITY;
    add("vortex.hig22_on_axis", err, "<=", field.spacing, "+1 vortices at f cos(eta_k), N(eta_k) = 0");
  });

  guarded("vortex.hig53_at_foci", [&] {
    const double eps = 2.0;
    const BeamGeometry geometry;
    const auto census = vortex_census(5, 3, Helicity::plus, std::span<const double>(&eps, 1), 256);
    const double f = census[0].semifocal;
    double best = INFINITY;
    for (const Vortex& v : census[0].vortices) {
      best = std::min(best, std::hypot(std::fabs(v.x) - f, v.y));
    }
    add("vortex.hig53_at_foci", best, "<=", census[0].spacing,
        "closest vortex to a focus; on-axis zeros sit at x = 0, +-0.626, +-1.542", false);
  });

  guarded("kernels.simd_equivalence", [&] {
    if (!kernels::backend_available(kernels::Backend::avx2)) {
      add("kernels.simd_equivalence", 0.0, "<=", 1e-13, "AVX2 unavailable, scalar only");
      return;
    }
    std::vector<double> x(1003);
    std::vector<double> w(x.size());
    std::vector<double> im(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = -1.3 + 2.6 * frac(0.618033988749895 * static_cast<double>(i));
      w[i] = frac(0.414213562373095 * static_cast<double>(i));
      im[i] = std::sin(static_cast<double>(i));
    }
    const std::vector<double> coeffs = {0.3, -1.1, 0.7, 0.25, -0.05, 0.01};
    double worst = 0.0;
    for (auto family : {kernels::ChebyshevFamily::first_even, kernels::ChebyshevFamily::first_odd,
                        kernels::ChebyshevFamily::second_even, kernels::ChebyshevFamily::second_odd}) {
      std::vector<double> a(x.size());
      std::vector<double> b(x.size());
      kernels::chebyshev_step2(kernels::Backend::scalar, family, coeffs, x, a);
      kernels::chebyshev_step2(kernels::Backend::avx2, family, coeffs, x, b);
      for (std::size_t i = 0; i < x.size(); ++i) {
        worst = std::max(worst, std::fabs(a[i] - b[i]) / (1.0 + std::fabs(a[i])));
      }
    }
    const cd s0 = kernels::weighted_sum(kernels::Backend::scalar, w, x, im);
    const cd s1 = kernels::weighted_sum(kernels::Backend::avx2, w, x, im);
    worst = std::max(worst, std::abs(s0 - s1) / (1.0 + std::abs(s0)));
    add("kernels.simd_equivalence", worst, "<=", 1e-13, "scalar vs AVX2, relative");
  });

  guarded("linalg.gaussian_integral", [&] {
    const cd v = linalg::integrate_plane(
        [](double x, double y) { return std::exp(-x * x - y * y); }, 8.0, 64);
    add("linalg.gaussian_integral", std::abs(v - std::numbers::pi), "<=", 1e-13);
  });

  return report;
}

}  // namespace elliptic_oam
