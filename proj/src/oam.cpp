#include "elliptic_oam/oam.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "elliptic_oam/error.hpp"
#include "elliptic_oam/parallel.hpp"

namespace elliptic_oam {

LGIndex make_lg_index(Parity parity, int n, int l) {
  if (n < 0 || l < 0) throw Error(ErrorCode::invalid_mode, "LG indices must be non-negative");
  if (parity == Parity::odd && l == 0) {
    throw Error(ErrorCode::invalid_mode, "odd LG modes need l >= 1");
  }
  return {parity, n, l};
}

double Decomposition::weight(int n, int l) const noexcept {
  for (const auto& t : terms) {
    if (t.index.n == n && t.index.l == l) return t.weight;
  }
  return 0.0;
}

double Decomposition::sum_sq() const noexcept {
  double s = 0.0;
  for (const auto& t : terms) s += t.weight * t.weight;
  return s;
}

namespace {

// sqrt((n+l)! n!) without overflow for moderate orders.
double factorial_root(int n, int l) {
  return std::exp(0.5 * (std::lgamma(n + l + 1.0) + std::lgamma(n + 1.0)));
}

double exact_factorial_root(int n, int l) {
  if (n + l > 20) return factorial_root(n, l);
  double a = 1.0;
  for (int k = 2; k <= n + l; ++k) a *= k;
  double b = 1.0;
  for (int k = 2; k <= n; ++k) b *= k;
  return std::sqrt(a * b);
}

}  // namespace

Decomposition decompose(const ModeIndex& mode, double ellipticity) {
  const IncePolynomial poly = solve_ince(mode, ellipticity);
  Decomposition out{mode, ellipticity, {}};
  out.terms.reserve(poly.fourier.size());
  double norm2 = 0.0;
  for (std::size_t r = 0; r < poly.fourier.size(); ++r) {
    const int l = poly.harmonic(r);
    const int n = (mode.p - l) / 2;
    const int exponent = n + l + (mode.p + mode.m) / 2;
    const double sign = exponent % 2 == 0 ? 1.0 : -1.0;
    const double delta = l == 0 ? 2.0 : 1.0;
    const double d = sign * std::sqrt(delta) * exact_factorial_root(n, l) * poly.fourier[r];
    out.terms.push_back({LGIndex{mode.parity, n, l}, d});
    norm2 += d * d;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& t : out.terms) t.weight *= inv;
  return out;
}

double QuantumModeState::norm_sq() const noexcept {
  double s = 0.0;
  for (const auto& [index, c] : amplitudes) s += std::norm(c);
  return s;
}

std::complex<double> QuantumModeState::amplitude(const LGIndex& index) const noexcept {
  const auto it = amplitudes.find(index);
  return it == amplitudes.end() ? std::complex<double>{} : it->second;
}

QuantumModeState helical_state(int p, int m, Helicity sign, double ellipticity) {
  if (m < 1) {
    throw Error(ErrorCode::invalid_mode, "helical states need m >= 1 (no odd partner)");
  }
  if (!(ellipticity > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "helical states need ellipticity > 0");
  }
  const Decomposition even = decompose(make_mode(p, m, Parity::even), ellipticity);
  const Decomposition odd = decompose(make_mode(p, m, Parity::odd), ellipticity);
  const double s = 1.0 / std::numbers::sqrt2;
  QuantumModeState state;
  for (const auto& t : even.terms) state.amplitudes[t.index] = {t.weight * s, 0.0};
  for (const auto& t : odd.terms) {
    state.amplitudes[t.index] = {0.0, sign_of(sign) * t.weight * s};
  }
  return state;
}

namespace {

void require_normalized(const QuantumModeState& state) {
  const double n2 = state.norm_sq();
  if (!(std::fabs(n2 - 1.0) <= 1e-10)) {
    throw Error(ErrorCode::unnormalized_state,
                "quantum state is not normalized (norm^2 = " + std::to_string(n2) + ")");
  }
}

}  // namespace

double oam_expectation(const QuantumModeState& state) {
  require_normalized(state);
  double lz = 0.0;
  for (const auto& [index, ce] : state.amplitudes) {
    if (index.parity != Parity::even || index.l == 0) continue;
    const std::complex<double> co = state.amplitude({Parity::odd, index.n, index.l});
    lz += 2.0 * index.l * (std::conj(ce) * co).imag();
  }
  return lz;
}

std::string_view to_string(Polarization polarization) noexcept {
  return polarization == Polarization::plus ? "plus" : "minus";
}

Polarization parse_polarization(std::string_view text) {
  if (text == "plus" || text == "+") return Polarization::plus;
  if (text == "minus" || text == "-") return Polarization::minus;
  throw Error(ErrorCode::invalid_argument, "unknown polarization '" + std::string{text} + "'");
}

double sam_expectation(Polarization polarization) noexcept {
  return polarization == Polarization::plus ? 1.0 : -1.0;
}

std::map<int, double> oam_distribution(const QuantumModeState& state) {
  require_normalized(state);
  std::map<int, double> out;
  const std::complex<double> i{0.0, 1.0};
  const double s = 1.0 / std::numbers::sqrt2;
  for (const auto& [index, c] : state.amplitudes) {
    if (index.l == 0) {
      out[0] += std::norm(c);
      continue;
    }
    // Visit each (n, l) once, from whichever parity is present.
    const LGIndex even_key{Parity::even, index.n, index.l};
    if (index.parity == Parity::odd && state.amplitudes.contains(even_key)) continue;
    const std::complex<double> ce = state.amplitude(even_key);
    const std::complex<double> co = state.amplitude({Parity::odd, index.n, index.l});
    out[index.l] += std::norm((ce - i * co) * s);
    out[-index.l] += std::norm((ce + i * co) * s);
  }
  return out;
}

OamCurve oam_curve(int p, int m, Helicity sign, std::span<const double> epsilons) {
  if (m < 1) throw Error(ErrorCode::invalid_mode, "OAM curves need m >= 1");
  make_mode(p, m, Parity::odd);
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0) || !std::isfinite(epsilons[i])) {
      throw Error(ErrorCode::invalid_argument, "OAM curve ellipticities must be finite and > 0");
    }
    if (i > 0 && !(epsilons[i] > epsilons[i - 1])) {
      throw Error(ErrorCode::invalid_argument, "OAM curve ellipticities must strictly increase");
    }
  }
  OamCurve curve{p, m, sign, std::vector<OamSample>(epsilons.size())};
  parallel_for(epsilons.size(), [&](std::size_t k) {
    const double eps = epsilons[k];
    curve.samples[k] = {eps, oam_expectation(helical_state(p, m, sign, eps))};
  });
  return curve;
}

std::vector<double> linear_grid(double lo, double hi, int count) {
  if (count < 2 || !(hi > lo)) {
    throw Error(ErrorCode::invalid_argument, "grid needs count >= 2 and hi > lo");
  }
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  g.back() = hi;
  return g;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0)) throw Error(ErrorCode::invalid_argument, "log grid needs lo > 0");
  std::vector<double> g = linear_grid(std::log(lo), std::log(hi), count);
  for (double& v : g) v = std::exp(v);
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<TurningPoint> find_turning_points(const OamCurve& curve) {
  const auto& s = curve.samples;
  if (s.size() < 3) {
    throw Error(ErrorCode::invalid_argument, "turning points need at least 3 samples");
  }
  std::vector<TurningPoint> out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const bool is_min = s[i].oam < s[i - 1].oam && s[i].oam < s[i + 1].oam;
    const bool is_max = s[i].oam > s[i - 1].oam && s[i].oam > s[i + 1].oam;
    if (!is_min && !is_max) continue;
    const double x0 = s[i - 1].epsilon, x1 = s[i].epsilon, x2 = s[i + 1].epsilon;
    const double y0 = s[i - 1].oam, y1 = s[i].oam, y2 = s[i + 1].oam;
    const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
    const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    double xv = den != 0.0 ? x1 - 0.5 * num / den : x1;
    xv = std::clamp(xv, x0, x2);
    // Parabola value at the vertex (Lagrange form).
    const double l0 = (xv - x1) * (xv - x2) / ((x0 - x1) * (x0 - x2));
    const double l1 = (xv - x0) * (xv - x2) / ((x1 - x0) * (x1 - x2));
    const double l2 = (xv - x0) * (xv - x1) / ((x2 - x0) * (x2 - x1));
    out.push_back({xv, y0 * l0 + y1 * l1 + y2 * l2, is_min});
  }
  return out;
}

std::vector<double> find_crossings(const OamCurve& a, const OamCurve& b) {
  if (a.samples.size() != b.samples.size()) {
    throw Error(ErrorCode::grid_mismatch, "crossing search needs identical epsilon grids");
  }
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    if (a.samples[i].epsilon != b.samples[i].epsilon) {
      throw Error(ErrorCode::grid_mismatch, "crossing search needs identical epsilon grids");
    }
  }
  std::vector<double> out;
  const auto& s = a.samples;
  auto diff = [&](std::size_t i) { return a.samples[i].oam - b.samples[i].oam; };
  std::size_t last = s.size();  // index of the last nonzero difference
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double d = diff(i);
    if (d == 0.0) continue;
    if (last != s.size() && (diff(last) > 0.0) != (d > 0.0)) {
      if (last + 1 == i) {
        const double d0 = diff(last);
        const double t = d0 / (d0 - d);
        out.push_back(s[last].epsilon + t * (s[i].epsilon - s[last].epsilon));
      } else {
        out.push_back(s[last + 1].epsilon);  // touches zero exactly on a sample
      }
    }
    last = i;
  }
  return out;
}

}  // namespace elliptic_oam
