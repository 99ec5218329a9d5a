#include "elliptic_oam/ince.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "elliptic_oam/error.hpp"
#include "elliptic_oam/kernels.hpp"

namespace elliptic_oam {

std::string_view to_string(Parity parity) noexcept {
  return parity == Parity::even ? "even" : "odd";
}

Parity parse_parity(std::string_view text) {
  if (text == "even" || text == "e") return Parity::even;
  if (text == "odd" || text == "o") return Parity::odd;
  throw Error(ErrorCode::invalid_argument, "unknown parity '" + std::string{text} + "'");
}

bool ModeIndex::is_valid() const noexcept {
  if (p < 0 || m < 0 || m > p) return false;
  if ((p - m) % 2 != 0) return false;
  if (parity == Parity::odd && m < 1) return false;
  return true;
}

std::string ModeIndex::label() const {
  return std::string{"IG"} + (parity == Parity::even ? "e" : "o") + "(" + std::to_string(p) +
         "," + std::to_string(m) + ")";
}

void require_valid(const ModeIndex& mode) {
  if (!mode.is_valid()) {
    throw Error(ErrorCode::invalid_mode,
                "invalid Ince mode " + mode.label() +
                    ": need 0 <= m <= p, p and m of equal parity, m >= 1 for odd modes");
  }
}

ModeIndex make_mode(int p, int m, Parity parity) {
  ModeIndex mode{p, m, parity};
  require_valid(mode);
  return mode;
}

SeriesClass series_class(const ModeIndex& mode) noexcept {
  const bool even_p = mode.p % 2 == 0;
  if (mode.parity == Parity::even) {
    return even_p ? SeriesClass::cos_even_harmonics : SeriesClass::cos_odd_harmonics;
  }
  return even_p ? SeriesClass::sin_even_harmonics : SeriesClass::sin_odd_harmonics;
}

int first_harmonic(SeriesClass series) noexcept {
  switch (series) {
    case SeriesClass::cos_even_harmonics: return 0;
    case SeriesClass::sin_even_harmonics: return 2;
    case SeriesClass::cos_odd_harmonics:
    case SeriesClass::sin_odd_harmonics: return 1;
  }
  return 0;
}

std::size_t series_length(const ModeIndex& mode) noexcept {
  const int last = mode.p;  // highest harmonic always has the parity of p
  const int first = first_harmonic(series_class(mode));
  return last < first ? 0 : static_cast<std::size_t>((last - first) / 2 + 1);
}

double IncePolynomial::coefficient_of_harmonic(int l) const noexcept {
  const int k0 = first_harmonic(series());
  if (l < k0 || (l - k0) % 2 != 0) return 0.0;
  const auto r = static_cast<std::size_t>((l - k0) / 2);
  return r < fourier.size() ? fourier[r] : 0.0;
}

linalg::TridiagonalMatrix build_recurrence_matrix(const ModeIndex& mode, double ellipticity) {
  require_valid(mode);
  if (!(ellipticity >= 0.0) || !std::isfinite(ellipticity)) {
    throw Error(ErrorCode::invalid_argument, "ellipticity must be finite and >= 0");
  }
  const SeriesClass series = series_class(mode);
  const std::size_t n = series_length(mode);
  const int k0 = first_harmonic(series);
  const double p = mode.p;
  const double half_eps = 0.5 * ellipticity;

  // Collecting the coefficient of harmonic j after substitution gives
  //   a F_j = j^2 F_j + (eps/2)(p + j + 2) F_{j+2} + (eps/2)(p - j + 2) F_{j-2},
  // plus the fold-back terms of harmonics that would go negative.
  std::vector<double> diag(n);
  std::vector<double> sup(n > 0 ? n - 1 : 0);
  std::vector<double> sub(n > 0 ? n - 1 : 0);
  for (std::size_t r = 0; r < n; ++r) {
    const double j = k0 + 2.0 * static_cast<double>(r);
    diag[r] = j * j;
    if (r + 1 < n) {
      sup[r] = half_eps * (p + j + 2.0);
      sub[r] = half_eps * (p - j);
    }
  }
  switch (series) {
    case SeriesClass::cos_even_harmonics:
      // cos(-2 eta) = cos(2 eta): the constant term feeds harmonic 2 twice.
      if (n > 1) sub[0] = ellipticity * p;
      break;
    case SeriesClass::cos_odd_harmonics:
      diag[0] += half_eps * (p + 1.0);
      break;
    case SeriesClass::sin_odd_harmonics:
      diag[0] -= half_eps * (p + 1.0);
      break;
    case SeriesClass::sin_even_harmonics:
      break;  // sin(0) = 0, nothing folds back
  }
  return linalg::TridiagonalMatrix(std::move(sub), std::move(diag), std::move(sup));
}

IncePolynomial solve_ince(const ModeIndex& mode, double ellipticity) {
  const auto matrix = build_recurrence_matrix(mode, ellipticity);
  auto eig = linalg::eigen_tridiagonal(matrix);
  const auto rank =
      static_cast<std::size_t>((mode.m - first_harmonic(series_class(mode))) / 2);
  const double a = eig.eigenvalues[rank];
  const double tol = 1e-12 * (1.0 + std::fabs(a));
  const bool collides_below = rank > 0 && std::fabs(a - eig.eigenvalues[rank - 1]) <= tol;
  const bool collides_above =
      rank + 1 < eig.eigenvalues.size() && std::fabs(eig.eigenvalues[rank + 1] - a) <= tol;
  if (collides_below || collides_above) {
    throw Error(ErrorCode::numerical_failure,
                "Ince eigenvalue collision for " + mode.label() + " at eps=" +
                    std::to_string(ellipticity));
  }
  return IncePolynomial{mode, ellipticity, a, std::move(eig.eigenvectors[rank])};
}

namespace {

kernels::ChebyshevFamily family_of(SeriesClass series) noexcept {
  switch (series) {
    case SeriesClass::cos_even_harmonics: return kernels::ChebyshevFamily::first_even;
    case SeriesClass::cos_odd_harmonics: return kernels::ChebyshevFamily::first_odd;
    case SeriesClass::sin_even_harmonics: return kernels::ChebyshevFamily::second_odd;
    case SeriesClass::sin_odd_harmonics: return kernels::ChebyshevFamily::second_even;
  }
  return kernels::ChebyshevFamily::first_even;
}

bool is_sine(SeriesClass series) noexcept {
  return series == SeriesClass::sin_even_harmonics ||
         series == SeriesClass::sin_odd_harmonics;
}

void eval_chebyshev_form(const IncePolynomial& poly, std::span<const double> c,
                         std::span<const double> s, std::span<double> out) {
  if (c.size() != out.size() || s.size() != out.size()) {
    throw Error(ErrorCode::invalid_argument, "Ince batch evaluation: span size mismatch");
  }
  const SeriesClass series = poly.series();
  kernels::chebyshev_step2(family_of(series), poly.fourier, c, out);
  if (is_sine(series)) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= s[i];
  }
}

}  // namespace

void eval_angular_batch(const IncePolynomial& poly, std::span<const double> cos_eta,
                        std::span<const double> sin_eta, std::span<double> out) {
  eval_chebyshev_form(poly, cos_eta, sin_eta, out);
}

void eval_radial_batch(const IncePolynomial& poly, std::span<const double> cosh_xi,
                       std::span<const double> sinh_xi, std::span<double> out) {
  eval_chebyshev_form(poly, cosh_xi, sinh_xi, out);
}

double eval_angular(const IncePolynomial& poly, double eta) {
  const double c = std::cos(eta);
  const double s = std::sin(eta);
  double out = 0.0;
  eval_angular_batch(poly, {&c, 1}, {&s, 1}, {&out, 1});
  return out;
}

double eval_radial(const IncePolynomial& poly, double xi) {
  const double c = std::cosh(xi);
  const double s = std::sinh(xi);
  double out = 0.0;
  eval_radial_batch(poly, {&c, 1}, {&s, 1}, {&out, 1});
  return out;
}

double ince_ode_residual(const IncePolynomial& poly, int samples) {
  if (samples < 8) {
    throw Error(ErrorCode::invalid_argument, "ince_ode_residual: samples must be >= 8");
  }
  const bool sine = is_sine(poly.series());
  const double eps = poly.ellipticity;
  const double p = poly.mode.p;
  double worst = 0.0;
  double peak = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double eta = 2.0 * std::numbers::pi * j / samples;
    double n0 = 0.0;
    double n1 = 0.0;
    double n2 = 0.0;
    for (std::size_t r = 0; r < poly.fourier.size(); ++r) {
      const double k = poly.harmonic(r);
      const double c = std::cos(k * eta);
      const double s = std::sin(k * eta);
      const double f = poly.fourier[r];
      if (sine) {
        n0 += f * s;
        n1 += f * k * c;
        n2 -= f * k * k * s;
      } else {
        n0 += f * c;
        n1 -= f * k * s;
        n2 -= f * k * k * c;
      }
    }
    const double res = n2 + eps * std::sin(2.0 * eta) * n1 +
                       (poly.eigenvalue - p * eps * std::cos(2.0 * eta)) * n0;
    worst = std::max(worst, std::fabs(res));
    peak = std::max(peak, std::fabs(n0));
  }
  return worst / (1.0 + peak);
}

}  // namespace elliptic_oam
