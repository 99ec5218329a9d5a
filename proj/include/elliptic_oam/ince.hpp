#pragma once
// Ince polynomials: periodic polynomial solutions of the Ince equation
//
//   N''(eta) + eps sin(2 eta) N'(eta) + (a - p eps cos(2 eta)) N(eta) = 0
//
// expanded as finite cosine (even parity) or sine (odd parity) series with a
// fixed harmonic parity. Substituting the series turns the equation into a
// tridiagonal eigenproblem for (a, coefficients).

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elliptic_oam/linalg.hpp"

namespace elliptic_oam {

enum class Parity { even, odd };

std::string_view to_string(Parity parity) noexcept;
Parity parse_parity(std::string_view text);

// (p, m, parity) label of an Ince-Gauss mode. Construct through make_mode()
// to get validation.
struct ModeIndex {
  int p = 0;
  int m = 0;
  Parity parity = Parity::even;

  bool is_valid() const noexcept;
  std::string label() const;

  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

// Throws Error(invalid_mode) unless 0 <= m <= p, p = m (mod 2), and m >= 1
// for odd parity.
ModeIndex make_mode(int p, int m, Parity parity);
void require_valid(const ModeIndex& mode);

// The four series classes: parity of the mode times parity of p.
enum class SeriesClass {
  cos_even_harmonics,  // even mode, even p: A_r cos(2r eta)
  cos_odd_harmonics,   // even mode, odd p:  A_r cos((2r+1) eta)
  sin_even_harmonics,  // odd mode, even p:  B_r sin((2r+2) eta)
  sin_odd_harmonics,   // odd mode, odd p:   B_r sin((2r+1) eta)
};

SeriesClass series_class(const ModeIndex& mode) noexcept;
int first_harmonic(SeriesClass series) noexcept;
std::size_t series_length(const ModeIndex& mode) noexcept;

struct IncePolynomial {
  ModeIndex mode;
  double ellipticity = 0.0;
  double eigenvalue = 0.0;
  // Unit Euclidean norm; entry r multiplies harmonic first_harmonic + 2r.
  std::vector<double> fourier;

  SeriesClass series() const noexcept { return series_class(mode); }
  int harmonic(std::size_t r) const noexcept {
    return first_harmonic(series()) + 2 * static_cast<int>(r);
  }
  // Coefficient of cos(l eta) / sin(l eta); zero if l is not in the series.
  double coefficient_of_harmonic(int l) const noexcept;
};

linalg::TridiagonalMatrix build_recurrence_matrix(const ModeIndex& mode, double ellipticity);

// Picks the eigenpair whose rank in ascending eigenvalue order corresponds
// to m. Throws Error(numerical_failure) on an eigenvalue collision.
IncePolynomial solve_ince(const ModeIndex& mode, double ellipticity);

double eval_angular(const IncePolynomial& poly, double eta);
// Real factor of the series at imaginary argument i*xi: sum A cosh(k xi)
// for even modes, sum B sinh(k xi) for odd modes.
double eval_radial(const IncePolynomial& poly, double xi);

// Batch forms for the field evaluators. The angular form takes cos(eta) and
// sin(eta), the radial form cosh(xi) and sinh(xi); both go through the
// Chebyshev kernels.
void eval_angular_batch(const IncePolynomial& poly, std::span<const double> cos_eta,
                        std::span<const double> sin_eta, std::span<double> out);
void eval_radial_batch(const IncePolynomial& poly, std::span<const double> cosh_xi,
                       std::span<const double> sinh_xi, std::span<double> out);

// max |N'' + eps sin(2 eta) N' + (a - p eps cos(2 eta)) N| / (1 + max |N|)
// over eta_j = 2 pi j / samples, derivatives taken term by term.
double ince_ode_residual(const IncePolynomial& poly, int samples = 256);

}  // namespace elliptic_oam
