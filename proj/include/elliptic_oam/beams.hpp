#pragma once
// Paraxial mode fields: fundamental Gaussian, Laguerre-Gauss, Hermite-Gauss,
// Ince-Gauss and helical Ince-Gauss. All mode fields are normalized to unit
// L2 norm over the transverse plane. z = 0 is the waist plane; z != 0 only
// rescales by w(z) and applies curvature and Gouy phases.

#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "elliptic_oam/ince.hpp"
#include "elliptic_oam/linalg.hpp"

namespace elliptic_oam {

enum class Helicity { plus, minus };

std::string_view to_string(Helicity sign) noexcept;
Helicity parse_helicity(std::string_view text);
inline double sign_of(Helicity h) noexcept { return h == Helicity::plus ? 1.0 : -1.0; }

struct BeamGeometry {
  double waist = 1.0;                            // w(0)
  double wavenumber = 2.0 * std::numbers::pi;    // k
  double z = 0.0;

  void validate() const;
  double rayleigh_range() const noexcept { return 0.5 * wavenumber * waist * waist; }
  double width() const noexcept;                 // w(z)
  double gouy_angle() const noexcept;            // arctan(2z / (k w0^2))
  // k r^2 / (2 R(z)); zero at the waist.
  double curvature_phase(double r2) const noexcept;
};

struct EllipticPoint {
  double xi = 0.0;   // >= 0
  double eta = 0.0;  // [0, 2 pi)
};

// Inverse of x = f cosh(xi) cos(eta), y = f sinh(xi) sin(eta), through the
// principal complex arccosh of (x + i y) / f.
EllipticPoint cartesian_to_elliptic(double x, double y, double semifocal);

// Semifocal distance f(z) = w(z) sqrt(eps / 2).
double semifocal_distance(double ellipticity, const BeamGeometry& geometry);

// Fundamental Gaussian with unit amplitude at the waist center.
std::complex<double> eval_gaussian(const BeamGeometry& geometry, double x, double y);

enum class LgKind { even, odd, helical_plus, helical_minus };

std::string_view to_string(LgKind kind) noexcept;
LgKind parse_lg_kind(std::string_view text);

// Normalized LG_{n,l}: even ~ cos(l phi), odd ~ sin(l phi), helical ~ exp(+-i l phi).
std::complex<double> eval_lg(int n, int l, LgKind kind, const BeamGeometry& geometry,
                             double x, double y);

// Normalized HG_{nx,ny}.
std::complex<double> eval_hg(int nx, int ny, const BeamGeometry& geometry, double x,
                             double y);

// 1 / sqrt(integral |E(xi) N(eta) exp(-r^2)|^2) at w0 = 1, by Gauss-Legendre
// quadrature. Computed once per (mode, eps) and cached; thread safe.
double ig_normalization(const ModeIndex& mode, double ellipticity);

using BatchField = std::function<void(std::span<const double> x, std::span<const double> y,
                                      std::span<std::complex<double>> out)>;

class IgBeam {
 public:
  IgBeam(const ModeIndex& mode, double ellipticity, const BeamGeometry& geometry = {});

  const ModeIndex& mode() const noexcept { return poly_.mode; }
  double ellipticity() const noexcept { return poly_.ellipticity; }
  const BeamGeometry& geometry() const noexcept { return geometry_; }
  const IncePolynomial& polynomial() const noexcept { return poly_; }
  double semifocal() const noexcept { return semifocal_distance(ellipticity(), geometry_); }

  std::complex<double> operator()(double x, double y) const;
  void evaluate(std::span<const double> x, std::span<const double> y,
                std::span<std::complex<double>> out) const;

 private:
  IncePolynomial poly_;
  BeamGeometry geometry_;
  double norm_w1_;  // normalization at w0 = 1
};

// (IG^e +- i IG^o) / sqrt(2).
class HigBeam {
 public:
  HigBeam(int p, int m, Helicity sign, double ellipticity, const BeamGeometry& geometry = {});

  Helicity helicity() const noexcept { return sign_; }
  const IgBeam& even() const noexcept { return even_; }
  const IgBeam& odd() const noexcept { return odd_; }
  double semifocal() const noexcept { return even_.semifocal(); }

  std::complex<double> operator()(double x, double y) const;
  void evaluate(std::span<const double> x, std::span<const double> y,
                std::span<std::complex<double>> out) const;

 private:
  IgBeam even_;
  IgBeam odd_;
  Helicity sign_;
};

// Point evaluators. eps > 0; eval_hig requires m >= 1.
std::complex<double> eval_ig(const ModeIndex& mode, double ellipticity,
                             const BeamGeometry& geometry, double x, double y);
std::complex<double> eval_hig(const ModeIndex& mode, Helicity sign, double ellipticity,
                              const BeamGeometry& geometry, double x, double y);

// Field sampled on a uniform square grid, row-major with y as the slow index.
struct ComplexField {
  int nx = 0;
  int ny = 0;
  double origin_x = 0.0;  // coordinates of sample (0, 0)
  double origin_y = 0.0;
  double spacing = 0.0;
  std::vector<std::complex<double>> values;

  double x(int i) const noexcept { return origin_x + spacing * i; }
  double y(int j) const noexcept { return origin_y + spacing * j; }
  const std::complex<double>& at(int i, int j) const {
    return values[static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
                  static_cast<std::size_t>(i)];
  }
};

enum class GridAlignment {
  node_at_origin,  // x_i = -H + i * 2H/res; the origin is a sample
  cell_centered,   // x_i = -H + (i + 1/2) * 2H/res; the origin is a cell corner
};

ComplexField sample_grid(const std::function<std::complex<double>(double, double)>& field,
                         double window_half_width, int resolution,
                         GridAlignment alignment = GridAlignment::node_at_origin);
ComplexField sample_grid(const BatchField& field, double window_half_width, int resolution,
                         GridAlignment alignment = GridAlignment::node_at_origin);

// Field values at the points of a plane quadrature, split into re/im arrays.
struct PlaneSamples {
  std::vector<double> re;
  std::vector<double> im;
};
PlaneSamples sample_on(const linalg::PlaneQuadrature& quad, const BatchField& field);
PlaneSamples sample_on(const linalg::PlaneQuadrature& quad,
                       const std::function<std::complex<double>(double, double)>& field);

}  // namespace elliptic_oam
