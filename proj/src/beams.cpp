#include "elliptic_oam/beams.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include "elliptic_oam/error.hpp"

namespace elliptic_oam {

std::string_view to_string(Helicity sign) noexcept {
  return sign == Helicity::plus ? "plus" : "minus";
}

Helicity parse_helicity(std::string_view text) {
  if (text == "plus" || text == "+") return Helicity::plus;
  if (text == "minus" || text == "-") return Helicity::minus;
  throw Error(ErrorCode::invalid_argument, "unknown sign '" + std::string{text} + "'");
}

std::string_view to_string(LgKind kind) noexcept {
  switch (kind) {
    case LgKind::even: return "even";
    case LgKind::odd: return "odd";
    case LgKind::helical_plus: return "helical_plus";
    case LgKind::helical_minus: return "helical_minus";
  }
  return "even";
}

LgKind parse_lg_kind(std::string_view text) {
  if (text == "even") return LgKind::even;
  if (text == "odd") return LgKind::odd;
  if (text == "helical_plus") return LgKind::helical_plus;
  if (text == "helical_minus") return LgKind::helical_minus;
  throw Error(ErrorCode::invalid_argument, "unknown field kind '" + std::string{text} + "'");
}

void BeamGeometry::validate() const {
  if (!(waist > 0.0) || !std::isfinite(waist)) {
    throw Error(ErrorCode::invalid_argument, "beam waist must be positive");
  }
  if (!(wavenumber > 0.0) || !std::isfinite(wavenumber)) {
    throw Error(ErrorCode::invalid_argument, "wavenumber must be positive");
  }
  if (!std::isfinite(z)) throw Error(ErrorCode::invalid_argument, "z must be finite");
}

double BeamGeometry::width() const noexcept {
  const double t = z / rayleigh_range();
  return waist * std::sqrt(1.0 + t * t);
}

double BeamGeometry::gouy_angle() const noexcept { return std::atan(z / rayleigh_range()); }

double BeamGeometry::curvature_phase(double r2) const noexcept {
  if (z == 0.0) return 0.0;
  const double zr = rayleigh_range();
  const double radius = z + zr * zr / z;
  return wavenumber * r2 / (2.0 * radius);
}

EllipticPoint cartesian_to_elliptic(double x, double y, double semifocal) {
  if (!(semifocal > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "semifocal distance must be positive");
  }
  const std::complex<double> zeta = std::acosh(std::complex<double>{x, y} / semifocal);
  double xi = zeta.real();
  double eta = zeta.imag();
  if (xi < 0.0) {  // not expected from the principal branch, but keep xi >= 0
    xi = -xi;
    eta = -eta;
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  eta = std::fmod(eta, two_pi);
  if (eta < 0.0) eta += two_pi;
  if (eta >= two_pi) eta = 0.0;
  return {xi, eta};
}

double semifocal_distance(double ellipticity, const BeamGeometry& geometry) {
  return geometry.width() * std::sqrt(0.5 * ellipticity);
}

namespace {

// Scale from the physical plane at z back to the waist plane, and the phase
// common to every mode of Gouy order `order` (2n + l, nx + ny, or p).
struct PropagationFactor {
  double to_waist = 1.0;  // w0 / w(z)
  const BeamGeometry* geometry = nullptr;
  int order = 0;

  std::complex<double> phase(double x, double y) const {
    if (geometry->z == 0.0) return {1.0, 0.0};
    const double arg = geometry->curvature_phase(x * x + y * y) -
                       (order + 1) * geometry->gouy_angle();
    return std::polar(1.0, arg);
  }
};

PropagationFactor propagation(const BeamGeometry& geometry, int order) {
  geometry.validate();
  return {geometry.waist / geometry.width(), &geometry, order};
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double generalized_laguerre(int n, double alpha, double x) {
  if (n == 0) return 1.0;
  double l0 = 1.0;
  double l1 = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double l2 = ((2.0 * k + 1.0 + alpha - x) * l1 - (k + alpha) * l0) / (k + 1.0);
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

double hermite(int n, double x) {
  if (n == 0) return 1.0;
  double h0 = 1.0;
  double h1 = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

}  // namespace

std::complex<double> eval_gaussian(const BeamGeometry& geometry, double x, double y) {
  const auto prop = propagation(geometry, 0);
  const double w = geometry.width();
  const double r2 = x * x + y * y;
  return prop.to_waist * std::exp(-r2 / (w * w)) * prop.phase(x, y);
}

std::complex<double> eval_lg(int n, int l, LgKind kind, const BeamGeometry& geometry,
                             double x, double y) {
  if (n < 0 || l < 0) throw Error(ErrorCode::invalid_mode, "LG indices must be non-negative");
  if (kind != LgKind::even && l < 1) {
    throw Error(ErrorCode::invalid_mode, "odd and helical LG modes need l >= 1");
  }
  const auto prop = propagation(geometry, 2 * n + l);
  const double w = geometry.width();
  const double u = std::numbers::sqrt2 / w;
  const double r2 = x * x + y * y;
  const double t = 2.0 * r2 / (w * w);
  // (sqrt2 r / w)^l e^{i l phi} without an explicit angle.
  const std::complex<double> vortex = std::pow(std::complex<double>{u * x, u * y}, l);
  const double radial = generalized_laguerre(n, l, t) * std::exp(-r2 / (w * w));
  const double ratio = factorial(n) / factorial(n + l);
  std::complex<double> angular;
  double norm;
  switch (kind) {
    case LgKind::even:
      norm = std::sqrt(4.0 * ratio / ((l == 0 ? 2.0 : 1.0) * std::numbers::pi)) / w;
      angular = l == 0 ? std::complex<double>{1.0, 0.0} : vortex.real();
      break;
    case LgKind::odd:
      norm = std::sqrt(4.0 * ratio / std::numbers::pi) / w;
      angular = vortex.imag();
      break;
    case LgKind::helical_plus:
      norm = std::sqrt(2.0 * ratio / std::numbers::pi) / w;
      angular = vortex;
      break;
    case LgKind::helical_minus:
    default:
      norm = std::sqrt(2.0 * ratio / std::numbers::pi) / w;
      angular = std::conj(vortex);
      break;
  }
  return norm * radial * angular * prop.phase(x, y);
}

std::complex<double> eval_hg(int nx, int ny, const BeamGeometry& geometry, double x, double y) {
  if (nx < 0 || ny < 0) throw Error(ErrorCode::invalid_mode, "HG indices must be non-negative");
  const auto prop = propagation(geometry, nx + ny);
  const double w = geometry.width();
  const double u = std::numbers::sqrt2 / w;
  auto norm1d = [w](int n) {
    return std::pow(2.0 / std::numbers::pi, 0.25) /
           std::sqrt(std::ldexp(1.0, n) * factorial(n) * w);
  };
  const double value = norm1d(nx) * norm1d(ny) * hermite(nx, u * x) * hermite(ny, u * y) *
                       std::exp(-(x * x + y * y) / (w * w));
  return value * prop.phase(x, y);
}

namespace {

constexpr double kNormHalfWidth = 8.0;
constexpr int kNormNodes = 128;

// Unnormalized E(xi) N(eta) exp(-r^2/w0^2) at the waist plane.
void raw_ig(const IncePolynomial& poly, double waist, std::span<const double> xs,
            std::span<const double> ys, std::span<double> out) {
  const std::size_t n = xs.size();
  const double f = waist * std::sqrt(0.5 * poly.ellipticity);
  std::vector<double> ch(n), sh(n), c(n), s(n), radial(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::complex<double> zeta = std::acosh(std::complex<double>{xs[i], ys[i]} / f);
    ch[i] = std::cosh(zeta.real());
    sh[i] = std::sinh(zeta.real());
    c[i] = std::cos(zeta.imag());
    s[i] = std::sin(zeta.imag());
  }
  eval_radial_batch(poly, ch, sh, radial);
  eval_angular_batch(poly, c, s, out);
  const double inv_w2 = 1.0 / (waist * waist);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] *= radial[i] * std::exp(-(xs[i] * xs[i] + ys[i] * ys[i]) * inv_w2);
  }
}

double compute_normalization(const ModeIndex& mode, double ellipticity) {
  const IncePolynomial poly = solve_ince(mode, ellipticity);
  const linalg::PlaneQuadrature quad(kNormHalfWidth, kNormNodes);
  std::vector<double> xs(quad.size()), ys(quad.size()), v(quad.size());
  for (std::size_t k = 0; k < quad.size(); ++k) {
    xs[k] = quad.x(k);
    ys[k] = quad.y(k);
  }
  raw_ig(poly, 1.0, xs, ys, v);
  const std::vector<double> zeros(quad.size(), 0.0);
  const double norm2 = quad.inner(v, zeros, v, zeros).real();
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw Error(ErrorCode::numerical_failure, "IG normalization integral is not positive");
  }
  return 1.0 / std::sqrt(norm2);
}

struct NormEntry {
  std::once_flag once;
  double value = 0.0;
};

}  // namespace

double ig_normalization(const ModeIndex& mode, double ellipticity) {
  require_valid(mode);
  if (!(ellipticity > 0.0) || !std::isfinite(ellipticity)) {
    throw Error(ErrorCode::invalid_argument, "IG beams need ellipticity > 0");
  }
  using Key = std::tuple<int, int, int, double>;
  static std::mutex mutex;
  static std::map<Key, std::unique_ptr<NormEntry>> cache;
  NormEntry* entry = nullptr;
  {
    const std::lock_guard lock(mutex);
    auto& slot = cache[Key{mode.p, mode.m, static_cast<int>(mode.parity), ellipticity}];
    if (!slot) slot = std::make_unique<NormEntry>();
    entry = slot.get();
  }
  std::call_once(entry->once, [&] { entry->value = compute_normalization(mode, ellipticity); });
  return entry->value;
}

IgBeam::IgBeam(const ModeIndex& mode, double ellipticity, const BeamGeometry& geometry)
    : poly_(), geometry_(geometry), norm_w1_(0.0) {
  geometry_.validate();
  norm_w1_ = ig_normalization(mode, ellipticity);
  poly_ = solve_ince(mode, ellipticity);
}

void IgBeam::evaluate(std::span<const double> x, std::span<const double> y,
                      std::span<std::complex<double>> out) const {
  if (x.size() != y.size() || x.size() != out.size()) {
    throw Error(ErrorCode::invalid_argument, "IgBeam::evaluate: span size mismatch");
  }
  const auto prop = propagation(geometry_, poly_.mode.p);
  const double w0 = geometry_.waist;
  const std::size_t n = x.size();
  std::vector<double> xs(n), ys(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = x[i] * prop.to_waist;
    ys[i] = y[i] * prop.to_waist;
  }
  raw_ig(poly_, w0, xs, ys, v);
  const double amplitude = prop.to_waist * norm_w1_ / w0;
  for (std::size_t i = 0; i < n; ++i) out[i] = amplitude * v[i] * prop.phase(x[i], y[i]);
}

std::complex<double> IgBeam::operator()(double x, double y) const {
  std::complex<double> out;
  evaluate({&x, 1}, {&y, 1}, {&out, 1});
  return out;
}

namespace {

ModeIndex odd_partner(int p, int m) {
  if (m < 1) {
    throw Error(ErrorCode::invalid_mode, "helical IG modes need m >= 1 (no odd partner)");
  }
  return make_mode(p, m, Parity::odd);
}

}  // namespace

HigBeam::HigBeam(int p, int m, Helicity sign, double ellipticity, const BeamGeometry& geometry)
    : even_(make_mode(p, m, Parity::even), ellipticity, geometry),
      odd_(odd_partner(p, m), ellipticity, geometry),
      sign_(sign) {}

void HigBeam::evaluate(std::span<const double> x, std::span<const double> y,
                       std::span<std::complex<double>> out) const {
  std::vector<std::complex<double>> odd(out.size());
  even_.evaluate(x, y, out);
  odd_.evaluate(x, y, odd);
  const std::complex<double> i_sign{0.0, sign_of(sign_)};
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = (out[k] + i_sign * odd[k]) / std::numbers::sqrt2;
  }
}

std::complex<double> HigBeam::operator()(double x, double y) const {
  std::complex<double> out;
  evaluate({&x, 1}, {&y, 1}, {&out, 1});
  return out;
}

std::complex<double> eval_ig(const ModeIndex& mode, double ellipticity,
                             const BeamGeometry& geometry, double x, double y) {
  return IgBeam(mode, ellipticity, geometry)(x, y);
}

std::complex<double> eval_hig(const ModeIndex& mode, Helicity sign, double ellipticity,
                              const BeamGeometry& geometry, double x, double y) {
  return HigBeam(mode.p, mode.m, sign, ellipticity, geometry)(x, y);
}

namespace {

ComplexField empty_grid(double half_width, int resolution, GridAlignment alignment) {
  if (resolution < 16) throw Error(ErrorCode::invalid_argument, "sample_grid: resolution must be >= 16");
  if (!(half_width > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "sample_grid: window half width must be positive");
  }
  ComplexField field;
  field.nx = resolution;
  field.ny = resolution;
  field.spacing = 2.0 * half_width / resolution;
  const double offset = alignment == GridAlignment::cell_centered ? 0.5 * field.spacing : 0.0;
  field.origin_x = -half_width + offset;
  field.origin_y = -half_width + offset;
  field.values.resize(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
  return field;
}

}  // namespace

ComplexField sample_grid(const std::function<std::complex<double>(double, double)>& fn,
                         double window_half_width, int resolution, GridAlignment alignment) {
  ComplexField field = empty_grid(window_half_width, resolution, alignment);
  for (int j = 0; j < field.ny; ++j) {
    for (int i = 0; i < field.nx; ++i) {
      field.values[static_cast<std::size_t>(j) * static_cast<std::size_t>(field.nx) +
                   static_cast<std::size_t>(i)] = fn(field.x(i), field.y(j));
    }
  }
  return field;
}

ComplexField sample_grid(const BatchField& fn, double window_half_width, int resolution,
                         GridAlignment alignment) {
  ComplexField field = empty_grid(window_half_width, resolution, alignment);
  const auto nx = static_cast<std::size_t>(field.nx);
  std::vector<double> xs(nx), ys(nx);
  for (std::size_t i = 0; i < nx; ++i) xs[i] = field.x(static_cast<int>(i));
  for (int j = 0; j < field.ny; ++j) {
    std::fill(ys.begin(), ys.end(), field.y(j));
    fn(xs, ys, std::span{field.values}.subspan(static_cast<std::size_t>(j) * nx, nx));
  }
  return field;
}

PlaneSamples sample_on(const linalg::PlaneQuadrature& quad, const BatchField& field) {
  const std::size_t n = quad.size();
  std::vector<double> xs(n), ys(n);
  for (std::size_t k = 0; k < n; ++k) {
    xs[k] = quad.x(k);
    ys[k] = quad.y(k);
  }
  std::vector<std::complex<double>> values(n);
  field(xs, ys, values);
  PlaneSamples out{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.re[k] = values[k].real();
    out.im[k] = values[k].imag();
  }
  return out;
}

PlaneSamples sample_on(const linalg::PlaneQuadrature& quad,
                       const std::function<std::complex<double>(double, double)>& field) {
  return sample_on(quad, BatchField{[&](std::span<const double> xs, std::span<const double> ys,
                                        std::span<std::complex<double>> out) {
                     for (std::size_t k = 0; k < xs.size(); ++k) out[k] = field(xs[k], ys[k]);
                   }});
}

}  // namespace elliptic_oam
