#include <cmath>
#include <numbers>

#include "table.hpp"

namespace elliptic_oam::kernels::detail {
namespace {

void chebyshev_step2_scalar(ChebyshevFamily family, const double* coeffs,
                            std::size_t n_coeffs, const double* x, double* out,
                            std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double alpha = 4.0 * xi * xi - 2.0;
    double b1 = 0.0;
    double b2 = 0.0;
    for (std::size_t r = n_coeffs; r-- > 1;) {
      const double b = coeffs[r] + alpha * b1 - b2;
      b2 = b1;
      b1 = b;
    }
    const double b0 = n_coeffs > 0 ? coeffs[0] + alpha * b1 - b2 : 0.0;
    out[i] = chebyshev_close(family, xi, b0, b1);
  }
}

std::complex<double> weighted_sum_scalar(const double* w, const double* re,
                                         const double* im, std::size_t n) {
  double sr = 0.0;
  double si = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sr += w[i] * re[i];
    si += w[i] * im[i];
  }
  return {sr, si};
}

std::complex<double> weighted_inner_scalar(const double* w, const double* a_re,
                                           const double* a_im, const double* b_re,
                                           const double* b_im, std::size_t n) {
  double sr = 0.0;
  double si = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sr += w[i] * (a_re[i] * b_re[i] + a_im[i] * b_im[i]);
    si += w[i] * (a_re[i] * b_im[i] - a_im[i] * b_re[i]);
  }
  return {sr, si};
}

inline double wrap_phase(double d) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return d - two_pi * std::nearbyint(d / two_pi);
}

void plaquette_winding_scalar(const double* row0, const double* row1, double* turns,
                              double* max_jump, std::size_t n_plaquettes) {
  constexpr double inv_two_pi = 0.5 / std::numbers::pi;
  for (std::size_t i = 0; i < n_plaquettes; ++i) {
    const double d0 = wrap_phase(row0[i + 1] - row0[i]);
    const double d1 = wrap_phase(row1[i + 1] - row0[i + 1]);
    const double d2 = wrap_phase(row1[i] - row1[i + 1]);
    const double d3 = wrap_phase(row0[i] - row1[i]);
    turns[i] = (d0 + d1 + d2 + d3) * inv_two_pi;
    max_jump[i] = std::fmax(std::fmax(std::fabs(d0), std::fabs(d1)),
                            std::fmax(std::fabs(d2), std::fabs(d3)));
  }
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static constexpr KernelTable table{
      chebyshev_step2_scalar,
      weighted_sum_scalar,
      weighted_inner_scalar,
      plaquette_winding_scalar,
  };
  return table;
}

}  // namespace elliptic_oam::kernels::detail
