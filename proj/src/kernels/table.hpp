#pragma once

#include <complex>
#include <cstddef>

#include "elliptic_oam/kernels.hpp"

namespace elliptic_oam::kernels::detail {

struct KernelTable {
  void (*chebyshev_step2)(ChebyshevFamily, const double* coeffs, std::size_t n_coeffs,
                          const double* x, double* out, std::size_t n);
  std::complex<double> (*weighted_sum)(const double* w, const double* re,
                                       const double* im, std::size_t n);
  std::complex<double> (*weighted_inner)(const double* w, const double* a_re,
                                         const double* a_im, const double* b_re,
                                         const double* b_im, std::size_t n);
  void (*plaquette_winding)(const double* row0, const double* row1, double* turns,
                            double* max_jump, std::size_t n_plaquettes);
};

const KernelTable& scalar_table() noexcept;
#if defined(ELLIPTIC_OAM_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif

// Clenshaw closing step: S = b0 * q0(x) + b1 * tail(x).
inline double chebyshev_close(ChebyshevFamily family, double x, double b0, double b1) {
  switch (family) {
    case ChebyshevFamily::first_even:
      return b0 - (2.0 * x * x - 1.0) * b1;
    case ChebyshevFamily::first_odd:
      return x * (b0 - b1);
    case ChebyshevFamily::second_even:
      return b0 + b1;
    case ChebyshevFamily::second_odd:
      return 2.0 * x * b0;
  }
  return 0.0;
}

}  // namespace elliptic_oam::kernels::detail
