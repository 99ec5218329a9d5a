// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cmath>
#include <numbers>

#include "table.hpp"

namespace elliptic_oam::kernels::detail {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

void chebyshev_step2_avx2(ChebyshevFamily family, const double* coeffs,
                          std::size_t n_coeffs, const double* x, double* out,
                          std::size_t n) {
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d alpha = _mm256_fmsub_pd(_mm256_mul_pd(four, xv), xv, two);
    __m256d b1 = _mm256_setzero_pd();
    __m256d b2 = _mm256_setzero_pd();
    for (std::size_t r = n_coeffs; r-- > 1;) {
      const __m256d b = _mm256_sub_pd(
          _mm256_fmadd_pd(alpha, b1, _mm256_set1_pd(coeffs[r])), b2);
      b2 = b1;
      b1 = b;
    }
    __m256d b0 = _mm256_setzero_pd();
    if (n_coeffs > 0) {
      b0 = _mm256_sub_pd(_mm256_fmadd_pd(alpha, b1, _mm256_set1_pd(coeffs[0])), b2);
    }
    __m256d s;
    switch (family) {
      case ChebyshevFamily::first_even: {
        const __m256d y = _mm256_fmsub_pd(_mm256_mul_pd(two, xv), xv, one);
        s = _mm256_fnmadd_pd(y, b1, b0);
        break;
      }
      case ChebyshevFamily::first_odd:
        s = _mm256_mul_pd(xv, _mm256_sub_pd(b0, b1));
        break;
      case ChebyshevFamily::second_even:
        s = _mm256_add_pd(b0, b1);
        break;
      case ChebyshevFamily::second_odd:
      default:
        s = _mm256_mul_pd(_mm256_mul_pd(two, xv), b0);
        break;
    }
    _mm256_storeu_pd(out + i, s);
  }
  if (i < n) {
    scalar_table().chebyshev_step2(family, coeffs, n_coeffs, x + i, out + i, n - i);
  }
}

std::complex<double> weighted_sum_avx2(const double* w, const double* re,
                                       const double* im, std::size_t n) {
  __m256d sr = _mm256_setzero_pd();
  __m256d si = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d wv = _mm256_loadu_pd(w + i);
    sr = _mm256_fmadd_pd(wv, _mm256_loadu_pd(re + i), sr);
    si = _mm256_fmadd_pd(wv, _mm256_loadu_pd(im + i), si);
  }
  std::complex<double> acc{hsum(sr), hsum(si)};
  if (i < n) acc += scalar_table().weighted_sum(w + i, re + i, im + i, n - i);
  return acc;
}

std::complex<double> weighted_inner_avx2(const double* w, const double* a_re,
                                         const double* a_im, const double* b_re,
                                         const double* b_im, std::size_t n) {
  __m256d sr = _mm256_setzero_pd();
  __m256d si = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d wv = _mm256_loadu_pd(w + i);
    const __m256d ar = _mm256_loadu_pd(a_re + i);
    const __m256d ai = _mm256_loadu_pd(a_im + i);
    const __m256d br = _mm256_loadu_pd(b_re + i);
    const __m256d bi = _mm256_loadu_pd(b_im + i);
    const __m256d re = _mm256_fmadd_pd(ar, br, _mm256_mul_pd(ai, bi));
    const __m256d im = _mm256_fmsub_pd(ar, bi, _mm256_mul_pd(ai, br));
    sr = _mm256_fmadd_pd(wv, re, sr);
    si = _mm256_fmadd_pd(wv, im, si);
  }
  std::complex<double> acc{hsum(sr), hsum(si)};
  if (i < n) {
    acc += scalar_table().weighted_inner(w + i, a_re + i, a_im + i, b_re + i,
                                         b_im + i, n - i);
  }
  return acc;
}

inline __m256d wrap_phase(__m256d d) {
  const __m256d two_pi = _mm256_set1_pd(2.0 * std::numbers::pi);
  const __m256d inv = _mm256_set1_pd(0.5 / std::numbers::pi);
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(d, inv),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  return _mm256_fnmadd_pd(two_pi, k, d);
}

void plaquette_winding_avx2(const double* row0, const double* row1, double* turns,
                            double* max_jump, std::size_t n_plaquettes) {
  const __m256d inv_two_pi = _mm256_set1_pd(0.5 / std::numbers::pi);
  std::size_t i = 0;
  for (; i + 4 <= n_plaquettes; i += 4) {
    const __m256d a = _mm256_loadu_pd(row0 + i);
    const __m256d b = _mm256_loadu_pd(row0 + i + 1);
    const __m256d c = _mm256_loadu_pd(row1 + i + 1);
    const __m256d d = _mm256_loadu_pd(row1 + i);
    const __m256d d0 = wrap_phase(_mm256_sub_pd(b, a));
    const __m256d d1 = wrap_phase(_mm256_sub_pd(c, b));
    const __m256d d2 = wrap_phase(_mm256_sub_pd(d, c));
    const __m256d d3 = wrap_phase(_mm256_sub_pd(a, d));
    const __m256d sum = _mm256_add_pd(_mm256_add_pd(d0, d1), _mm256_add_pd(d2, d3));
    _mm256_storeu_pd(turns + i, _mm256_mul_pd(sum, inv_two_pi));
    const __m256d m = _mm256_max_pd(_mm256_max_pd(abs_pd(d0), abs_pd(d1)),
                                    _mm256_max_pd(abs_pd(d2), abs_pd(d3)));
    _mm256_storeu_pd(max_jump + i, m);
  }
  if (i < n_plaquettes) {
    scalar_table().plaquette_winding(row0 + i, row1 + i, turns + i, max_jump + i,
                                     n_plaquettes - i);
  }
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static constexpr KernelTable table{
      chebyshev_step2_avx2,
      weighted_sum_avx2,
      weighted_inner_avx2,
      plaquette_winding_avx2,
  };
  return table;
}

}  // namespace elliptic_oam::kernels::detail
