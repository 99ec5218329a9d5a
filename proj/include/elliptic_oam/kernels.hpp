#pragma once
// Data-parallel inner loops shared by the physics modules.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant. The active backend is picked once at startup from the
// CPU features (override with ELLIPTIC_OAM_SIMD=scalar|avx2) and can be
// switched explicitly for equivalence testing.

#include <complex>
#include <span>
#include <string_view>

namespace elliptic_oam::kernels {

enum class Backend { scalar, avx2 };

std::string_view to_string(Backend backend) noexcept;

bool backend_available(Backend backend) noexcept;
Backend active_backend() noexcept;
// Throws Error(invalid_argument) if the backend is not available on this CPU.
void set_backend(Backend backend);

// Step-2 Chebyshev families. A cosine harmonic series in an angle theta is a
// series in T_k(cos theta); a sine series is sin(theta) times a series in
// U_{k-1}(cos theta). The same identities hold for cosh/sinh with
// x = cosh(xi), which is why one kernel serves both the angular and the
// radial Ince functions.
enum class ChebyshevFamily {
  first_even,   // sum c_r T_{2r}(x)
  first_odd,    // sum c_r T_{2r+1}(x)
  second_even,  // sum c_r U_{2r}(x)
  second_odd,   // sum c_r U_{2r+1}(x)
};

// out[i] = sum_r coeffs[r] * P_{d0 + 2r}(x[i]) via Clenshaw. x and out may alias.
void chebyshev_step2(ChebyshevFamily family, std::span<const double> coeffs,
                     std::span<const double> x, std::span<double> out);

// sum_i w[i] * (re[i] + i im[i])
std::complex<double> weighted_sum(std::span<const double> w,
                                  std::span<const double> re,
                                  std::span<const double> im);

// sum_i w[i] * conj(a[i]) * b[i]
std::complex<double> weighted_inner(std::span<const double> w,
                                    std::span<const double> a_re,
                                    std::span<const double> a_im,
                                    std::span<const double> b_re,
                                    std::span<const double> b_im);

// Phase winding of the plaquettes between two adjacent grid rows. For the
// plaquette with lower-left corner i the corners are visited
// row0[i] -> row0[i+1] -> row1[i+1] -> row1[i]; each edge difference is
// wrapped to [-pi, pi]. turns[i] receives the sum divided by 2 pi and
// max_jump[i] the largest absolute wrapped edge difference.
// Both outputs have row0.size() - 1 entries.
void plaquette_winding(std::span<const double> row0,
                       std::span<const double> row1,
                       std::span<double> turns, std::span<double> max_jump);

// Explicit-backend entry points, used by the equivalence tests.
void chebyshev_step2(Backend backend, ChebyshevFamily family,
                     std::span<const double> coeffs, std::span<const double> x,
                     std::span<double> out);
std::complex<double> weighted_sum(Backend backend, std::span<const double> w,
                                  std::span<const double> re,
                                  std::span<const double> im);
std::complex<double> weighted_inner(Backend backend, std::span<const double> w,
                                    std::span<const double> a_re,
                                    std::span<const double> a_im,
                                    std::span<const double> b_re,
                                    std::span<const double> b_im);
void plaquette_winding(Backend backend, std::span<const double> row0,
                       std::span<const double> row1, std::span<double> turns,
                       std::span<double> max_jump);

}  // namespace elliptic_oam::kernels
