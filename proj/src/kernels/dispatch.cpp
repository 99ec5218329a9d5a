#include <atomic>
#include <cstdlib>
#include <string>

#include "elliptic_oam/error.hpp"
#include "table.hpp"

namespace elliptic_oam::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(ELLIPTIC_OAM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() noexcept {
  Backend chosen = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
  if (const char* env = std::getenv("ELLIPTIC_OAM_SIMD")) {
    const std::string value{env};
    if (value == "scalar") chosen = Backend::scalar;
    else if (value == "avx2" && cpu_has_avx2()) chosen = Backend::avx2;
  }
  return chosen;
}

std::atomic<Backend>& backend_slot() noexcept {
  static std::atomic<Backend> slot{initial_backend()};
  return slot;
}

const detail::KernelTable& table_for(Backend backend) noexcept {
#if defined(ELLIPTIC_OAM_HAVE_AVX2)
  if (backend == Backend::avx2) return detail::avx2_table();
#else
  (void)backend;
#endif
  return detail::scalar_table();
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::invalid_argument, std::string{what} + ": span size mismatch");
  }
}

}  // namespace

std::string_view to_string(Backend backend) noexcept {
  return backend == Backend::avx2 ? "avx2" : "scalar";
}

bool backend_available(Backend backend) noexcept {
  return backend == Backend::scalar || cpu_has_avx2();
}

Backend active_backend() noexcept { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  if (!backend_available(backend)) {
    throw Error(ErrorCode::invalid_argument,
                std::string{"kernel backend not available: "} + std::string{to_string(backend)});
  }
  backend_slot().store(backend, std::memory_order_relaxed);
}

void chebyshev_step2(Backend backend, ChebyshevFamily family,
                     std::span<const double> coeffs, std::span<const double> x,
                     std::span<double> out) {
  require_same_size(x.size(), out.size(), "chebyshev_step2");
  table_for(backend).chebyshev_step2(family, coeffs.data(), coeffs.size(), x.data(),
                                     out.data(), x.size());
}

std::complex<double> weighted_sum(Backend backend, std::span<const double> w,
                                  std::span<const double> re,
                                  std::span<const double> im) {
  require_same_size(w.size(), re.size(), "weighted_sum");
  require_same_size(w.size(), im.size(), "weighted_sum");
  return table_for(backend).weighted_sum(w.data(), re.data(), im.data(), w.size());
}

std::complex<double> weighted_inner(Backend backend, std::span<const double> w,
                                    std::span<const double> a_re,
                                    std::span<const double> a_im,
                                    std::span<const double> b_re,
                                    std::span<const double> b_im) {
  for (auto s : {a_re.size(), a_im.size(), b_re.size(), b_im.size()}) {
    require_same_size(w.size(), s, "weighted_inner");
  }
  return table_for(backend).weighted_inner(w.data(), a_re.data(), a_im.data(),
                                           b_re.data(), b_im.data(), w.size());
}

void plaquette_winding(Backend backend, std::span<const double> row0,
                       std::span<const double> row1, std::span<double> turns,
                       std::span<double> max_jump) {
  require_same_size(row0.size(), row1.size(), "plaquette_winding");
  if (row0.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "plaquette_winding: need at least two columns");
  }
  require_same_size(row0.size() - 1, turns.size(), "plaquette_winding");
  require_same_size(row0.size() - 1, max_jump.size(), "plaquette_winding");
  table_for(backend).plaquette_winding(row0.data(), row1.data(), turns.data(),
                                       max_jump.data(), turns.size());
}

void chebyshev_step2(ChebyshevFamily family, std::span<const double> coeffs,
                     std::span<const double> x, std::span<double> out) {
  chebyshev_step2(active_backend(), family, coeffs, x, out);
}

std::complex<double> weighted_sum(std::span<const double> w, std::span<const double> re,
                                  std::span<const double> im) {
  return weighted_sum(active_backend(), w, re, im);
}

std::complex<double> weighted_inner(std::span<const double> w,
                                    std::span<const double> a_re,
                                    std::span<const double> a_im,
                                    std::span<const double> b_re,
                                    std::span<const double> b_im) {
  return weighted_inner(active_backend(), w, a_re, a_im, b_re, b_im);
}

void plaquette_winding(std::span<const double> row0, std::span<const double> row1,
                       std::span<double> turns, std::span<double> max_jump) {
  plaquette_winding(active_backend(), row0, row1, turns, max_jump);
}

}  // namespace elliptic_oam::kernels

namespace elliptic_oam {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::invalid_mode: return "invalid_mode";
    case ErrorCode::non_symmetrizable: return "non_symmetrizable";
    case ErrorCode::numerical_failure: return "numerical_failure";
    case ErrorCode::unnormalized_state: return "unnormalized_state";
    case ErrorCode::grid_mismatch: return "grid_mismatch";
  }
  return "unknown";
}

}  // namespace elliptic_oam
