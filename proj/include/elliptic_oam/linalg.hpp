#pragma once
// Small dense linear algebra and quadrature primitives. No physics here.

#include <complex>
#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

namespace elliptic_oam::linalg {

// Real tridiagonal matrix, not necessarily symmetric.
// sub[i] = M(i+1, i), sup[i] = M(i, i+1).
class TridiagonalMatrix {
 public:
  TridiagonalMatrix(std::vector<double> sub, std::vector<double> diag,
                    std::vector<double> sup);

  std::size_t dimension() const noexcept { return diag_.size(); }
  const std::vector<double>& sub() const noexcept { return sub_; }
  const std::vector<double>& diag() const noexcept { return diag_; }
  const std::vector<double>& sup() const noexcept { return sup_; }

  double at(std::size_t row, std::size_t col) const;
  std::vector<double> apply(std::span<const double> v) const;

 private:
  std::vector<double> sub_;
  std::vector<double> diag_;
  std::vector<double> sup_;
};

struct EigenSolution {
  std::vector<double> eigenvalues;                // ascending
  std::vector<std::vector<double>> eigenvectors;  // unit norm, paired by index
};

// Full real spectrum of a symmetrizable tridiagonal (sub[i]*sup[i] >= 0).
// Eigenvectors are unit norm with their first nonzero entry positive.
// Throws Error(non_symmetrizable) or Error(numerical_failure).
EigenSolution eigen_tridiagonal(const TridiagonalMatrix& matrix);

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// Cached; the returned reference stays valid for the life of the process.
const GaussLegendreRule& gauss_legendre(int n);

// Tensor-product Gauss-Legendre rule on [-h, h]^2. Point k = j * n + i has
// coordinates (node(i), node(j)), i.e. row-major with y as the slow index.
class PlaneQuadrature {
 public:
  PlaneQuadrature(double half_width, int nodes_per_axis);

  int nodes_per_axis() const noexcept { return n_; }
  double half_width() const noexcept { return half_width_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  double x(std::size_t k) const { return nodes_[k % static_cast<std::size_t>(n_)]; }
  double y(std::size_t k) const { return nodes_[k / static_cast<std::size_t>(n_)]; }
  std::span<const double> weights() const noexcept { return weights_; }

  std::complex<double> integrate(std::span<const double> re,
                                 std::span<const double> im) const;
  // sum w conj(a) b
  std::complex<double> inner(std::span<const double> a_re, std::span<const double> a_im,
                             std::span<const double> b_re,
                             std::span<const double> b_im) const;

 private:
  double half_width_;
  int n_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

// Tensor Gauss-Legendre approximation of the integral of f over
// [-half_width, half_width]^2. f returns double or std::complex<double>.
template <typename F>
std::complex<double> integrate_plane(F&& f, double half_width, int nodes_per_axis) {
  const PlaneQuadrature quad(half_width, nodes_per_axis);
  std::vector<double> re(quad.size());
  std::vector<double> im(quad.size(), 0.0);
  for (std::size_t k = 0; k < quad.size(); ++k) {
    const auto v = f(quad.x(k), quad.y(k));
    if constexpr (std::is_convertible_v<decltype(v), double>) {
      re[k] = static_cast<double>(v);
    } else {
      re[k] = v.real();
      im[k] = v.imag();
    }
  }
  return quad.integrate(re, im);
}

}  // namespace elliptic_oam::linalg
