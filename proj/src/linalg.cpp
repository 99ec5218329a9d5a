#include "elliptic_oam/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <numbers>
#include <string>

#include "elliptic_oam/error.hpp"
#include "elliptic_oam/kernels.hpp"

namespace elliptic_oam::linalg {

TridiagonalMatrix::TridiagonalMatrix(std::vector<double> sub, std::vector<double> diag,
                                     std::vector<double> sup)
    : sub_(std::move(sub)), diag_(std::move(diag)), sup_(std::move(sup)) {
  if (diag_.empty()) {
    throw Error(ErrorCode::invalid_argument, "tridiagonal matrix: dimension must be >= 1");
  }
  if (sub_.size() + 1 != diag_.size() || sup_.size() + 1 != diag_.size()) {
    throw Error(ErrorCode::invalid_argument,
                "tridiagonal matrix: off-diagonals must have length dim-1");
  }
}

double TridiagonalMatrix::at(std::size_t row, std::size_t col) const {
  if (row >= dimension() || col >= dimension()) {
    throw Error(ErrorCode::invalid_argument, "tridiagonal matrix: index out of range");
  }
  if (row == col) return diag_[row];
  if (row + 1 == col) return sup_[row];
  if (col + 1 == row) return sub_[col];
  return 0.0;
}

std::vector<double> TridiagonalMatrix::apply(std::span<const double> v) const {
  const std::size_t n = dimension();
  if (v.size() != n) {
    throw Error(ErrorCode::invalid_argument, "tridiagonal matrix: vector length mismatch");
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = diag_[i] * v[i];
    if (i > 0) acc += sub_[i - 1] * v[i - 1];
    if (i + 1 < n) acc += sup_[i] * v[i + 1];
    out[i] = acc;
  }
  return out;
}

namespace {

// Implicit-shift QL on a symmetric tridiagonal. d: diagonal, e: off-diagonal
// with e[i] = T(i, i+1) and e[n-1] = 0. z (n x n, row-major) accumulates the
// rotations; on return column j of z is the eigenvector of d[j].
void symmetric_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  auto zat = [&](int r, int c) -> double& { return z[static_cast<std::size_t>(r * n + c)]; };
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 80) {
          throw Error(ErrorCode::numerical_failure, "tridiagonal QL did not converge");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (int k = 0; k < n; ++k) {
            const double t = zat(k, i + 1);
            zat(k, i + 1) = s * zat(k, i) + c * t;
            zat(k, i) = c * zat(k, i) - s * t;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

// Dense inverse iteration on the original (non-symmetric) matrix; used only
// when a one-sided zero coupling rules out the diagonal similarity.
std::vector<double> inverse_iteration(const TridiagonalMatrix& matrix, double eigenvalue) {
  const std::size_t n = matrix.dimension();
  const double scale = 1.0 + std::fabs(eigenvalue);
  const double shift = eigenvalue + 1e-10 * scale;
  std::vector<double> a(n * n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r * n + c] = matrix.at(r, c);
    a[r * n + r] -= shift;
  }
  // LU with partial pivoting.
  std::vector<std::size_t> piv(n);
  std::iota(piv.begin(), piv.end(), std::size_t{0});
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::fabs(a[r * n + k]) > std::fabs(a[best * n + k])) best = r;
    }
    if (best != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[best * n + c]);
      std::swap(piv[k], piv[best]);
    }
    if (a[k * n + k] == 0.0) a[k * n + k] = std::numeric_limits<double>::epsilon() * scale;
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a[r * n + k] / a[k * n + k];
      a[r * n + k] = f;
      for (std::size_t c = k + 1; c < n; ++c) a[r * n + c] -= f * a[k * n + c];
    }
  }
  std::vector<double> v(n, 1.0);
  for (int it = 0; it < 4; ++it) {
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = v[piv[i]];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < i; ++c) b[i] -= a[i * n + c] * b[c];
    }
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t c = i + 1; c < n; ++c) b[i] -= a[i * n + c] * b[c];
      b[i] /= a[i * n + i];
    }
    const double norm = std::sqrt(std::inner_product(b.begin(), b.end(), b.begin(), 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i] = b[i] / norm;
  }
  return v;
}

void normalize_with_sign(std::vector<double>& v) {
  const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::numerical_failure, "eigenvector has zero or non-finite norm");
  }
  double sign = 1.0;
  for (double x : v) {
    if (x != 0.0) {
      sign = x > 0.0 ? 1.0 : -1.0;
      break;
    }
  }
  for (double& x : v) x *= sign / norm;
}

}  // namespace

EigenSolution eigen_tridiagonal(const TridiagonalMatrix& matrix) {
  const std::size_t n = matrix.dimension();
  const auto& sub = matrix.sub();
  const auto& sup = matrix.sup();

  std::vector<double> d = matrix.diag();
  std::vector<double> e(n, 0.0);
  std::vector<double> scale(n, 1.0);  // diagonal similarity D
  bool one_sided = false;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double prod = sub[i] * sup[i];
    if (prod < 0.0) {
      throw Error(ErrorCode::non_symmetrizable,
                  "tridiagonal not symmetrizable: sub*sup < 0 at index " + std::to_string(i));
    }
    if (prod > 0.0) {
      e[i] = std::copysign(std::sqrt(prod), sup[i]);
      scale[i + 1] = scale[i] * std::sqrt(sup[i] / sub[i]);
    } else {
      e[i] = 0.0;
      scale[i + 1] = scale[i];
      if (sub[i] != 0.0 || sup[i] != 0.0) one_sided = true;
    }
  }

  std::vector<double> z(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;
  symmetric_ql(d, e, z);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  EigenSolution out;
  out.eigenvalues.reserve(n);
  out.eigenvectors.reserve(n);
  for (std::size_t j : order) {
    out.eigenvalues.push_back(d[j]);
    std::vector<double> v(n);
    if (one_sided) {
      v = inverse_iteration(matrix, d[j]);
    } else {
      for (std::size_t i = 0; i < n; ++i) v[i] = z[i * n + j] / scale[i];
    }
    normalize_with_sign(v);
    out.eigenvectors.push_back(std::move(v));
  }
  return out;
}

namespace {

GaussLegendreRule make_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) <= 1e-16) break;
    }
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "gauss_legendre: n must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const GaussLegendreRule>> cache;
  const std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const GaussLegendreRule>(make_rule(n));
  return *slot;
}

PlaneQuadrature::PlaneQuadrature(double half_width, int nodes_per_axis)
    : half_width_(half_width), n_(nodes_per_axis) {
  if (!(half_width > 0.0) || nodes_per_axis < 2) {
    throw Error(ErrorCode::invalid_argument,
                "integrate_plane: need half_width > 0 and nodes_per_axis >= 2");
  }
  const auto& rule = gauss_legendre(nodes_per_axis);
  const auto n = static_cast<std::size_t>(nodes_per_axis);
  nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) nodes_[i] = half_width * rule.nodes[i];
  weights_.resize(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      weights_[j * n + i] = half_width * half_width * rule.weights[i] * rule.weights[j];
    }
  }
}

std::complex<double> PlaneQuadrature::integrate(std::span<const double> re,
                                                std::span<const double> im) const {
  return kernels::weighted_sum(weights_, re, im);
}

std::complex<double> PlaneQuadrature::inner(std::span<const double> a_re,
                                            std::span<const double> a_im,
                                            std::span<const double> b_re,
                                            std::span<const double> b_im) const {
  return kernels::weighted_inner(weights_, a_re, a_im, b_re, b_im);
}

}  // namespace elliptic_oam::linalg
