#include "elliptic_oam/vortex.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>

#include "elliptic_oam/error.hpp"
#include "elliptic_oam/kernels.hpp"
#include "elliptic_oam/parallel.hpp"

namespace elliptic_oam {
namespace {

constexpr double kAmbiguousJump = std::numbers::pi - 1e-6;

enum class PlaquetteState : unsigned char { clean, low_amplitude, ambiguous };

// Zero of the bilinear interpolant on the unit square, by Newton from the
// center. Returns (u, v) clamped to [0, 1]^2.
std::pair<double, double> bilinear_zero(std::complex<double> f00, std::complex<double> f10,
                                        std::complex<double> f01, std::complex<double> f11) {
  double u = 0.5;
  double v = 0.5;
  for (int it = 0; it < 30; ++it) {
    const auto f = f00 * (1 - u) * (1 - v) + f10 * u * (1 - v) + f01 * (1 - u) * v + f11 * u * v;
    const auto fu = (f10 - f00) * (1 - v) + (f11 - f01) * v;
    const auto fv = (f01 - f00) * (1 - u) + (f11 - f10) * u;
    const double det = fu.real() * fv.imag() - fv.real() * fu.imag();
    if (det == 0.0) break;
    const double du = -(f.real() * fv.imag() - fv.real() * f.imag()) / det;
    const double dv = -(fu.real() * f.imag() - f.real() * fu.imag()) / det;
    u = std::clamp(u + du, 0.0, 1.0);
    v = std::clamp(v + dv, 0.0, 1.0);
    if (std::fabs(du) + std::fabs(dv) < 1e-13) break;
  }
  return {u, v};
}

}  // namespace

VortexScan scan_vortices(const ComplexField& field, double amplitude_floor) {
  if (field.nx < 8 || field.ny < 8 ||
      field.values.size() != static_cast<std::size_t>(field.nx) * static_cast<std::size_t>(field.ny)) {
    throw Error(ErrorCode::invalid_argument, "vortex scan needs a consistent grid of at least 8x8");
  }
  if (!(amplitude_floor >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "amplitude floor must be >= 0");
  }
  const auto nx = static_cast<std::size_t>(field.nx);
  const auto ny = static_cast<std::size_t>(field.ny);
  const std::size_t px = nx - 1;  // plaquettes per row
  const std::size_t py = ny - 1;
  std::vector<double> phase(nx * ny);
  std::vector<double> amp(nx * ny);
  for (std::size_t k = 0; k < phase.size(); ++k) {
    phase[k] = std::arg(field.values[k]);
    amp[k] = std::abs(field.values[k]);
  }
  const double floor = amplitude_floor * *std::max_element(amp.begin(), amp.end());

  auto locate = [&](std::size_t i, std::size_t j, int charge) {
    const std::size_t k00 = j * nx + i;
    const auto [u, v] = bilinear_zero(field.values[k00], field.values[k00 + 1],
                                      field.values[k00 + nx], field.values[k00 + nx + 1]);
    return Vortex{field.x(static_cast<int>(i)) + u * field.spacing,
                  field.y(static_cast<int>(j)) + v * field.spacing, charge};
  };

  // Pass 1, one row of plaquettes per task: classify every plaquette and
  // record the clean detections.
  std::vector<PlaquetteState> state(px * py);
  std::vector<double> turns_all(px * py);
  std::vector<VortexScan> rows(py);
  parallel_for(py, [&](std::size_t j) {
    std::span<double> turns{turns_all.data() + j * px, px};
    std::vector<double> jump(px);
    const std::span<const double> row0{phase.data() + j * nx, nx};
    const std::span<const double> row1{phase.data() + (j + 1) * nx, nx};
    kernels::plaquette_winding(row0, row1, turns, jump);
    VortexScan& out = rows[j];
    for (std::size_t i = 0; i < px; ++i) {
      const std::size_t k00 = j * nx + i;
      PlaquetteState& s = state[j * px + i];
      if (std::min({amp[k00], amp[k00 + 1], amp[k00 + nx], amp[k00 + nx + 1]}) <= floor) {
        s = PlaquetteState::low_amplitude;
        continue;
      }
      if (jump[i] >= kAmbiguousJump) {
        s = PlaquetteState::ambiguous;
        continue;
      }
      s = PlaquetteState::clean;
      const double rounded = std::nearbyint(turns[i]);
      if (rounded == 0.0) continue;
      out.max_quantization_error =
          std::max(out.max_quantization_error, std::fabs(turns[i] - rounded));
      out.vortices.push_back(locate(i, j, static_cast<int>(rounded)));
    }
  });

  VortexScan scan;
  for (auto& r : rows) {
    scan.vortices.insert(scan.vortices.end(), r.vortices.begin(), r.vortices.end());
    scan.max_quantization_error = std::max(scan.max_quantization_error, r.max_quantization_error);
  }

  // Pass 2: ambiguous plaquettes, grouped into edge-connected clusters. The
  // wrapped edge differences are odd in their argument, so interior edges
  // cancel and the summed turns equal the winding along the cluster
  // boundary. That winding is well defined when no boundary edge jumps by
  // pi, which resolves aliased higher charges and sums real nodal lines to 0.
  auto edge_jump = [&](std::size_t a, std::size_t b) {
    const double d = phase[b] - phase[a];
    return std::fabs(d - 2.0 * std::numbers::pi * std::nearbyint(d / (2.0 * std::numbers::pi)));
  };
  std::vector<char> seen(px * py, 0);
  std::vector<std::size_t> cluster;
  for (std::size_t start = 0; start < state.size(); ++start) {
    if (state[start] == PlaquetteState::low_amplitude) ++scan.skipped_low_amplitude;
    if (state[start] != PlaquetteState::ambiguous || seen[start]) continue;
    cluster.assign(1, start);
    seen[start] = 1;
    bool resolvable = true;
    for (std::size_t c = 0; c < cluster.size(); ++c) {
      const std::size_t i = cluster[c] % px;
      const std::size_t j = cluster[c] / px;
      const std::size_t k00 = j * nx + i;
      // neighbours: left, right, below, above, with the shared edge's nodes
      const struct {
        bool inside;
        std::size_t plaquette;
        std::size_t a;
        std::size_t b;
      } sides[4] = {
          {i > 0, cluster[c] - 1, k00, k00 + nx},
          {i + 1 < px, cluster[c] + 1, k00 + 1, k00 + nx + 1},
          {j > 0, cluster[c] - px, k00, k00 + 1},
          {j + 1 < py, cluster[c] + px, k00 + nx, k00 + nx + 1},
      };
      for (const auto& side : sides) {
        if (side.inside && state[side.plaquette] == PlaquetteState::ambiguous) {
          if (!seen[side.plaquette]) {
            seen[side.plaquette] = 1;
            cluster.push_back(side.plaquette);
          }
        } else if ((!side.inside || state[side.plaquette] == PlaquetteState::low_amplitude) &&
                   edge_jump(side.a, side.b) >= kAmbiguousJump) {
          resolvable = false;
        }
      }
    }
    double total = 0.0;
    for (std::size_t q : cluster) total += turns_all[q];
    const double rounded = std::nearbyint(total);
    if (!resolvable || std::fabs(total - rounded) > 0.25) {
      scan.skipped_ambiguous += cluster.size();
      continue;
    }
    if (rounded == 0.0) continue;
    // place the charge in the plaquette with the weakest corners
    std::size_t best = cluster.front();
    double best_sum = std::numeric_limits<double>::infinity();
    for (std::size_t q : cluster) {
      const std::size_t k00 = (q / px) * nx + q % px;
      const double sum = amp[k00] + amp[k00 + 1] + amp[k00 + nx] + amp[k00 + nx + 1];
      if (sum < best_sum) {
        best_sum = sum;
        best = q;
      }
    }
    scan.max_quantization_error = std::max(scan.max_quantization_error, std::fabs(total - rounded));
    scan.vortices.push_back(locate(best % px, best / px, static_cast<int>(rounded)));
  }

  std::sort(scan.vortices.begin(), scan.vortices.end(), [](const Vortex& a, const Vortex& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  return scan;
}

std::vector<Vortex> find_vortices(const ComplexField& field, double amplitude_floor) {
  return scan_vortices(field, amplitude_floor).vortices;
}

std::vector<VortexRegion> merge_charges(std::span<const Vortex> vortices, double radius) {
  const std::size_t n = vortices.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (std::hypot(vortices[a].x - vortices[b].x, vortices[a].y - vortices[b].y) <= radius) {
        parent[find(b)] = find(a);
      }
    }
  }
  std::vector<VortexRegion> regions;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t root = find(a);
    if (slot[root] == n) {
      slot[root] = regions.size();
      regions.push_back({});
    }
    auto& r = regions[slot[root]];
    r.x += vortices[a].x;
    r.y += vortices[a].y;
    r.total_charge += vortices[a].charge;
    ++r.members;
  }
  for (auto& r : regions) {
    r.x /= r.members;
    r.y /= r.members;
  }
  return regions;
}

double census_half_width(double ellipticity, const BeamGeometry& geometry) {
  const double f0 = geometry.waist * std::sqrt(0.5 * ellipticity);
  return std::max(3.0 * geometry.waist, 1.5 * f0);
}

std::vector<CensusEntry> vortex_census(int p, int m, Helicity sign,
                                       std::span<const double> epsilons, int resolution,
                                       const BeamGeometry& geometry, double amplitude_floor) {
  if (m < 1) throw Error(ErrorCode::invalid_mode, "vortex census needs m >= 1");
  std::vector<CensusEntry> out;
  out.reserve(epsilons.size());
  for (double eps : epsilons) {
    const HigBeam beam(p, m, sign, eps, geometry);
    const double half = census_half_width(eps, geometry);
    const ComplexField field = sample_grid(
        BatchField{[&](std::span<const double> xs, std::span<const double> ys,
                       std::span<std::complex<double>> vals) { beam.evaluate(xs, ys, vals); }},
        half, resolution, GridAlignment::cell_centered);
    out.push_back({eps, half, field.spacing, beam.semifocal(),
                   find_vortices(field, amplitude_floor)});
  }
  return out;
}

}  // namespace elliptic_oam
