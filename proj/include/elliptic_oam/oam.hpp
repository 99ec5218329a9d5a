#pragma once
// Quantum orbital angular momentum of Ince-Gauss photons.
//
// An IG mode of order p expands over the LG modes with 2n + l = p and the
// same parity. A helical IG photon is (|IG^e> +- i |IG^o>)/sqrt2, so its
// state lives on the even/odd LG Fock basis. L_z maps |L^e_nl> to
// i l |L^o_nl> and |L^o_nl> to -i l |L^e_nl> (hbar = 1).

#include <complex>
#include <compare>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "elliptic_oam/beams.hpp"
#include "elliptic_oam/ince.hpp"

namespace elliptic_oam {

struct LGIndex {
  Parity parity = Parity::even;
  int n = 0;  // radial number
  int l = 0;  // topological charge, >= 0

  friend auto operator<=>(const LGIndex&, const LGIndex&) = default;
};

// Throws Error(invalid_mode) for negative indices or odd parity with l = 0.
LGIndex make_lg_index(Parity parity, int n, int l);

struct DecompositionTerm {
  LGIndex index;
  double weight = 0.0;
};

struct Decomposition {
  ModeIndex mode;
  double ellipticity = 0.0;
  std::vector<DecompositionTerm> terms;  // ascending l

  double weight(int n, int l) const noexcept;  // 0 when absent
  double sum_sq() const noexcept;
};

// LG weights of IG^parity_{p,m}: sign (-1)^{n+l+(p+m)/2} times
// sqrt((1 + delta_{l0}) (n+l)! n!) times the Ince coefficient of harmonic l,
// rescaled to unit Euclidean norm.
Decomposition decompose(const ModeIndex& mode, double ellipticity);

struct QuantumModeState {
  std::map<LGIndex, std::complex<double>> amplitudes;

  double norm_sq() const noexcept;
  std::complex<double> amplitude(const LGIndex& index) const noexcept;
};

QuantumModeState helical_state(int p, int m, Helicity sign, double ellipticity);

// <L_z> = sum_{n,l} 2 l Im(conj(c^e_nl) c^o_nl), in units of hbar.
// Throws Error(unnormalized_state) if |norm^2 - 1| > 1e-10.
double oam_expectation(const QuantumModeState& state);

enum class Polarization { plus, minus };
std::string_view to_string(Polarization polarization) noexcept;
Polarization parse_polarization(std::string_view text);

// Spin angular momentum of a circular polarization mode: +1 or -1.
double sam_expectation(Polarization polarization) noexcept;

// Probability of each signed integer OAM value l when the photon is sorted
// in the helical LG basis, summed over n.
std::map<int, double> oam_distribution(const QuantumModeState& state);

struct OamSample {
  double epsilon = 0.0;
  double oam = 0.0;
};

struct OamCurve {
  int p = 0;
  int m = 0;
  Helicity sign = Helicity::plus;
  std::vector<OamSample> samples;
};

// epsilons strictly increasing and > 0. Evaluated in parallel, assembled in order.
OamCurve oam_curve(int p, int m, Helicity sign, std::span<const double> epsilons);

std::vector<double> linear_grid(double lo, double hi, int count);
std::vector<double> log_grid(double lo, double hi, int count);

struct TurningPoint {
  double epsilon = 0.0;
  double oam = 0.0;
  bool is_minimum = true;
};

// Strict interior local extrema, refined by the vertex of the parabola
// through the neighbouring triplet.
std::vector<TurningPoint> find_turning_points(const OamCurve& curve);

// Sign changes of a - b, refined by linear interpolation. Endpoint
// equalities are not crossings. Throws Error(grid_mismatch) unless both
// curves share the same epsilon grid.
std::vector<double> find_crossings(const OamCurve& a, const OamCurve& b);

}  // namespace elliptic_oam
