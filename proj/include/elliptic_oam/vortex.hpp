#pragma once
// Phase singularities of sampled complex fields.

#include <span>
#include <vector>

#include "elliptic_oam/beams.hpp"

namespace elliptic_oam {

struct Vortex {
  double x = 0.0;
  double y = 0.0;
  int charge = 0;  // never 0
};

struct VortexScan {
  std::vector<Vortex> vortices;     // sorted by x, then y
  double max_quantization_error = 0.0;  // max |turns - round(turns)| over counted loops
  std::size_t skipped_low_amplitude = 0;  // plaquettes
  std::size_t skipped_ambiguous = 0;      // plaquettes left unresolved
};

constexpr double kDefaultAmplitudeFloor = 1e-9;

// Winding of the phase around every grid plaquette. A plaquette is skipped
// when any corner amplitude is <= amplitude_floor * max|field|. Plaquettes
// with an edge jump of pi (within 1e-6) have no winding of their own; they
// are grouped into connected clusters and the cluster is charged with the
// winding along its boundary, provided no boundary edge is itself a pi jump.
// A nonzero cluster charge is reported as one vortex in the cluster's
// weakest plaquette. Fields that vanish along whole curves (e.g. LG modes
// with n >= 1) have no well-defined winding there and show spurious pairs.
// Throws Error(invalid_argument) for grids smaller than 8 x 8.
VortexScan scan_vortices(const ComplexField& field,
                         double amplitude_floor = kDefaultAmplitudeFloor);
std::vector<Vortex> find_vortices(const ComplexField& field,
                                  double amplitude_floor = kDefaultAmplitudeFloor);

struct VortexRegion {
  double x = 0.0;  // mean position of the members
  double y = 0.0;
  int total_charge = 0;
  int members = 0;
};

// Single-linkage clusters of vortices closer than `radius`; charges summed.
std::vector<VortexRegion> merge_charges(std::span<const Vortex> vortices, double radius);

struct CensusEntry {
  double epsilon = 0.0;
  double window_half_width = 0.0;
  double spacing = 0.0;
  double semifocal = 0.0;
  std::vector<Vortex> vortices;
};

// Half width of the census window: max(3 w0, 1.5 f0), i.e. a full window of
// at least 6 w0 or 3 f0.
double census_half_width(double ellipticity, const BeamGeometry& geometry);

// Samples HIG^sign_{p,m} on a cell-centered resolution^2 grid for each eps
// and scans it for vortices.
std::vector<CensusEntry> vortex_census(int p, int m, Helicity sign,
                                       std::span<const double> epsilons, int resolution,
                                       const BeamGeometry& geometry = {},
                                       double amplitude_floor = kDefaultAmplitudeFloor);

}  // namespace elliptic_oam
