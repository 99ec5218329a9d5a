#pragma once
// Self-verification suite and the independent oracles it uses. Each oracle
// takes a path that does not go through the code it checks: decomposition
// weights against overlap integrals of sampled fields, OAM against a
// field-level angular derivative, and so on.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "elliptic_oam/beams.hpp"
#include "elliptic_oam/oam.hpp"

namespace elliptic_oam {

using Decomposer = std::function<Decomposition(const ModeIndex&, double)>;

namespace oracles {

// Quadrature settings for field-level oracles (window half width in units of w0).
inline constexpr double kOverlapHalfWidth = 8.0;
inline constexpr int kOverlapNodes = 96;

// max_nl |D_nl - <LG_nl, IG>| with the overlap taken by plane quadrature.
double decomposition_overlap_error(const ModeIndex& mode, double ellipticity,
                                   const Decomposer& decomposer,
                                   int nodes = kOverlapNodes);

// Largest entrywise deviation of the IG Gram matrix from the identity for
// all modes of order <= max_order (both parities) at one ellipticity.
double ig_gram_deviation(int max_order, double ellipticity, int nodes = kOverlapNodes);

// Same for the even/odd LG family with 2n + l <= max_order.
double lg_gram_deviation(int max_order, int nodes = kOverlapNodes);

// <L_z> = Re integral conj(psi) (-i d/dphi) psi, with d/dphi taken by a
// fourth-order central difference over rotated sample points.
double field_oam(const BatchField& field, double half_width, int nodes);

// Two-term IG^e_{22} expansion with the inner radical sqrt(1 + eps^2):
// returns {D_{0,2}, D_{1,0}}.
std::pair<double, double> ig22_closed_form(double ellipticity);
// The sign variant with sqrt(1 - eps^2), which the overlap oracle rejects;
// NaN for eps > 1.
std::pair<double, double> ig22_closed_form_minus_radical(double ellipticity);

// Deterministic normalized states over LG indices with 2n + l <= max_order
// (no RNG: amplitudes come from an irrational-rotation sequence).
QuantumModeState quasi_random_state(int seed_index, int max_order);

}  // namespace oracles

enum class VerifyLevel { fast, full };

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  std::string relation;  // how measured compares with threshold, e.g. "<="
  bool passed = false;
  bool gating = true;    // informational checks are reported but never fail the run
  std::string note;
};

struct VerifyReport {
  VerifyLevel level = VerifyLevel::fast;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;

  bool passed() const noexcept;
  std::size_t gating_count() const noexcept;
  std::string to_text() const;
};

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::fast;
  Decomposer decomposer = [](const ModeIndex& mode, double eps) { return decompose(mode, eps); };
};

VerifyReport run_verification(const VerifyOptions& options = {});

}  // namespace elliptic_oam
