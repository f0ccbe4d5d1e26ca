#pragma once

#include <array>
#include <vector>

#include "altxy/block_matrix.hpp"
#include "altxy/quadrature.hpp"

namespace altxy {

struct SystemParams {
  double J = 1.0;
  double gamma = 0.8;
  double lambda1 = 0.0;
  double lambda2 = 0.0;

  double h1() const { return lambda1 * J; }
  double h2() const { return lambda2 * J; }
  // throws std::invalid_argument when J <= 0 or gamma == 0
  void validate() const;
};

// Fields acting at the time the block is built (pre- or post-quench).
struct FieldValues {
  double h1 = 0.0;
  double h2 = 0.0;
};

inline FieldValues fields_of(const SystemParams& p) { return {p.h1(), p.h2()}; }

// Pair subspace at momentum phi, 16 states in blocks of 2, 4, 4 and 6.
inline const std::vector<std::size_t> kPairBlockSizes{2, 4, 4, 6};

struct BlockHamiltonian {
  double phi = 0.0;
  FieldValues fields;
  BlockMatrix h;  // blocks 1..4 as h.blocks[0..3]

  const ComplexMatrix& block(int k) const { return h.blocks.at(k - 1); }
};

BlockHamiltonian build_blocks(const SystemParams& params, FieldValues fields, double phi);
inline BlockHamiltonian build_blocks(const SystemParams& params, double phi) {
  return build_blocks(params, fields_of(params), phi);
}

struct ClosedFormEnergies {
  double x = 0.0, y = 0.0;
  double omega2_plus = 0.0, omega2_minus = 0.0;
  double omega4_plus = 0.0, omega4_minus = 0.0;
};

// In units of J.
ClosedFormEnergies closed_form_energies(const SystemParams& params, double phi);

// 16 eigenvalues ascending.
std::array<double, 16> spectrum(const SystemParams& params, FieldValues fields, double phi);
inline std::array<double, 16> spectrum(const SystemParams& params, double phi) {
  return spectrum(params, fields_of(params), phi);
}

struct GroundEnergyResult {
  double value = 0.0;  // per site, units of J
  double error = 0.0;
  int nodes = 0;
  bool converged = false;
};

// Throws NumericalError on non-convergence; the message carries estimate and bound.
GroundEnergyResult ground_energy_per_site(const SystemParams& params);
double ground_energy_per_site_value(const SystemParams& params);

struct GapProfile {
  double min_gap = 0.0;
  double phi_star = 0.0;
};

// Gap between the two lowest levels of the full pair spectrum.
double pair_gap(const SystemParams& params, double phi);
GapProfile gap_profile(const SystemParams& params, int grid = 2048);

// Breakpoints for quadrature when the pair gap nearly closes inside (0, pi/2).
std::vector<double> kink_breakpoints(const SystemParams& params);

// Duality exploration hook: returns params with (h1, h2, J, gamma) -> (h2, h1, -gamma, -J)
// mapped back to valid ranges where possible. Nothing is asserted about it.
SystemParams duality_image(const SystemParams& params);

}  // namespace altxy
