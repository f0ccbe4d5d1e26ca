#pragma once

#include "altxy/two_site_state.hpp"

namespace altxy {

struct ProjectiveMeasurement {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, pi)
};

struct MeasureResult {
  double ln = 0.0;          // ebits
  double negativity = 0.0;
  double discord = 0.0;     // bits
  double mutual_info = 0.0;
  double classical_corr = 0.0;
  ProjectiveMeasurement best;
  double conditional_entropy = 0.0;
  bool converged = true;
};

double negativity(const TwoSiteState& s);
double log_negativity(const TwoSiteState& s);
double log_negativity_from_negativity(double n);
double mutual_information(const TwoSiteState& s);

// Post-measurement conditional entropy S(B|{P_k on A}) in bits, A = measured party.
double conditional_entropy(const TwoSiteState& s, ProjectiveMeasurement m, Party measured = Party::Even);

struct DiscordOptions {
  Party measured = Party::Even;
  int grid = 48;
  double objective_tolerance = 1e-10;
  double multistart_window = 1e-3;
  int max_starts = 16;
  bool parallel = false;
};

// Discord with the measurement optimized by a coarse grid and simplex refinement.
MeasureResult quantum_discord(const TwoSiteState& s, const DiscordOptions& opt = {});
// All measures at once (discord included).
MeasureResult measures(const TwoSiteState& s, const DiscordOptions& opt = {});

// Exhaustive angle grid, n x n points; slow reference.
double brute_force_conditional_entropy(const TwoSiteState& s, int n, Party measured = Party::Even);

}  // namespace altxy
