#pragma once

#include <vector>

#include "altxy/two_site_state.hpp"

namespace altxy {

// Even-odd bond Hamiltonian whose sum over all bonds is the chain: couplings J(1 +- gamma)/4,
// fields h_+/4 on the even and h_-/4 on the odd site. Basis |e> (x) |o>.
ComplexMatrix pair_hamiltonian(const SystemParams& params);
double pair_ground_energy(const SystemParams& params);
// -max(sqrt(J^2 + h2^2), sqrt(h1^2 + gamma^2 J^2)) / 2
double pair_ground_energy_closed_form(const SystemParams& params);

// Energy per site of the real Neel product ansatz with polar angles theta_e, theta_o in [0, 2 pi).
double separable_energy_at(const SystemParams& params, double theta_e, double theta_o);

struct SeparableAnsatz {
  double theta_e = 0.0, theta_o = 0.0;
  double epsilon = 0.0;          // minimum, the lower of the two routes
  double epsilon_closed = 0.0;   // stationary-angle route
  double epsilon_numeric = 0.0;  // profiled 1D grid + Brent route
  double epsilon0 = 0.0;         // pair ground energy (negative)
};

// Throws NumericalError if the two routes differ by more than 1e-6.
SeparableAnsatz separable_energy(const SystemParams& params);

// lambda1^2 - lambda2^2 - (1 - gamma^2)
double factorization_residual(const SystemParams& params);
bool on_factorization_line(const SystemParams& params, double tol = 1e-9);
// lambda1 >= 0 branch of the line at the given lambda2 values (requires lambda2^2 + 1 - gamma^2 >= 0)
std::vector<SystemParams> factorization_locus(double gamma, const std::vector<double>& lambda2, double J = 1.0);

struct NeelProductState {
  double theta_e = 0.0, theta_o = 0.0;
  double energy_per_site = 0.0;
  TwoSiteState pair;
};

// Throws std::invalid_argument off the line (tolerance 1e-9).
NeelProductState neel_product_state(const SystemParams& params);

}  // namespace altxy
