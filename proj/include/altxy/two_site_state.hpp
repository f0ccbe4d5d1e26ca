#pragma once

#include "altxy/momentum_observables.hpp"

namespace altxy {

enum class StateSource { CES, TES, ED };

// Even-odd nearest-neighbour pair, basis |e> (x) |o> ordered 00, 01, 10, 11 with 0 = spin up.
struct TwoSiteState {
  ComplexMatrix rho;
  StateSource source = StateSource::CES;

  // Clips eigenvalues in [-1e-8, 0) and renormalizes; throws NumericalError below -1e-8 or on
  // trace/Hermiticity failure.
  static TwoSiteState validated(ComplexMatrix rho, StateSource source);
};

// Pauli matrices
const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();

TwoSiteState assemble_rho(const ObservableSet& obs, StateSource source = StateSource::CES);
// Tr[rho sigma^a (x) sigma^b] for every entry of the set.
ObservableSet read_back(const TwoSiteState& s);
// (X (x) X) rho (X (x) X)
TwoSiteState fermionic_image(const TwoSiteState& s);
// the four entries coupling {00, 11} with {01, 10}
bool is_x_state(const ComplexMatrix& rho, double tol = 1e-12);

}  // namespace altxy
