#pragma once

#include <optional>
#include <vector>

#include "altxy/momentum_observables.hpp"

namespace altxy {

// Periodic chain of N sites (N divisible by 4) in momentum space. The Jordan-Wigner fermions
// live in two parity sectors: even parity with antiperiodic momenta, odd parity with periodic
// momenta. Momenta k and -k (mod pi for the a modes) form an orbit: a 16-dimensional pair
// subspace, or a 4-dimensional singleton at k = 0 and k = pi/2.
struct Orbit {
  double phi = 0.0;
  bool singleton = false;
};

std::vector<Orbit> sector_orbits(int N, int sector);

// Exact two-site observables of the finite chain, thermal or ground state, optionally after a
// quench. c_zz is evaluated directly, not by closure.
ObservableSet exact_chain_observables(const SystemParams& params, Temperature temp, int N,
                                      const std::optional<Evolution>& evo = std::nullopt, bool parallel = true);

// Lowest energy of the finite chain (all sites, units of J).
double exact_chain_ground_energy(const SystemParams& params, int N);

}  // namespace altxy
